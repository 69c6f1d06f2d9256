#include <doctest.h>

#include <cmath>
#include <random>

#include "bdg_oracle.hpp"
#include "xxzq/errors.hpp"
#include "xxzq/quench.hpp"

using namespace xxzq;

namespace {

MeanFieldSolution solve(double delta, double h, int n) { return solve_self_consistent({1.0, delta, h, n}); }

}  // namespace

TEST_CASE("identity quench has zero angle differences") {
  const auto s = solve(0.4, 0.3, 64);
  const QuenchSetup q = prepare_quench(s, s);
  REQUIRE(q.phi.size() == 32);
  for (double phi : q.phi) CHECK(phi == 0.0);
}

TEST_CASE("swapping the end points negates the angles") {
  const auto a = solve(0.2, 0.1, 64);
  const auto b = solve(1.7, 0.6, 64);
  const QuenchSetup ab = prepare_quench(a, b);
  const QuenchSetup ba = prepare_quench(b, a);
  for (std::size_t k = 0; k < ab.phi.size(); ++k) CHECK(ab.phi[k] == doctest::Approx(-ba.phi[k]).epsilon(1e-14));
}

TEST_CASE("mismatched grids are rejected") {
  CHECK_THROWS_AS(prepare_quench(solve(0.5, 0.0, 64), solve(0.5, 0.0, 128)), InvalidArgument);
}

TEST_CASE("near-critical quench has small angles") {
  const QuenchSetup q = prepare_quench(solve(0.98, 0.0, 800), solve(1.0, 0.0, 800));
  double largest = 0.0;
  for (double phi : q.phi) largest = std::max(largest, std::abs(phi));
  MESSAGE("max |phi| = " << largest);
  CHECK(largest > 0.0);
  // Largest next to the Fermi point q = pi/2, where the final angle switches fastest.
  CHECK(largest < 0.3);
}

TEST_CASE("null quench correlators are time independent") {
  const auto s = solve(0.6, 0.4, 128);
  const QuenchSetup q = prepare_quench(s, s);
  for (int m = 0; m <= 3; ++m) {
    const double t0 = hopping_correlator(q, m, 0.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) worst = std::max(worst, std::abs(hopping_correlator(q, m, 0.05 * k) - t0));
    CHECK(worst < 1e-12);
  }
  for (int m = 1; m <= 3; ++m) {
    const auto p0 = pairing_correlator(q, m, 0.0);
    CHECK(p0.imag() == 0.0);
    double expected = 0.0;
    for (const QuenchMode& md : q.modes) expected += std::sin(md.q * m) * md.sin2theta_f;
    expected /= 128;
    CHECK(p0.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(pairing_correlator(q, m, 7.3) - p0) < 1e-12);
  }
}

TEST_CASE("quench correlators start from the initial ground state") {
  const auto pre = solve(0.0, 0.8, 96);
  const auto post = solve(2.0, 0.1, 96);
  const QuenchSetup q = prepare_quench(pre, post);
  const CorrelatorBlock g = ground_state_block(pre, 3);
  for (int m = 0; m <= 3; ++m) CHECK(std::abs(hopping_correlator(q, m, 0.0) - g.hop[m]) < 1e-12);
  for (int m = 1; m <= 3; ++m) {
    const auto p = pairing_correlator(q, m, 0.0);
    CHECK(p.imag() == 0.0);
    CHECK(std::abs(p - g.pair[m - 1]) < 1e-12);
  }
}

TEST_CASE("ground-state block reproduces the mean-field averages") {
  const auto s = solve(0.3, 0.2, 96);
  const CorrelatorBlock g = ground_state_block(s, 1);
  CHECK(g.hop[0] == doctest::Approx(s.mf.u1).epsilon(1e-11));
  CHECK(g.hop[1] == doctest::Approx(s.mf.u2).epsilon(1e-11));
  CHECK(g.pair[0].real() == doctest::Approx(s.mf.u3).epsilon(1e-10));
}

TEST_CASE("correlators match real-space BdG evolution") {
  const int n = 64;
  for (auto [di, hi, df, hf] : {std::array{0.0, 0.0, 2.0, 0.0}, std::array{0.5, 1.2, 1.5, 0.3}}) {
    const auto pre = solve(di, hi, n);
    const auto post = solve(df, hf, n);
    const QuenchSetup q = prepare_quench(pre, post);
    const Eigen::MatrixXcd c0 = testing::ground_covariance(testing::nambu_matrix(pre.params, pre.mf));
    const Eigen::MatrixXd mf = testing::nambu_matrix(post.params, post.mf);
    for (double t : {0.0, 0.5, 1.0, 5.0}) {
      const Eigen::MatrixXcd c = testing::evolve_covariance(c0, mf, t);
      for (int m = 0; m <= 3; ++m) {
        CAPTURE(t);
        CAPTURE(m);
        CHECK(std::abs(hopping_correlator(q, m, t) - testing::bdg_hop(c, n, m)) < 1e-8);
        if (m > 0) CHECK(std::abs(pairing_correlator(q, m, t) - testing::bdg_pair(c, n, m)) < 1e-8);
      }
    }
  }
}

TEST_CASE("block evaluation equals single-distance calls bitwise") {
  const QuenchSetup q = prepare_quench(solve(0.1, 0.5, 128), solve(1.3, 0.0, 128));
  for (double t : {0.0, 2.7, 19.1}) {
    const CorrelatorBlock b = correlator_block(q, 3, t);
    REQUIRE(b.hop.size() == 4);
    REQUIRE(b.pair.size() == 3);
    for (int m = 0; m <= 3; ++m) CHECK(b.hop[m] == hopping_correlator(q, m, t));
    for (int m = 1; m <= 3; ++m) {
      CHECK(b.pair[m - 1].real() == pairing_correlator(q, m, t).real());
      CHECK(b.pair[m - 1].imag() == pairing_correlator(q, m, t).imag());
    }
    const CorrelatorBlock one = correlator_block(q, 1, t);
    CHECK(one.hop[1] == hopping_correlator(q, 1, t));
    CHECK(one.pair[0] == pairing_correlator(q, 1, t));
  }
}

TEST_CASE("null quench block is time independent") {
  const auto s = solve(0.9, 0.2, 64);
  const QuenchSetup q = prepare_quench(s, s);
  const CorrelatorBlock a = correlator_block(q, 3, 0.0);
  const CorrelatorBlock b = correlator_block(q, 3, 7.0);
  for (int m = 0; m <= 3; ++m) CHECK(std::abs(a.hop[m] - b.hop[m]) < 1e-12);
  for (int m = 0; m < 3; ++m) CHECK(std::abs(a.pair[m] - b.pair[m]) < 1e-12);
}

TEST_CASE("occupation stays in the unit interval") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-0.9, 3.0);
  std::uniform_real_distribution<double> h(0.0, 2.5);
  for (int trial = 0; trial < 5; ++trial) {
    try {
      const QuenchSetup q = prepare_quench(solve(d(rng), h(rng), 128), solve(d(rng), h(rng), 128));
      for (int k = 0; k < 200; ++k) {
        const double t0 = hopping_correlator(q, 0, 0.37 * k);
        CHECK(t0 >= 0.0);
        CHECK(t0 <= 1.0);
      }
    } catch (const ConvergenceError&) {
    }
  }
}

TEST_CASE("argument checks") {
  const auto s = solve(0.5, 0.0, 16);
  const QuenchSetup q = prepare_quench(s, s);
  CHECK_THROWS_AS(hopping_correlator(q, -1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(pairing_correlator(q, 0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(hopping_correlator(q, 0, -1.0), InvalidArgument);
}

TEST_CASE("group velocity with the pairing term switched off") {
  // u3 = (1 - Delta)/4 removes B, so eps = |A| and the slope peaks at q = pi/2.
  const double delta = 0.6;
  MeanFieldSolution s;
  s.params = {1.0, delta, 0.0, 400};
  s.mf = {0.5, 0.1, (1.0 - delta) / 4.0};
  s.modes = mode_table(s.params, s.mf);
  const GroupVelocity v = group_velocity_max(s);
  const double amplitude = std::abs((delta + 1.0) / 2.0 - 2.0 * s.mf.u2);
  CHECK(v.v_g == doctest::Approx(amplitude * std::sin(v.q_star)).epsilon(1e-12));
  CHECK(std::abs(v.q_star - 3.141592653589793 / 2) < 3.141592653589793 / 400 + 1e-12);
  CHECK(v.v_g == doctest::Approx(amplitude).epsilon(1e-4));
}

TEST_CASE("analytic slope matches central differences") {
  const auto s = solve(0.7, 0.4, 200);
  const double dq = 1e-6;
  for (const ModeData& d : s.positive_modes()) {
    const ModeSlopes sl = mode_slopes(s.params, s.mf, d.q);
    const double analytic = (d.a_q * sl.da_dq + d.b_q * sl.db_dq) / d.eps_q;
    const double fd = (mode_data(s.params, s.mf, d.q + dq).eps_q - mode_data(s.params, s.mf, d.q - dq).eps_q) / (2 * dq);
    CHECK(std::abs(analytic - fd) <= 1e-6 * std::max(1.0, std::abs(analytic)));
  }
}

TEST_CASE("isotropic group velocity golden value") {
  const GroupVelocity v = group_velocity_max(solve(1.0, 0.0, 800));
  CHECK(v.v_g == doctest::Approx(1.636609).epsilon(1e-6));
  CHECK(std::abs(v.q_star - 3.141592653589793 / 2) < 3.141592653589793 / 800 + 1e-12);
}

TEST_CASE("predicted suppression time") {
  CHECK(predicted_suppression_time(100, 1.0) == 50.0);
  CHECK(predicted_suppression_time(400, 1.6) == 2.0 * predicted_suppression_time(200, 1.6));
  CHECK_THROWS_AS(predicted_suppression_time(100, 0.0), InvalidArgument);
}
