#include "xxzq/quench.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "xxzq/errors.hpp"
#include "xxzq/numeric.hpp"

namespace xxzq {
namespace {

double harmonic_cos(const QuenchMode& md, int m) {
  return m <= kHarmonicTable ? md.cos_qm[m] : std::cos(md.q * m);
}

double harmonic_sin(const QuenchMode& md, int m) {
  return m <= kHarmonicTable ? md.sin_qm[m] : std::sin(md.q * m);
}

// Shared by the single-distance and block paths so both round identically.
inline double hop_term(const QuenchMode& md, int m, double cw) {
  return harmonic_cos(md, m) * (1.0 - md.cos2theta_f * md.cos2phi - md.sin2theta_f * md.sin2phi * cw);
}

inline std::complex<double> pair_term(const QuenchMode& md, int m, double cw, double sw) {
  const double s = harmonic_sin(md, m);
  return {s * (md.sin2theta_f * md.cos2phi - md.sin2phi * md.cos2theta_f * cw), -s * md.sin2phi * sw};
}

void check_distance(int m, int lowest) {
  if (m < lowest) throw InvalidArgument("distance out of range: " + std::to_string(m));
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("time must be finite and >= 0");
}

void require_gapped(const MeanFieldSolution& s) {
  for (const ModeData& d : s.modes) {
    if (d.gapless) {
      std::ostringstream msg;
      msg << "gapless mode at q = " << d.q;
      throw SingularModeError(msg.str(), d.q);
    }
  }
}

}  // namespace

QuenchSetup prepare_quench(const MeanFieldSolution& pre, const MeanFieldSolution& post) {
  if (pre.params.n_sites != post.params.n_sites || pre.modes.size() != post.modes.size()) {
    throw InvalidArgument("pre- and post-quench solutions live on different grids");
  }
  if (pre.params.coupling_j != post.params.coupling_j) {
    throw InvalidArgument("pre- and post-quench couplings differ");
  }
  require_gapped(pre);
  require_gapped(post);
  QuenchSetup s;
  s.pre = pre;
  s.post = post;
  const auto in = pre.positive_modes();
  const auto fin = post.positive_modes();
  s.phi.reserve(in.size());
  s.modes.reserve(in.size());
  for (std::size_t k = 0; k < in.size(); ++k) {
    if (in[k].q != fin[k].q) throw InvalidArgument("momentum grids do not match");
    const double phi = std::remainder(fin[k].theta_q - in[k].theta_q, std::numbers::pi);
    s.phi.push_back(phi);
    QuenchMode md;
    md.q = fin[k].q;
    md.eps_f = fin[k].eps_q;
    md.cos2theta_f = std::cos(2.0 * fin[k].theta_q);
    md.sin2theta_f = std::sin(2.0 * fin[k].theta_q);
    md.cos2phi = std::cos(2.0 * phi);
    md.sin2phi = std::sin(2.0 * phi);
    for (int m = 0; m <= kHarmonicTable; ++m) {
      md.cos_qm[m] = std::cos(md.q * m);
      md.sin_qm[m] = std::sin(md.q * m);
    }
    s.modes.push_back(md);
  }
  return s;
}

double hopping_correlator(const QuenchSetup& setup, int m, double t) {
  check_distance(m, 0);
  check_time(t);
  CompensatedSum sum;
  for (const QuenchMode& md : setup.modes) sum.add(hop_term(md, m, std::cos(2.0 * md.eps_f * t)));
  return sum.value() / setup.n_sites();
}

std::complex<double> pairing_correlator(const QuenchSetup& setup, int m, double t) {
  check_distance(m, 1);
  check_time(t);
  CompensatedComplexSum sum;
  for (const QuenchMode& md : setup.modes) {
    const double w = 2.0 * md.eps_f * t;
    sum.add(pair_term(md, m, std::cos(w), std::sin(w)));
  }
  return sum.value() / static_cast<double>(setup.n_sites());
}

CorrelatorBlock correlator_block(const QuenchSetup& setup, int m_max, double t) {
  check_distance(m_max, 0);
  check_time(t);
  const auto depth = static_cast<std::size_t>(m_max);
  std::vector<CompensatedSum> hop(depth + 1);
  std::vector<CompensatedComplexSum> pair(depth);
  for (const QuenchMode& md : setup.modes) {
    const double w = 2.0 * md.eps_f * t;
    const double cw = std::cos(w);
    const double sw = std::sin(w);
    for (int m = 0; m <= m_max; ++m) hop[static_cast<std::size_t>(m)].add(hop_term(md, m, cw));
    for (int m = 1; m <= m_max; ++m) pair[static_cast<std::size_t>(m - 1)].add(pair_term(md, m, cw, sw));
  }
  CorrelatorBlock b;
  b.time = t;
  const double n = setup.n_sites();
  for (const auto& s : hop) b.hop.push_back(s.value() / n);
  for (const auto& s : pair) b.pair.push_back(s.value() / n);
  return b;
}

CorrelatorBlock ground_state_block(const MeanFieldSolution& solution, int m_max) {
  check_distance(m_max, 0);
  require_gapped(solution);
  const auto depth = static_cast<std::size_t>(m_max);
  std::vector<CompensatedSum> hop(depth + 1);
  std::vector<CompensatedSum> pair(depth);
  for (const ModeData& d : solution.positive_modes()) {
    const double ra = d.a_q / d.eps_q;
    const double rb = d.b_q / d.eps_q;
    for (int m = 0; m <= m_max; ++m) hop[static_cast<std::size_t>(m)].add(std::cos(d.q * m) * (1.0 - ra));
    for (int m = 1; m <= m_max; ++m) pair[static_cast<std::size_t>(m - 1)].add(-std::sin(d.q * m) * rb);
  }
  CorrelatorBlock b;
  const double n = solution.params.n_sites;
  for (const auto& s : hop) b.hop.push_back(s.value() / n);
  for (const auto& s : pair) b.pair.emplace_back(s.value() / n, 0.0);
  return b;
}

GroupVelocity group_velocity_max(const MeanFieldSolution& solution) {
  require_gapped(solution);
  GroupVelocity best;
  for (const ModeData& d : solution.positive_modes()) {
    const ModeSlopes s = mode_slopes(solution.params, solution.mf, d.q);
    const double v = std::abs((d.a_q * s.da_dq + d.b_q * s.db_dq) / d.eps_q);
    if (v > best.v_g) {
      best.v_g = v;
      best.q_star = d.q;
    }
  }
  return best;
}

double predicted_suppression_time(int n_sites, double v_g) {
  if (!(v_g > 0.0) || !std::isfinite(v_g)) throw InvalidArgument("group velocity must be positive");
  if (n_sites <= 0) throw InvalidArgument("n_sites must be positive");
  return n_sites / (2.0 * v_g);
}

}  // namespace xxzq
