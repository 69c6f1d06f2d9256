#include "xxzq/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "xxzq/errors.hpp"

namespace xxzq {

void ModelParams::validate() const {
  if (n_sites < 4 || n_sites % 2 != 0) {
    throw InvalidArgument("n_sites must be even and >= 4, got " + std::to_string(n_sites));
  }
  if (!std::isfinite(coupling_j) || !std::isfinite(anisotropy) || !std::isfinite(field)) {
    throw InvalidArgument("model parameters must be finite");
  }
  if (!(coupling_j > 0.0)) throw InvalidArgument("coupling_j must be positive");
}

MomentumGrid momentum_grid(int n_sites) {
  if (n_sites < 4 || n_sites % 2 != 0) {
    throw InvalidArgument("momentum grid needs an even n_sites >= 4, got " + std::to_string(n_sites));
  }
  const int half = n_sites / 2;
  const double step = std::numbers::pi / n_sites;
  MomentumGrid grid;
  grid.modes.resize(static_cast<std::size_t>(n_sites));
  for (int n = 1; n <= half; ++n) {
    const double q = (2 * n - 1) * step;
    grid.modes[static_cast<std::size_t>(half - n)] = -q;
    grid.modes[static_cast<std::size_t>(half + n - 1)] = q;
  }
  return grid;
}

double gapless_tolerance(const ModelParams& params) {
  return 1e-12 * (params.coupling_j * (1.0 + std::abs(params.anisotropy)) + std::abs(params.field));
}

ModeData mode_data(const ModelParams& params, const MeanFieldParams& mf, double q) {
  const double j = params.coupling_j;
  const double hop = j * ((params.anisotropy + 1.0) / 2.0 - 2.0 * mf.u2);
  const double pair = j * (2.0 * mf.u3 + (params.anisotropy - 1.0) / 2.0);
  ModeData d;
  d.q = q;
  d.a_q = hop * std::cos(q) + j * (2.0 * mf.u1 - 1.0) - params.field;
  d.b_q = pair * std::sin(q);
  d.eps_q = std::hypot(d.a_q, d.b_q);
  if (d.eps_q <= gapless_tolerance(params)) {
    d.gapless = true;
    d.theta_q = 0.0;
  } else {
    d.theta_q = 0.5 * std::atan2(-d.b_q, d.a_q);
  }
  return d;
}

ModeSlopes mode_slopes(const ModelParams& params, const MeanFieldParams& mf, double q) {
  const double j = params.coupling_j;
  const double hop = j * ((params.anisotropy + 1.0) / 2.0 - 2.0 * mf.u2);
  const double pair = j * (2.0 * mf.u3 + (params.anisotropy - 1.0) / 2.0);
  return {-hop * std::sin(q), pair * std::cos(q)};
}

}  // namespace xxzq
