#include "xxzq/gaussian.hpp"

#include <cmath>
#include <vector>

#include "xxzq/errors.hpp"

namespace xxzq {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// A linear fermion operator on one site: alpha a_x + beta a+_x.
struct LinearOp {
  int site = 0;
  cd alpha;
  cd beta;
};

LinearOp annihilator(int x) { return {x, 1.0, 0.0}; }
LinearOp creator(int x) { return {x, 0.0, 1.0}; }
LinearOp majorana(int j) {
  const int x = j / 2;
  return j % 2 == 0 ? LinearOp{x, 1.0, 1.0} : LinearOp{x, kI, -kI};
}

// <o o'> from translation-invariant T_m, P_m.
cd contraction(const CorrelatorBlock& b, const LinearOp& o, const LinearOp& p) {
  const int d = p.site - o.site;
  const cd aa = -std::conj(b.p_at(d));
  const cd ad = (d == 0 ? 1.0 : 0.0) - b.t_at(d);
  const cd da = b.t_at(d);
  const cd dd = b.p_at(d);
  return o.alpha * p.alpha * aa + o.alpha * p.beta * ad + o.beta * p.alpha * da + o.beta * p.beta * dd;
}

void check_block(const CorrelatorBlock& b, int m) {
  if (m < 1) throw InvalidArgument("distance must be >= 1");
  if (b.depth() < m || static_cast<int>(b.hop.size()) < m + 1) {
    throw InvalidArgument("correlator block does not reach distance " + std::to_string(m));
  }
}

// Majorana coefficient vector of a single-site operator within a window of 2*window modes.
Eigen::VectorXcd coefficients(const LinearOp& o, int window) {
  // alpha a + beta a+ = (alpha + beta)/2 c_{2x} + (beta - alpha) i/2 c_{2x+1}
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(2 * window);
  u(2 * o.site) = (o.alpha + o.beta) / 2.0;
  u(2 * o.site + 1) = kI * (o.beta - o.alpha) / 2.0;
  return u;
}

cd string_value(const CorrelatorBlock& block, int m, const LinearOp& last) {
  const int window = m + 1;
  const ComplexMatrix gamma = majorana_covariance(block, window);
  std::vector<LinearOp> ops;
  ops.push_back(creator(0));
  for (int j = 2; j < 2 * m; ++j) ops.push_back(majorana(j));
  ops.push_back(last);
  const auto n = static_cast<Eigen::Index>(ops.size());
  ComplexMatrix u(2 * window, n);
  for (Eigen::Index k = 0; k < n; ++k) u.col(k) = coefficients(ops[static_cast<std::size_t>(k)], window);
  // Every pair of listed operators anticommutes, so the contraction matrix is u^T Gamma u.
  ComplexMatrix g = u.transpose() * gamma * u;
  g = (g - g.transpose()).eval() / 2.0;
  return std::pow(kI, m - 1) * pfaffian(g);
}

struct BlockEigen {
  double mean;
  double radius;
};

BlockEigen block_eigen(double a, double b, cd c) {
  return {(a + b) / 2.0, std::sqrt((a - b) * (a - b) / 4.0 + std::norm(c))};
}

// Drops a slightly negative eigenvalue of [[a, conj(c)], [c, b]] by projecting it out.
void repair_block(double& a, double& b, cd& c, double& negativity) {
  const BlockEigen e = block_eigen(a, b, c);
  const double low = e.mean - e.radius;
  if (low >= 0.0) return;
  negativity = std::max(negativity, -low);
  if (low < -kRepairTolerance) {
    throw PhysicalityError("two-site block eigenvalue " + std::to_string(low) + " below tolerance");
  }
  if (e.mean + e.radius <= 0.0) {
    a = b = 0.0;
    c = 0.0;
    return;
  }
  // block - low * P_low, with P_low = (1 - (block - mean)/radius)/2
  const double w = low / 2.0;
  const double pa = 1.0 - (a - e.mean) / e.radius;
  const double pb = 1.0 - (b - e.mean) / e.radius;
  a -= w * pa;
  b -= w * pb;
  c -= w * (-c / e.radius);
}

}  // namespace

std::complex<double> pfaffian(const ComplexMatrix& input) {
  if (input.rows() != input.cols()) throw InvalidArgument("pfaffian needs a square matrix");
  const Eigen::Index n = input.rows();
  const double scale = std::max(1.0, input.cwiseAbs().maxCoeff());
  if (n > 0 && (input + input.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("pfaffian needs an antisymmetric matrix");
  }
  if (n % 2 == 1) return 0.0;
  ComplexMatrix a = input;
  cd pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index offset = 0;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&offset);
    const Eigen::Index kp = k + 1 + offset;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    if (a(k + 1, k) == 0.0) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index rest = n - k - 2;
      const Eigen::VectorXcd tau = a.row(k).tail(rest).transpose() / a(k, k + 1);
      const Eigen::VectorXcd col = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

ComplexMatrix majorana_covariance(const CorrelatorBlock& block, int window) {
  if (window < 1 || block.depth() < window - 1 || static_cast<int>(block.hop.size()) < window) {
    throw InvalidArgument("correlator block does not cover the window");
  }
  const int dim = 2 * window;
  ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      const cd v = contraction(block, majorana(j), majorana(k));
      g(j, k) = v;
      g(k, j) = -v;
    }
  }
  return g;
}

StringCorrelators string_correlators_pfaffian(const CorrelatorBlock& block, int m) {
  check_block(block, m);
  return {string_value(block, m, annihilator(m)), string_value(block, m, creator(m))};
}

StringCorrelators string_correlators(const CorrelatorBlock& block, int m) {
  check_block(block, m);
  if (m == 1) return {block.t_at(1), block.p_at(1)};
  return string_correlators_pfaffian(block, m);
}

Occupations occupation_pair(const CorrelatorBlock& block, int m) {
  check_block(block, m);
  const double t0 = block.t_at(0);
  const double tm = block.t_at(m);
  Occupations o;
  o.x_plus = t0 * t0 - tm * tm + std::norm(block.p_at(m));
  o.y_plus = t0 - o.x_plus;
  o.y_minus = t0 - o.x_plus;
  o.x_minus = 1.0 - 2.0 * t0 + o.x_plus;
  return o;
}

TwoSiteState assemble_two_site_state(const XStateEntries& raw, int m) {
  TwoSiteState s;
  s.m = m;
  s.raw = raw;
  XStateEntries x = raw;
  double negativity = 0.0;
  repair_block(x.x_plus, x.x_minus, x.f, negativity);
  repair_block(x.y_plus, x.y_minus, x.z, negativity);
  const double trace = x.x_plus + x.y_plus + x.y_minus + x.x_minus;
  if (!(trace > 0.0)) throw PhysicalityError("two-site state has non-positive trace");
  if (negativity > 0.0) {
    x.x_plus /= trace;
    x.y_plus /= trace;
    x.y_minus /= trace;
    x.x_minus /= trace;
    x.z /= trace;
    x.f /= trace;
  }
  s.repaired = negativity > 0.0;
  s.max_negativity = negativity;
  s.state = x;
  return s;
}

TwoSiteState two_site_state(const CorrelatorBlock& block, int m) {
  const Occupations o = occupation_pair(block, m);
  const StringCorrelators sc = string_correlators(block, m);
  XStateEntries raw;
  raw.x_plus = o.x_plus;
  raw.y_plus = o.y_plus;
  raw.y_minus = o.y_minus;
  raw.x_minus = o.x_minus;
  raw.z = sc.z;
  raw.f = sc.f;
  return assemble_two_site_state(raw, m);
}

Eigen::Matrix4cd density_matrix(const XStateEntries& x) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = x.x_plus;
  rho(1, 1) = x.y_plus;
  rho(2, 2) = x.y_minus;
  rho(3, 3) = x.x_minus;
  rho(1, 2) = std::conj(x.z);
  rho(2, 1) = x.z;
  rho(0, 3) = std::conj(x.f);
  rho(3, 0) = x.f;
  return rho;
}

XStateEntries phase_normalized(const XStateEntries& x) {
  XStateEntries out = x;
  out.z = std::abs(x.z);
  out.f = std::abs(x.f);
  return out;
}

}  // namespace xxzq
