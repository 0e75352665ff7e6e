#include "cskern/rkhs.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cskern/error.hpp"
#include "cskern/kernels.hpp"
#include "cskern/parallel.hpp"
#include "cskern/quadrature.hpp"

namespace cskern {

namespace {

constexpr double kPi = std::numbers::pi;

void check_nodes(const KernelSpec& spec, const NodeSet& nodes) {
  if (nodes.dimension != spec.dimension || nodes.points.rows() != spec.dimension)
    throw KernelError(ErrorCode::DimensionMismatch, "node dimension does not match kernel dimension");
  if (!nodes.points.allFinite()) throw KernelError(ErrorCode::DomainError, "nodes must be finite");
}

// C^3 step: 1 on [0, 1], 0 beyond 2.
double window(double u) {
  if (u <= 1.0) return 1.0;
  if (u >= 2.0) return 0.0;
  const double x = u - 1.0;
  return 1.0 - x * x * x * x * (35.0 - 84.0 * x + 70.0 * x * x - 20.0 * x * x * x);
}

}  // namespace

NodeSet random_nodes(int d, int count, std::uint64_t seed, double lo, double hi, double min_separation) {
  if (d < 1 || count < 0 || !(hi > lo))
    throw KernelError(ErrorCode::DomainError, "random_nodes needs d >= 1, count >= 0, hi > lo");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(lo, hi);
  NodeSet nodes{d, Eigen::MatrixXd(d, count)};
  const double sep2 = min_separation * min_separation;
  int filled = 0;
  long attempts = 0;
  while (filled < count) {
    if (++attempts > 1000L * (count + 10))
      throw KernelError(ErrorCode::DomainError, "cannot place nodes at the requested separation");
    Eigen::VectorXd p(d);
    for (int i = 0; i < d; ++i) p(i) = uniform(rng);
    bool ok = true;
    for (int j = 0; j < filled && ok; ++j) ok = (nodes.points.col(j) - p).squaredNorm() >= sep2;
    if (ok) nodes.points.col(filled++) = p;
  }
  return nodes;
}

Eigen::MatrixXd gram(const KernelSpec& spec, const NodeSet& nodes) {
  validate_spec(spec);
  check_nodes(spec, nodes);
  const Eigen::Index n = nodes.size();
  Eigen::MatrixXd m(n, n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t jj) {
    const auto j = static_cast<Eigen::Index>(jj);
    for (Eigen::Index k = 0; k <= j; ++k) m(j, k) = kernel_eval(spec, nodes.points.col(j), nodes.points.col(k));
  });
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < j; ++k) m(k, j) = m(j, k);
  return m;
}

GramFactorization factorize(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols()) throw KernelError(ErrorCode::DimensionMismatch, "Gram matrix must be square");
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw KernelError(ErrorCode::SingularGram, "Cholesky failed: Gram matrix is not numerically positive definite");
  GramFactorization out;
  out.lower_factor = llt.matrixL();
  const Eigen::VectorXd diag = out.lower_factor.diagonal();
  if (g.rows() > 0 && !(diag.minCoeff() > 0.0))
    throw KernelError(ErrorCode::SingularGram, "Cholesky produced a nonpositive pivot");
  out.log_determinant = 2.0 * diag.array().log().sum();
  return out;
}

Interpolant fit(const KernelSpec& spec, const NodeSet& nodes, const Eigen::VectorXd& values) {
  if (values.size() != nodes.size())
    throw KernelError(ErrorCode::DimensionMismatch, "value count does not match node count");
  const Eigen::MatrixXd g = gram(spec, nodes);
  const GramFactorization f = factorize(g);
  auto solve = [&](const Eigen::VectorXd& rhs) {
    Eigen::VectorXd y = f.lower_factor.triangularView<Eigen::Lower>().solve(rhs);
    return Eigen::VectorXd(f.lower_factor.transpose().triangularView<Eigen::Upper>().solve(y));
  };
  Eigen::VectorXd c = solve(values);
  c += solve(values - g * c);  // one step of iterative refinement

  Interpolant out{spec, nodes, c, 0.0};
  const double scale = values.norm();
  const double residual = (g * c - values).norm();
  out.relative_residual = scale > 0.0 ? residual / scale : residual;
  if (out.relative_residual > 1e-10)
    throw KernelError(ErrorCode::SingularGram,
                      "interpolation residual " + std::to_string(out.relative_residual) + " exceeds 1e-10");
  return out;
}

double eval_interpolant(const Interpolant& interp, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != interp.spec.dimension)
    throw KernelError(ErrorCode::DimensionMismatch, "probe dimension does not match kernel dimension");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < interp.nodes.size(); ++j)
    sum += interp.coefficients(j) * kernel_eval(interp.spec, x, interp.nodes.points.col(j));
  return sum;
}

TranslatedSpectrum kernel_translate_spectrum(const KernelSpec& spec, double center) {
  validate_spec(spec);
  if (spec.dimension != 1) throw KernelError(ErrorCode::DimensionMismatch, "translates are 1-d only");
  const double c = fourier_constant(spec);
  return {[spec, c](double xi) { return c * spectrum(spec, xi).value; }, spectrum_decay_exponent(spec), center,
          is_compact(spec.family) ? 1.0 : 0.0};
}

double askey2_fourier(double xi) {
  xi = std::abs(xi);
  if (xi < 0.1) {
    const double x2 = xi * xi;
    // 4 (1/3! - xi^2/5! + xi^4/7! - xi^6/9! + xi^8/11!)
    return 4.0 * (1.0 / 6 + x2 * (-1.0 / 120 + x2 * (1.0 / 5040 + x2 * (-1.0 / 362880 + x2 / 39916800.0))));
  }
  return 4.0 / (xi * xi) * (1.0 - std::sin(xi) / xi);
}

double askey2_weight(double xi) {
  xi = std::abs(xi);
  if (xi < 0.1) {
    const double x2 = xi * xi;
    const double ratio = 1.0 / 6 + x2 * (-1.0 / 120 + x2 * (1.0 / 5040 + x2 * (-1.0 / 362880 + x2 / 39916800.0)));
    return 1.0 / (8.0 * kPi * ratio);
  }
  return xi * xi * xi / (8.0 * kPi * (xi - std::sin(xi)));
}

double weighted_inner_product_1d(const TranslatedSpectrum& u, const TranslatedSpectrum& v,
                                 const std::function<double(double)>& weight, double weight_growth) {
  const double q = u.decay_exponent + v.decay_exponent - weight_growth;
  if (!(q > 1.0))
    throw KernelError(ErrorCode::DecayTooSlow, "spectral product times weight must decay faster than 1/xi");
  const double h = std::abs(u.center - v.center);

  // Windowed integrals I(R) = ∫_0^{2R} F(xi) chi(xi/R) at R = R_0 2^j, then
  // Richardson in R with the algebraic tail exponents q-1, q, q+1. An
  // oscillating tail term at frequency f leaves a window error of order
  // (R f)^-3, so R_0 follows the slowest beat between the shift h and the
  // frequencies carried by the two spectra. Exact resonances are purely
  // algebraic and handled by the extrapolation.
  const double su = u.support_radius, sv = v.support_radius;
  double beat = INFINITY;
  for (double f : {0.0, su, sv, su + sv, std::abs(su - sv)}) {
    const double e = std::abs(h - f);
    if (e > 0.0) beat = std::min(beat, e);
  }
  const double r_floor = q >= 3.0 ? 64.0 : 128.0;
  const double r_cap = q >= 3.0 ? 256.0 : 4096.0;
  const double r0 = std::isfinite(beat) ? std::clamp(64.0 / beat, r_floor, r_cap) : r_floor;
  constexpr int kLevels = 4;
  double radius[kLevels];
  for (int j = 0; j < kLevels; ++j) radius[j] = r0 * std::ldexp(1.0, j);
  const double xi_max = 2.0 * radius[kLevels - 1];

  const double panel = std::min(0.5 * kPi, h > 0.0 ? 0.5 * kPi / h : 0.5 * kPi);
  const long panels = static_cast<long>(std::ceil(xi_max / panel));
  const double step = xi_max / panels;
  const QuadratureRule& rule = cached_legendre(16);
  double sums[kLevels] = {0.0, 0.0, 0.0, 0.0};
  for (long k = 0; k < panels; ++k) {
    const double lo = k * step;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double xi = lo + 0.5 * step * (1.0 + rule.nodes[i]);
      const double f = u.radial(xi) * v.radial(xi) * weight(xi) * std::cos(h * xi);
      const double w = 0.5 * step * rule.weights[i] * f;
      for (int j = 0; j < kLevels; ++j) sums[j] += w * window(xi / radius[j]);
    }
  }

  // Solve I(R_j) = I + sum_m c_m R_j^{-e_m} for I.
  const double exps[kLevels - 1] = {q - 1.0, q, q + 1.0};
  Eigen::Matrix4d a;
  Eigen::Vector4d b;
  for (int j = 0; j < kLevels; ++j) {
    a(j, 0) = 1.0;
    for (int m = 0; m < kLevels - 1; ++m) a(j, m + 1) = std::pow(radius[j] / r0, -exps[m]);
    b(j) = sums[j];
  }
  const double half_line = a.fullPivLu().solve(b)(0);
  return 2.0 * half_line;  // the integrand is even in xi
}

double native_inner_product_1d(const KernelSpec& spec, const TranslatedSpectrum& u,
                               const TranslatedSpectrum& v) {
  validate_spec(spec);
  if (spec.dimension != 1)
    throw KernelError(ErrorCode::DimensionMismatch, "native_inner_product_1d requires d = 1");
  const double c = fourier_constant(spec);
  auto weight = [spec, c](double xi) { return 1.0 / (2.0 * kPi * c * spectrum(spec, xi).value); };
  return weighted_inner_product_1d(u, v, weight, spectrum_decay_exponent(spec));
}

EquivalenceConstants sobolev_equivalence_check(const KernelSpec& spec, const std::vector<double>& r_grid) {
  validate_spec(spec);
  if (r_grid.size() < 200)
    throw KernelError(ErrorCode::DomainError, "equivalence grid needs at least 200 points");
  if (*std::max_element(r_grid.begin(), r_grid.end()) < 1e4)
    throw KernelError(ErrorCode::DomainError, "equivalence grid must reach r = 1e4");
  const double c = fourier_constant(spec);
  const double s = spec.family == Family::Askey ? 0.5 * (spec.dimension + 1) : spec.order;
  std::vector<double> ratio(r_grid.size());
  parallel_for(r_grid.size(), [&](std::size_t i) {
    const double r = r_grid[i];
    const double value = c * spectrum(spec, r).value;
    if (!(value > 0.0))
      throw KernelError(ErrorCode::PositivityViolation,
                        "spectral density is not positive at r = " + std::to_string(r));
    ratio[i] = value * std::exp(s * std::log1p(r * r));
  });
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  return {*lo, *hi};
}

}  // namespace cskern
