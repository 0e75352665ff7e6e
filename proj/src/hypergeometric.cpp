// Generalized hypergeometric functions 1F2 and 2F3 at argument -x^2/4.
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "cskern/detail/double_double.hpp"
#include "cskern/error.hpp"
#include "cskern/specfun.hpp"

namespace cskern {

using detail::DoubleDouble;

namespace {

constexpr int kMaxTerms = 5000;
constexpr double kTruncation = 1e-16;

bool nonpositive_integer(double b) { return b <= 0.0 && b == std::floor(b); }

void check_denominators(std::initializer_list<double> bs) {
  for (double b : bs) {
    if (nonpositive_integer(b))
      throw KernelError(ErrorCode::DomainError,
                        "hypergeometric denominator parameter is a nonpositive integer: " + std::to_string(b));
  }
}

// Direct alternating series with numerator parameters `as` and denominator
// parameters `bs`: sum_k prod(a)_k / (k! prod(b)_k) (-x^2/4)^k.
template <std::size_t P, std::size_t Q>
SeriesEvaluation direct_series(const double (&as)[P], const double (&bs)[Q], double x) {
  const DoubleDouble minus_quarter_x2 = -(detail::two_prod(x, x) * 0.25);
  DoubleDouble term(1.0);
  DoubleDouble sum(1.0);
  double max_term = 1.0;
  int small_in_a_row = 0;
  std::size_t k = 0;
  bool converged = false;
  for (k = 0; k < kMaxTerms; ++k) {
    DoubleDouble num(1.0);
    for (double a : as) num = num * (a + static_cast<double>(k));
    DoubleDouble den(static_cast<double>(k + 1));
    for (double b : bs) den = den * (b + static_cast<double>(k));
    term = term * minus_quarter_x2 * num / den;
    if (term.hi == 0.0) {  // a numerator parameter hit a nonpositive integer
      converged = true;
      ++k;
      break;
    }
    sum += term;
    max_term = std::max(max_term, detail::abs(term));
    if (detail::abs(term) <= kTruncation * detail::abs(sum)) {
      if (++small_in_a_row == 2) {
        converged = true;
        ++k;
        break;
      }
    } else {
      small_in_a_row = 0;
    }
  }
  SeriesEvaluation out;
  out.value = sum.to_double();
  out.terms_used = k + 1;
  out.regime = Regime::Series;
  // Last-term bound plus rounding of the largest partial sum in double-double.
  out.error_estimate = detail::abs(term) + 1e-31 * max_term * std::sqrt(static_cast<double>(k + 1)) +
                       0x1p-53 * std::abs(out.value);
  if (!converged)
    throw KernelError(ErrorCode::ConvergenceFailure,
                      "hypergeometric series did not converge in " + std::to_string(kMaxTerms) + " terms");
  return out;
}

struct AsymptoticParts {
  double algebraic = 0.0;
  double algebraic_error = 0.0;
  double oscillatory = 0.0;
  double oscillatory_error = 0.0;
  double envelope = 0.0;  // amplitude of the oscillatory part
  std::size_t terms = 0;
};

// Large-x expansion of 1F2(a; b1, b2; -x^2/4) = E(x) + Re[K e^{ix} x^sigma sum c_n x^-n].
// E is the algebraic series from the poles of Gamma(a+s); the c_n follow from
// substituting e^{ix} x^{sigma-n} into theta(theta+2b1-2)(theta+2b2-2)y + x^2(theta+2a)y = 0.
// Both are asymptotic series truncated at their smallest term.
AsymptoticParts asymptotic_parts(double a, double b1, double b2, double x, int max_terms) {
  AsymptoticParts out;
  const double big_x = 0.25 * x * x;

  const double pref = std::tgamma(b1) * std::tgamma(b2) * reciprocal_gamma(b1 - a) *
                      reciprocal_gamma(b2 - a) * std::pow(big_x, -a);
  if (pref != 0.0) {
    double term = 1.0, sum = 0.0, prev = INFINITY;
    int k = 0;
    for (; k < max_terms; ++k) {
      if (std::abs(term) > std::abs(prev)) break;
      sum += term;
      prev = term;
      term *= -(a + k) * (1.0 + a - b1 + k) * (1.0 + a - b2 + k) / ((k + 1.0) * big_x);
      if (term == 0.0 || std::abs(term) < 1e-17 * std::abs(sum)) {
        ++k;
        break;
      }
    }
    out.algebraic = pref * sum;
    out.algebraic_error = std::abs(pref * term);
    out.terms += k;
  }

  const double amp = std::tgamma(b1) * std::tgamma(b2) * reciprocal_gamma(a) *
                     std::pow(2.0, -(a - b1 - b2 + 0.5)) / std::sqrt(std::numbers::pi);
  if (amp != 0.0) {
    const double sigma = a - b1 - b2 + 0.5;
    const double s = 2.0 * (b1 - 1.0) + 2.0 * (b2 - 1.0);
    const double p = 4.0 * (b1 - 1.0) * (b2 - 1.0);
    auto coef_b = [&](double m) { return 3.0 * m * m + 3.0 * m + 1.0 + s * (2.0 * m + 1.0) + p; };
    auto coef_c = [&](double m) { return m * m * m + s * m * m + p * m; };
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    C c_prev2(0.0), c_prev(1.0);
    C series(1.0);
    double prev_mag = INFINITY;
    double omitted = 0.0;
    const double inv_x = 1.0 / x;
    double x_pow = 1.0;
    int n = 1;
    for (; n < max_terms; ++n) {
      C c = -(i * coef_b(sigma - n + 1.0) * c_prev + coef_c(sigma - n + 2.0) * c_prev2) /
            (2.0 * n);
      x_pow *= inv_x;
      const C term = c * x_pow;
      const double mag = std::abs(term);
      omitted = mag;
      if (n > 3 && mag > prev_mag) break;
      series += term;
      c_prev2 = c_prev;
      c_prev = c;
      if (mag != 0.0) prev_mag = mag;
      if (mag < 1e-17 * std::abs(series)) {
        omitted = 0.0;
        break;
      }
    }
    const C k_const = amp * std::exp(i * (0.5 * std::numbers::pi * sigma));
    const double envelope = amp * std::pow(x, sigma);
    out.oscillatory = envelope * std::real(k_const / amp * std::exp(i * x) * series);
    out.oscillatory_error = envelope * omitted;
    out.envelope = envelope;
    out.terms += n;
  }
  return out;
}

}  // namespace

SeriesEvaluation hyp1f2_series(double a, double b1, double b2, double x) {
  check_denominators({b1, b2});
  const double as[1] = {a};
  const double bs[2] = {b1, b2};
  return direct_series(as, bs, std::abs(x));
}

SeriesEvaluation hyp1f2_asymptotic(double a, double b1, double b2, double x) {
  check_denominators({b1, b2});
  x = std::abs(x);
  if (!(x > 0.0)) throw KernelError(ErrorCode::DomainError, "asymptotic 1F2 needs x > 0");
  AsymptoticParts parts = asymptotic_parts(a, b1, b2, x, 400);
  SeriesEvaluation out;
  out.value = parts.algebraic + parts.oscillatory;
  out.error_estimate = parts.algebraic_error + parts.oscillatory_error;
  out.terms_used = parts.terms;
  out.regime = Regime::Asymptotic;
  return out;
}

double hyp1f2_switch_point(double a, double b1, double b2) {
  double sw = std::max(30.0, 10.0 * std::abs(a));
  // Cancellation guard: keep x^2/4 <= 0.25 * k_max * min(b).
  const double min_b = std::min(b1, b2);
  if (min_b > 0.0) sw = std::min(sw, 2.0 * std::sqrt(0.25 * kMaxTerms * min_b));
  return sw;
}

SeriesEvaluation hyp1f2(double a, double b1, double b2, double x) {
  check_denominators({b1, b2});
  x = std::abs(x);
  if (!std::isfinite(x)) throw KernelError(ErrorCode::DomainError, "hyp1f2 requires finite x");
  if (x == 0.0) return {1.0, 1, 0.0, Regime::Series};
  const double tol = 1e-10;
  if (x <= hyp1f2_switch_point(a, b1, b2)) {
    SeriesEvaluation s = hyp1f2_series(a, b1, b2, x);
    if (s.error_estimate <= tol * std::abs(s.value)) return s;
    SeriesEvaluation as = hyp1f2_asymptotic(a, b1, b2, x);
    if (as.error_estimate < s.error_estimate) return as;
    if (s.error_estimate <= 1e-6 * std::abs(s.value)) return s;
    throw KernelError(ErrorCode::ConvergenceFailure, "1F2: neither branch reached tolerance");
  }
  AsymptoticParts parts = asymptotic_parts(a, b1, b2, x, 400);
  SeriesEvaluation as{parts.algebraic + parts.oscillatory, parts.terms,
                      parts.algebraic_error + parts.oscillatory_error, Regime::Asymptotic};
  const double scale = std::abs(as.value) + parts.envelope;
  if (as.error_estimate <= tol * scale) return as;
  // Degenerate large-parameter cases: fall back to the series if it is still usable.
  try {
    SeriesEvaluation s = hyp1f2_series(a, b1, b2, x);
    if (s.error_estimate < as.error_estimate) return s;
  } catch (const KernelError&) {
  }
  if (as.error_estimate <= 1e-6 * scale) return as;
  throw KernelError(ErrorCode::ConvergenceFailure, "1F2: neither branch reached tolerance");
}

SeriesEvaluation hyp2f3(double a1, double a2, double b1, double b2, double b3, double x) {
  check_denominators({b1, b2, b3});
  x = std::abs(x);
  if (x == 0.0) return {1.0, 1, 0.0, Regime::Series};
  const double as[2] = {a1, a2};
  const double bs[3] = {b1, b2, b3};
  SeriesEvaluation s = direct_series(as, bs, x);
  if (s.error_estimate > 1e-8 * std::abs(s.value))
    throw KernelError(ErrorCode::ConvergenceFailure, "2F3 series lost precision to cancellation");
  return s;
}

SeriesEvaluation u_asymptotic(UFunctionParams params, double x) {
  const double rho = params.rho, nu = params.nu;
  if (!(rho > 0.0) || !(nu > 0.0)) throw KernelError(ErrorCode::DomainError, "U requires rho > 0, nu > 0");
  if (rho == 1.0)
    throw KernelError(ErrorCode::DomainError, "U(1, nu; x) is Omega_{nu-1/2}; use omega instead");
  x = std::abs(x);
  if (!(x >= 1.0)) throw KernelError(ErrorCode::DomainError, "u_asymptotic requires |x| >= 1");

  const double g = std::tgamma(2.0 * rho * nu);
  const double algebraic = g * reciprocal_gamma(2.0 * rho * nu - 2.0 * nu) * std::pow(x, -2.0 * nu);
  const double amplitude = g / (std::pow(2.0, nu - 1.0) * std::tgamma(nu)) *
                           std::pow(x, -2.0 * nu * (rho - 0.5));
  const double phase = x - rho * nu * std::numbers::pi + 0.5 * nu * std::numbers::pi;

  // First neglected corrections, from the full expansion's next terms.
  const double a = nu, b1 = rho * nu, b2 = rho * nu + 0.5;
  const double next_alg = std::abs(a * (1.0 + a - b1) * (1.0 + a - b2)) / (0.25 * x * x);
  const double sigma = a - b1 - b2 + 0.5;
  const double s = 2.0 * (b1 - 1.0) + 2.0 * (b2 - 1.0);
  const double p = 4.0 * (b1 - 1.0) * (b2 - 1.0);
  const double c1 = std::abs(3.0 * sigma * sigma + 3.0 * sigma + 1.0 + s * (2.0 * sigma + 1.0) + p) / 2.0;

  SeriesEvaluation out;
  out.value = algebraic + amplitude * std::cos(phase);
  out.terms_used = 2;
  out.error_estimate = std::abs(algebraic) * next_alg + amplitude * c1 / x;
  out.regime = Regime::Asymptotic;
  return out;
}

}  // namespace cskern
