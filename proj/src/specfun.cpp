#include "cskern/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cskern/detail/double_double.hpp"
#include "cskern/error.hpp"
#include "cskern/quadrature.hpp"

namespace cskern {

using detail::DoubleDouble;

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::Series: return "SERIES";
    case Regime::Asymptotic: return "ASYMPTOTIC";
    case Regime::ClosedForm: return "CLOSED_FORM";
  }
  return "UNKNOWN";
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw KernelError(ErrorCode::DomainError, "log_gamma requires x > 0, got " + std::to_string(x));
  return std::lgamma(x);
}

double beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw KernelError(ErrorCode::DomainError, "beta requires positive arguments");
  if (a + b < 150.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 170.0) return std::exp(-std::lgamma(x));
  return 1.0 / std::tgamma(x);
}

namespace {

constexpr double kPi = std::numbers::pi;

// Below this argument Omega and J are summed from the power series in
// double-double; the largest term is about e^t so 25 keeps ~1e-21 absolute.
double series_limit(double lambda) { return std::max(25.0, 2.0 * lambda); }

// sum_k (-t^2/4)^k / (k! (lambda+1)_k), i.e. 0F1(; lambda+1; -t^2/4).
double omega_series(double lambda, double t) {
  const DoubleDouble quarter_t2 = detail::two_prod(t, t) * 0.25;
  DoubleDouble term(1.0);
  DoubleDouble sum(1.0);
  for (int k = 1; k < 1000; ++k) {
    DoubleDouble denom = detail::two_prod(static_cast<double>(k), lambda + k);
    term = -(term * quarter_t2) / denom;
    sum += term;
    if (k > t && detail::abs(term) < 1e-20) break;
  }
  return sum.to_double();
}

// Hankel's expansion, valid for t well beyond lambda^2 / 2.
double bessel_j_hankel(double lambda, double t) {
  const double mu = 4.0 * lambda * lambda;
  double p = 1.0, q = 0.0;
  double a = 1.0;  // a_k(lambda) / t^k
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (8.0 * k * t);
    const double mag = std::abs(a);
    if (mag > prev) break;
    // k odd feeds Q, k even feeds P, with signs (-1)^floor(k/2).
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 1) q += sign * a; else p += sign * a;
    if (mag < 1e-17) break;
    prev = mag;
  }
  const double phase = (0.5 * lambda + 0.25) * kPi;
  const double c = std::cos(t) * std::cos(phase) + std::sin(t) * std::sin(phase);
  const double s = std::sin(t) * std::cos(phase) - std::cos(t) * std::sin(phase);
  return std::sqrt(2.0 / (kPi * t)) * (p * c - q * s);
}

bool is_half_integer(double lambda, int& n) {
  const double twice = 2.0 * lambda;
  if (twice != std::floor(twice) || std::fmod(std::abs(twice), 2.0) != 1.0) return false;
  n = static_cast<int>(std::floor(lambda));
  return n >= -1 && n <= 12;
}

// J_lambda for lambda > -1, t > 0, without the public precondition checks.
double bessel_j_impl(double lambda, double t) {
  if (t <= series_limit(lambda)) {
    const double log_pref = lambda * std::log(0.5 * t) - std::lgamma(lambda + 1.0);
    return std::exp(log_pref) * omega_series(lambda, t);
  }
  if (t >= lambda * lambda) return bessel_j_hankel(lambda, t);
  return std::cyl_bessel_j(lambda, t);
}

}  // namespace

double bessel_j(double lambda, double t) {
  if (!(lambda >= -0.5)) throw KernelError(ErrorCode::DomainError, "bessel_j requires lambda >= -1/2");
  if (!(t >= 0.0) || !std::isfinite(t))
    throw KernelError(ErrorCode::DomainError, "bessel_j requires finite t >= 0");
  if (t == 0.0) {
    if (lambda == 0.0) return 1.0;
    return lambda > 0.0 ? 0.0 : INFINITY;
  }
  int n = 0;
  if (is_half_integer(lambda, n) && t > series_limit(lambda)) {
    return omega_half_integer(n, t) * std::exp(lambda * std::log(0.5 * t) - std::lgamma(lambda + 1.0));
  }
  return bessel_j_impl(lambda, t);
}

double omega(double lambda, double t) {
  if (!(lambda > -1.0)) throw KernelError(ErrorCode::DomainError, "omega requires lambda > -1");
  t = std::abs(t);
  if (!std::isfinite(t)) throw KernelError(ErrorCode::DomainError, "omega requires finite t");
  if (t == 0.0) return 1.0;
  int n = 0;
  if (is_half_integer(lambda, n) && (n <= 0 || t >= 2.0 * n + 2.0)) return omega_half_integer(n, t);
  if (t <= series_limit(lambda)) return omega_series(lambda, t);
  const double log_pref = std::lgamma(lambda + 1.0) - lambda * std::log(0.5 * t);
  return std::exp(log_pref) * bessel_j_impl(lambda, t);
}

double omega_half_integer(int n, double t) {
  if (n < -1) throw KernelError(ErrorCode::DomainError, "omega_half_integer requires n >= -1");
  t = std::abs(t);
  if (n == -1) return std::cos(t);
  if (t == 0.0) return 1.0;
  if (n == 0) return std::sin(t) / t;
  // Forward recurrence cancels for t below the order; use the series there.
  if (t < 2.0 * n + 2.0) return omega_series(n + 0.5, t);
  // Omega_{nu+1} = 4 nu (nu+1) / t^2 (Omega_nu - Omega_{nu-1})
  double prev = std::cos(t);
  double cur = std::sin(t) / t;
  const double inv_t2 = 1.0 / (t * t);
  for (int k = 0; k < n; ++k) {
    const double nu = k + 0.5;
    const double next = 4.0 * nu * (nu + 1.0) * inv_t2 * (cur - prev);
    prev = cur;
    cur = next;
  }
  return cur;
}

double bessel_k(double alpha, double z) {
  if (!(alpha > -0.5)) throw KernelError(ErrorCode::DomainError, "bessel_k requires alpha > -1/2");
  if (!(z > 0.0) || !std::isfinite(z)) throw KernelError(ErrorCode::DomainError, "bessel_k requires z > 0");
  const double p = alpha - 0.5;
  // After t = tau/z and tau = u/(1-u):
  //   K = sqrt(pi/(2z)) e^-z / Gamma(alpha+1/2) * int_0^1 e^-tau tau^p (1+tau/2z)^p du/(1-u)^2
  auto log_body = [p, z](double u) {
    const double one_minus = 1.0 - u;
    const double tau = u / one_minus;
    return -tau + p * std::log1p(tau / (2.0 * z)) - (p + 2.0) * std::log(one_minus);
  };
  // Near u = 0 the factor u^p is carried by the Jacobi weight.
  const double h0 = std::min(0.25, z);
  double head = integrate_panel([&](double u) { return std::exp(log_body(u)); }, 0.0, h0, p, 0.0, 24);
  auto full = [&](double u) {
    if (u >= 1.0) return 0.0;
    return std::exp(log_body(u) + p * std::log(u));
  };
  double tail = integrate_adaptive(full, h0, 1.0, 1e-14, 1e-300, 20, 16);
  const double integral = head + tail;
  return std::sqrt(kPi / (2.0 * z)) * std::exp(-z) * integral * reciprocal_gamma(alpha + 0.5);
}

}  // namespace cskern
