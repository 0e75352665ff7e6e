#pragma once

#include <cstddef>

namespace cskern {

enum class Regime { Series, Asymptotic, ClosedForm };

const char* to_string(Regime regime) noexcept;

/// Value of a series-type evaluation together with how it was obtained.
/// `error_estimate` is absolute.
struct SeriesEvaluation {
  double value = 0.0;
  std::size_t terms_used = 0;
  double error_estimate = 0.0;
  Regime regime = Regime::Series;
};

/// Parameters of U(rho, nu; x) = 1F2(nu; rho nu, rho nu + 1/2; -x^2/4).
struct UFunctionParams {
  double rho;
  double nu;
};

double log_gamma(double x);
double beta(double a, double b);

/// 1/Gamma(x), exactly zero at the poles.
double reciprocal_gamma(double x);

/// J_lambda(t) for lambda >= -1/2, t >= 0.
double bessel_j(double lambda, double t);

/// Omega_lambda(t) = Gamma(lambda+1) (t/2)^-lambda J_lambda(t), lambda > -1.
double omega(double lambda, double t);

/// Omega_{n+1/2}(t) in elementary terms, n >= -1.
double omega_half_integer(int n, double t);

/// K_alpha(z) from the exponential-weight Schlafli integral, alpha > -1/2, z > 0.
double bessel_k(double alpha, double z);

/// 1F2(a; b1, b2; -x^2/4). Chooses the direct series or the large-argument
/// expansion and records which in `regime`.
SeriesEvaluation hyp1f2(double a, double b1, double b2, double x);

/// Branches of hyp1f2, exposed for seam and oracle checks.
SeriesEvaluation hyp1f2_series(double a, double b1, double b2, double x);
SeriesEvaluation hyp1f2_asymptotic(double a, double b1, double b2, double x);

/// x beyond which hyp1f2 uses the asymptotic branch.
double hyp1f2_switch_point(double a, double b1, double b2);

/// 2F3(a1, a2; b1, b2, b3; -x^2/4) by direct series.
SeriesEvaluation hyp2f3(double a1, double a2, double b1, double b2, double b3, double x);

/// Two-term large-|x| form of U(rho, nu; x) for rho != 1.
SeriesEvaluation u_asymptotic(UFunctionParams params, double x);

}  // namespace cskern
