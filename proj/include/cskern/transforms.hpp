#pragma once

#include <functional>

#include "cskern/kernel_spec.hpp"

namespace cskern {

/// f(t) = t^left (1 - t)^right smooth(t) on [0, 1], zero elsewhere. The
/// exponents are handed to Gauss-Jacobi rules; `smooth` should be regular on
/// [0, 1] up to mild non-analytic terms at t = 0.
struct Profile {
  std::function<double(double)> smooth;
  double left_exponent = 0.0;
  double right_exponent = 0.0;

  double operator()(double t) const;
};

/// Compact-support profile of a validated spec with its boundary exponent
/// factored out.
Profile profile_of(const KernelSpec& spec);

/// (1-t)^{alpha-1} t^{beta-1} / B(alpha, beta), or with squared_argument
/// 2 (1-t^2)^{alpha-1} t^{2 beta-1} / B(alpha, beta).
struct BinomialDensity {
  double alpha;
  double beta;
  bool squared_argument;

  double operator()(double t) const;
  Profile as_profile() const;
};

struct OscillatoryIntegralConfig {
  /// Panel length in r is panel_length_factor * pi / t.
  double panel_length_factor = 1.0;
  double tail_tolerance = 1e-6;
  int max_panels = 2000;
  /// Gauss-Legendre nodes per sub-panel; sub-panels are at most pi long in r.
  int nodes_per_panel = 24;
};

/// Spectral-side function with its known algebraic decay exponent p, phi(r) ~ r^-p.
struct SpectralFunction {
  std::function<double(double)> value;
  double decay_exponent;
};

/// ∫_0^1 Omega_lambda(r t) f(t) dt, lambda >= -1/2.
double hankel_schoenberg(double lambda, const Profile& f, double r);

/// (2 pi^{d/2} / Gamma(d/2)) ∫_0^1 Omega_{(d-2)/2}(r t) f(t) t^{d-1} dt.
double radial_fourier(int d, const Profile& f, double r);

/// t^{2 lambda+1} / (4^lambda Gamma(lambda+1)^2) ∫_0^∞ Omega_lambda(r t) phi(r) r^{2 lambda+1} dr.
/// Throws DECAY_TOO_SLOW unless phi decays faster than r^{-(2 lambda + 2)}.
double inverse_transform(double lambda, const SpectralFunction& phi, double t,
                         const OscillatoryIntegralConfig& config = {});

/// Radial Fourier inversion for a profile f with phi(r) = ∫ Omega_{(d-2)/2}(rt) f(t) t^{d-1} dt:
/// returns f(t). t = 0 is taken as a limit.
double inverse_radial(int d, const SpectralFunction& phi, double t,
                      const OscillatoryIntegralConfig& config = {});

/// I_lambda(f)(t) = 2/B(lambda+1-d/2, d/2) ∫_t^1 (s^2-t^2)^{lambda-d/2} s^{-2 lambda} f(s) ds,
/// lambda > d/2 - 1.
Profile order_walk(double lambda, int d, const Profile& f);

/// Omega_lambda(t) from its cosine integral over (1 - s^2)^{lambda - 1/2}, lambda > -1/2.
double poisson_omega(double lambda, double t);

}  // namespace cskern
