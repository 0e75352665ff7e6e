#pragma once

#include <Eigen/Core>

#include "cskern/closed_forms.hpp"
#include "cskern/kernel_spec.hpp"
#include "cskern/specfun.hpp"

namespace cskern {

/// Throws PARAMETER_OUT_OF_RANGE naming the violated inequality.
const KernelSpec& validate_spec(const KernelSpec& spec);

enum class ProfileMethod { Auto, ClosedForm, Quadrature };

/// Phi_{d,delta}(t), delta > d/2 (the family's own admissibility is checked
/// by validate_spec, not here). Zero for t >= 1.
double profile_phi(int d, double delta, double t, ProfileMethod method = ProfileMethod::Auto);

/// Psi_{d,delta}(t), delta > d/2.
double profile_psi(int d, double delta, double t, ProfileMethod method = ProfileMethod::Auto);

/// (1 - t)_+^alpha.
double profile_askey(double alpha, double t);

/// Phi and Psi through the integration-by-parts form, delta > (d+1)/2.
double profile_phi_by_parts(int d, double delta, double t);
double profile_psi_by_parts(int d, double delta, double t);

/// The factor V with Phi = (1-t)^{2 delta - (d+1)/2} V(t); Psi analog with
/// exponent 3 delta - (d+1)/2. Bounded above and below on [0, 1].
double reduced_phi(int d, double delta, double t);
double reduced_psi(int d, double delta, double t);

/// Parameters (a; b1, b2) of the 1F2 giving a family's spectral density.
struct Hyp1F2Params {
  double a, b1, b2;
};
Hyp1F2Params spectrum_parameters(const KernelSpec& spec);

double spectrum_w(double delta, double r);
double spectrum_q(double delta, double r);
double spectrum_lambda(int d, double alpha, double r);

/// Spectral density of any family (without the Fourier constant), with the
/// evaluation regime. The Bessel potential density is (1 + r^2)^-delta.
SeriesEvaluation spectrum(const KernelSpec& spec, double r);

/// Algebraic decay exponent p of the spectral density, S(r) ~ r^-p.
double spectrum_decay_exponent(const KernelSpec& spec);

/// gamma_{d,alpha}, zeta_{d,delta}, eta_{d,delta}, or 1 for the Bessel potential.
double fourier_constant(const KernelSpec& spec);

/// omega_{d,delta} and tau_{d,delta}.
double omega_constant(int d, double delta);
double tau_constant(int d, double delta);

enum class BesselRoute { Auto, Quadrature, FiniteSum };

/// G_delta at radius x. FiniteSum needs delta - (d+1)/2 a nonnegative integer.
/// x = 0 is allowed only for delta > d/2, where the limit is returned.
double bessel_potential_g(int d, double delta, double x, BesselRoute route = BesselRoute::Auto);

/// Radial profile of the spec at distance t (validate_spec is not repeated).
double profile(const KernelSpec& spec, double t);

/// Profile at |x - y|; throws DIMENSION_MISMATCH on length mismatch.
double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y);

enum class EvaluationMethod { ClosedForm, Quadrature };

/// Compact-side function of a validated spec.
class RadialProfile {
 public:
  explicit RadialProfile(const KernelSpec& spec);
  const KernelSpec& spec() const noexcept { return spec_; }
  double support_radius() const noexcept;
  EvaluationMethod evaluation_method() const noexcept { return method_; }
  double operator()(double t) const { return profile(spec_, t); }

 private:
  KernelSpec spec_;
  EvaluationMethod method_;
};

/// Fourier-side function of a validated spec.
class SpectralDensity {
 public:
  explicit SpectralDensity(const KernelSpec& spec);
  const KernelSpec& spec() const noexcept { return spec_; }
  double fourier_constant() const noexcept { return constant_; }
  double decay_exponent() const noexcept { return decay_; }
  /// Density without the Fourier constant; equals 1 at r = 0.
  double operator()(double r) const { return spectrum(spec_, r).value; }

 private:
  KernelSpec spec_;
  double constant_;
  double decay_;
};

}  // namespace cskern
