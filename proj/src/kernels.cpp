#include "cskern/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "cskern/error.hpp"
#include "cskern/quadrature.hpp"

namespace cskern {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void out_of_range(const KernelSpec& spec, const std::string& inequality) {
  std::ostringstream msg;
  msg << to_string(spec.family) << " with d=" << spec.dimension << ", order=" << spec.order
      << " violates " << inequality;
  throw KernelError(ErrorCode::ParameterOutOfRange, msg.str());
}

void require_above_half_dimension(int d, double delta) {
  if (d < 1) throw KernelError(ErrorCode::ParameterOutOfRange, "dimension must be >= 1");
  if (!(delta > 0.5 * d))
    throw KernelError(ErrorCode::ParameterOutOfRange,
                      "profile requires delta > d/2 (d=" + std::to_string(d) + ", delta=" +
                          std::to_string(delta) + ")");
}

bool is_nonnegative_integer(double x) { return x >= 0.0 && x == std::floor(x); }

// (1/norm) ∫_0^1 θ^p (1-θ)^q [2t + θ(1-t)]^m [t + θ(1-t)]^extra dθ, the profile
// integral after s = θ + (1-θ)t with the power of (1-t) removed.
double reduced_integral(double p, double q, double m, int extra, double log_norm, double t) {
  const double norm = std::exp(-log_norm);
  if (t == 0.0) {
    // The brackets reduce to θ^m θ^extra and merge with the weight.
    return std::exp(std::lgamma(p + m + extra + 1.0) + std::lgamma(q + 1.0) -
                    std::lgamma(p + m + extra + q + 2.0)) * norm;
  }
  const double omt = 1.0 - t;
  auto h = [=](double theta) {
    double v = std::pow(2.0 * t + theta * omt, m);
    if (extra) v *= t + theta * omt;
    return v;
  };
  if (is_nonnegative_integer(m)) {
    // Polynomial integrand: one Jacobi rule is exact.
    return integrate_panel(h, 0.0, 1.0, p, q, 24) * norm;
  }
  return integrate_graded_unit(h, p, q, 2.0 * t / omt, 20) * norm;
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double profile_from_reduced(double outer_power, double t, double reduced) {
  return std::pow(1.0 - t, outer_power) * reduced;
}

}  // namespace

const char* to_string(Family family) noexcept {
  switch (family) {
    case Family::Askey: return "ASKEY";
    case Family::WendlandType: return "WENDLAND_TYPE";
    case Family::Smooth: return "SMOOTH";
    case Family::BesselPotential: return "BESSEL_POTENTIAL";
  }
  return "UNKNOWN";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  if (name == "askey") return Family::Askey;
  if (name == "wendland") return Family::WendlandType;
  if (name == "smooth") return Family::Smooth;
  if (name == "bessel") return Family::BesselPotential;
  return std::nullopt;
}

const KernelSpec& validate_spec(const KernelSpec& spec) {
  const int d = spec.dimension;
  const double v = spec.order;
  if (d < 1) out_of_range(spec, "d >= 1");
  if (!std::isfinite(v)) out_of_range(spec, "finite order");
  switch (spec.family) {
    case Family::Askey:
      if (d == 1 && !(v >= 2.0)) out_of_range(spec, "alpha >= 2 (d = 1)");
      if (d >= 2 && !(v >= 0.5 * (d + 1))) out_of_range(spec, "alpha >= (d+1)/2");
      break;
    case Family::WendlandType:
      if (!(v > 1.0)) out_of_range(spec, "delta > 1");
      if (!(v > 0.5 * d)) out_of_range(spec, "delta > d/2");
      break;
    case Family::Smooth:
    case Family::BesselPotential:
      if (!(v > 0.5 * d)) out_of_range(spec, "delta > d/2");
      break;
  }
  return spec;
}

double reduced_phi(int d, double delta, double t) {
  require_above_half_dimension(d, delta);
  const double e = delta - 0.5 * (d + 1);
  return reduced_integral(e, delta - 1.0, e, 0, log_beta(2.0 * delta - d, delta), std::clamp(t, 0.0, 1.0));
}

double reduced_psi(int d, double delta, double t) {
  require_above_half_dimension(d, delta);
  const double e = delta - 0.5 * (d + 1);
  return reduced_integral(e, 2.0 * delta - 1.0, e, 0, log_beta(2.0 * delta - d, 2.0 * delta),
                          std::clamp(t, 0.0, 1.0));
}

double profile_phi(int d, double delta, double t, ProfileMethod method) {
  require_above_half_dimension(d, delta);
  t = std::abs(t);
  if (t >= 1.0) return 0.0;
  if (method != ProfileMethod::Quadrature) {
    if (auto v = closed_form({Family::WendlandType, d, delta}, Side::Profile, t)) return *v;
    if (method == ProfileMethod::ClosedForm)
      throw KernelError(ErrorCode::DomainError, "no registered closed form for this profile");
  }
  return profile_from_reduced(2.0 * delta - 0.5 * (d + 1), t, reduced_phi(d, delta, t));
}

double profile_psi(int d, double delta, double t, ProfileMethod method) {
  require_above_half_dimension(d, delta);
  t = std::abs(t);
  if (t >= 1.0) return 0.0;
  if (method != ProfileMethod::Quadrature) {
    if (auto v = closed_form({Family::Smooth, d, delta}, Side::Profile, t)) return *v;
    if (method == ProfileMethod::ClosedForm)
      throw KernelError(ErrorCode::DomainError, "no registered closed form for this profile");
  }
  return profile_from_reduced(3.0 * delta - 0.5 * (d + 1), t, reduced_psi(d, delta, t));
}

double profile_askey(double alpha, double t) {
  if (!(alpha > 0.0)) throw KernelError(ErrorCode::DomainError, "Askey profile requires alpha > 0");
  t = std::abs(t);
  return t < 1.0 ? std::pow(1.0 - t, alpha) : 0.0;
}

double profile_phi_by_parts(int d, double delta, double t) {
  if (!(delta > 0.5 * (d + 1)))
    throw KernelError(ErrorCode::ParameterOutOfRange, "integration-by-parts form requires delta > (d+1)/2");
  t = std::abs(t);
  if (t >= 1.0) return 0.0;
  const double e = delta - 0.5 * (d + 1);
  const double reduced =
      reduced_integral(e - 1.0, delta, e - 1.0, 1, log_beta(2.0 * delta - d - 1.0, delta + 1.0), t);
  return profile_from_reduced(2.0 * delta - 0.5 * (d + 1), t, reduced);
}

double profile_psi_by_parts(int d, double delta, double t) {
  if (!(delta > 0.5 * (d + 1)))
    throw KernelError(ErrorCode::ParameterOutOfRange, "integration-by-parts form requires delta > (d+1)/2");
  t = std::abs(t);
  if (t >= 1.0) return 0.0;
  const double e = delta - 0.5 * (d + 1);
  const double reduced = reduced_integral(e - 1.0, 2.0 * delta, e - 1.0, 1,
                                          log_beta(2.0 * delta - d - 1.0, 2.0 * delta + 1.0), t);
  return profile_from_reduced(3.0 * delta - 0.5 * (d + 1), t, reduced);
}

Hyp1F2Params spectrum_parameters(const KernelSpec& spec) {
  const double d = spec.dimension, v = spec.order;
  switch (spec.family) {
    case Family::Askey: return {0.5 * (d + 1.0), 0.5 * (d + v + 1.0), 0.5 * (d + v + 2.0)};
    case Family::WendlandType: return {v, 1.5 * v, 1.5 * v + 0.5};
    case Family::Smooth: return {v, 2.0 * v, 2.0 * v + 0.5};
    case Family::BesselPotential: break;
  }
  throw KernelError(ErrorCode::DomainError, "the Bessel potential density is not a 1F2");
}

SeriesEvaluation spectrum(const KernelSpec& spec, double r) {
  r = std::abs(r);
  if (spec.family == Family::BesselPotential)
    return {std::exp(-spec.order * std::log1p(r * r)), 1, 0.0, Regime::ClosedForm};
  const Hyp1F2Params p = spectrum_parameters(spec);
  return hyp1f2(p.a, p.b1, p.b2, r);
}

double spectrum_w(double delta, double r) {
  if (!(delta > 1.0)) throw KernelError(ErrorCode::ParameterOutOfRange, "W_delta requires delta > 1");
  return spectrum({Family::WendlandType, 1, delta}, r).value;
}

double spectrum_q(double delta, double r) {
  if (!(delta > 0.0)) throw KernelError(ErrorCode::ParameterOutOfRange, "Q_delta requires delta > 0");
  return spectrum({Family::Smooth, 1, delta}, r).value;
}

double spectrum_lambda(int d, double alpha, double r) {
  const KernelSpec spec{Family::Askey, d, alpha};
  validate_spec(spec);
  return spectrum(spec, r).value;
}

double spectrum_decay_exponent(const KernelSpec& spec) {
  if (spec.family == Family::Askey) return spec.dimension + 1.0;
  return 2.0 * spec.order;
}

double omega_constant(int d, double delta) {
  return std::exp((1.0 - d) * std::log(2.0) + std::lgamma(3.0 * delta) + std::lgamma(delta - 0.5 * d) -
                  std::lgamma(delta) - std::lgamma(3.0 * delta - d) - std::lgamma(0.5 * d));
}

double tau_constant(int d, double delta) {
  return std::exp((1.0 - d) * std::log(2.0) + std::lgamma(4.0 * delta) + std::lgamma(delta - 0.5 * d) -
                  std::lgamma(delta) - std::lgamma(4.0 * delta - d) - std::lgamma(0.5 * d));
}

double fourier_constant(const KernelSpec& spec) {
  validate_spec(spec);
  const int d = spec.dimension;
  const double v = spec.order;
  const double sphere = 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
  switch (spec.family) {
    case Family::Askey:
      return std::exp(d * std::log(2.0) + 0.5 * (d - 1) * std::log(kPi) + std::lgamma(v + 1.0) +
                      std::lgamma(0.5 * (d + 1)) - std::lgamma(v + d + 1.0));
    case Family::WendlandType: return sphere / omega_constant(d, v);
    case Family::Smooth: return sphere / tau_constant(d, v);
    case Family::BesselPotential: return 1.0;
  }
  return 1.0;
}

double bessel_potential_g(int d, double delta, double x, BesselRoute route) {
  if (d < 1 || !(delta > 0.0)) throw KernelError(ErrorCode::DomainError, "G_delta requires d >= 1, delta > 0");
  x = std::abs(x);
  const double nu = delta - 0.5 * d;
  if (x == 0.0) {
    if (!(nu > 0.0)) throw KernelError(ErrorCode::DomainError, "G_delta is singular at 0 for delta <= d/2");
    return std::exp(std::lgamma(nu) - d * std::log(2.0) - 0.5 * d * std::log(kPi) - std::lgamma(delta));
  }
  const double m = delta - 0.5 * (d + 1);
  const bool finite_sum_ok = is_nonnegative_integer(m);
  if (route == BesselRoute::FiniteSum && !finite_sum_ok)
    throw KernelError(ErrorCode::DomainError, "finite-sum route needs delta - (d+1)/2 a nonnegative integer");
  if (route == BesselRoute::FiniteSum || (route == BesselRoute::Auto && finite_sum_ok)) {
    const int mi = static_cast<int>(m);
    double sum = 0.0, coef = 1.0;  // coef = (m+k)! / (k! (m-k)!)
    for (int k = 0; k <= mi; ++k) {
      sum += coef * std::pow(2.0 * x, -k);
      coef *= static_cast<double>((mi + k + 1) * (mi - k)) / (k + 1.0);
    }
    const double log_norm = (mi + d) * std::log(2.0) + 0.5 * (d - 1) * std::log(kPi) + std::lgamma(delta);
    return std::exp(-x + mi * std::log(x) - log_norm) * sum;
  }
  const double log_norm = (delta - 1.0 + 0.5 * d) * std::log(2.0) + 0.5 * d * std::log(kPi) + std::lgamma(delta);
  return bessel_k(std::abs(nu), x) * std::exp(nu * std::log(x) - log_norm);
}

double profile(const KernelSpec& spec, double t) {
  switch (spec.family) {
    case Family::Askey: return profile_askey(spec.order, t);
    case Family::WendlandType: return profile_phi(spec.dimension, spec.order, t);
    case Family::Smooth: return profile_psi(spec.dimension, spec.order, t);
    case Family::BesselPotential: return bessel_potential_g(spec.dimension, spec.order, t);
  }
  return 0.0;
}

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != spec.dimension || y.size() != spec.dimension)
    throw KernelError(ErrorCode::DimensionMismatch, "point length does not match kernel dimension");
  return profile(spec, (x - y).norm());
}

RadialProfile::RadialProfile(const KernelSpec& spec) : spec_(validate_spec(spec)) {
  bool closed = false;
  if (spec.family == Family::BesselPotential) {
    closed = is_nonnegative_integer(spec.order - 0.5 * (spec.dimension + 1));
  } else {
    closed = find_closed_form(spec, Side::Profile).has_value();
  }
  method_ = closed ? EvaluationMethod::ClosedForm : EvaluationMethod::Quadrature;
}

double RadialProfile::support_radius() const noexcept {
  return is_compact(spec_.family) ? 1.0 : INFINITY;
}

SpectralDensity::SpectralDensity(const KernelSpec& spec)
    : spec_(validate_spec(spec)),
      constant_(cskern::fourier_constant(spec)),
      decay_(spectrum_decay_exponent(spec)) {}

}  // namespace cskern
