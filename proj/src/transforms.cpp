#include "cskern/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "cskern/error.hpp"
#include "cskern/kernels.hpp"
#include "cskern/quadrature.hpp"
#include "cskern/specfun.hpp"

namespace cskern {

namespace {

constexpr double kPi = std::numbers::pi;

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// ∫_0^1 g(t) t^a (1-t)^b dt on panels of width <= w, graded geometrically
// towards t = 0 deep enough to absorb a log or fractional-power term there.
// Also returns ∫|g| t^a (1-t)^b in `mass`.
template <class G>
double composite_unit(G&& g, double a, double b, double w, int n, double& mass) {
  constexpr int kGrading = 40;
  w = std::min(0.25, w);
  double sum = 0.0;
  mass = 0.0;
  // Panel [lo, hi] with Jacobi exponents (el, er) on its own ends; `outer`
  // supplies whatever part of t^a (1-t)^b the rule does not carry.
  auto panel = [&](double lo, double hi, double el, double er, auto outer) {
    const QuadratureRule& rule = cached_jacobi(n, er, el);
    const double half = 0.5 * (hi - lo);
    double s = 0.0, m = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double t = lo + half * (1.0 + rule.nodes[i]);
      const double v = rule.weights[i] * g(t) * outer(t);
      s += v;
      m += std::abs(v);
    }
    const double scale = half * std::pow(half, el + er);
    sum += scale * s;
    mass += scale * m;
  };
  auto full = [&](double t) { return std::pow(t, a) * std::pow(1.0 - t, b); };

  const double lo = w * std::ldexp(1.0, -kGrading);
  panel(0.0, lo, a, 0.0, [&](double t) { return std::pow(1.0 - t, b); });
  for (int k = kGrading; k > 0; --k) {
    const double x0 = w * std::ldexp(1.0, -k);
    panel(x0, 2.0 * x0, 0.0, 0.0, full);
  }
  const double interior = 1.0 - 2.0 * w;
  const int m = std::max(0, static_cast<int>(std::ceil(interior / w - 1e-12)));
  const double h = m > 0 ? interior / m : 0.0;
  for (int k = 0; k < m; ++k) panel(w + k * h, w + (k + 1) * h, 0.0, 0.0, full);
  panel(1.0 - w, 1.0, 0.0, b, [&](double t) { return std::pow(t, a); });
  return sum;
}

// c ∫_0^∞ Omega_lambda(r t) phi(r) r^{2 lambda + 1} dr with c = 1 / (4^lambda Gamma(lambda+1)^2).
double hankel_watson_integral(double lambda, const SpectralFunction& phi, double t,
                              const OscillatoryIntegralConfig& config) {
  const double p = phi.decay_exponent;
  if (!(p > 2.0 * lambda + 2.0))
    throw KernelError(ErrorCode::DecayTooSlow,
                      "inverse transform needs decay exponent > 2 lambda + 2");
  if (!(config.tail_tolerance > 0.0) || config.max_panels < 10)
    throw KernelError(ErrorCode::DomainError, "invalid oscillatory integral configuration");
  const double scale = std::exp(-lambda * std::log(4.0) - 2.0 * std::lgamma(lambda + 1.0));
  const double power = 2.0 * lambda + 1.0;
  const int n = config.nodes_per_panel;

  const double period = config.panel_length_factor * kPi / t;
  const int sub = std::max(1, static_cast<int>(std::ceil(period / kPi - 1e-12)));
  const double h = period / sub;
  auto body = [&](double r) { return omega(lambda, r * t) * phi.value(r); };
  auto full = [&](double r) { return body(r) * std::pow(r, power); };

  // Without cancellation the tail beyond R is ~ R^{lambda + 3/2 - p}; march at
  // least until that crude bound is below tolerance before trusting convergence.
  const double excess = p - lambda - 1.5;
  double r_min = 60.0;
  if (excess > 0.0) r_min = std::max(r_min, std::pow(config.tail_tolerance, -1.0 / excess));
  r_min = std::min(r_min, 5000.0);

  constexpr int kEulerDepth = 10;
  std::deque<double> partial;
  std::deque<double> estimates;
  double total = 0.0;
  for (int k = 0; k < config.max_panels; ++k) {
    double panel = 0.0;
    for (int j = 0; j < sub; ++j) {
      const double r0 = k * period + j * h, r1 = r0 + h;
      if (k == 0 && j == 0)
        panel += integrate_panel(body, r0, r1, power, 0.0, n);
      else
        panel += integrate_panel(full, r0, r1, 0.0, 0.0, n);
    }
    total += panel;
    partial.push_back(total);
    if (partial.size() > kEulerDepth + 1) partial.pop_front();
    if (partial.size() < kEulerDepth + 1) continue;

    // Iterated averaging of partial sums (Euler transform of the panel series).
    std::vector<double> avg(partial.begin(), partial.end());
    for (int level = 0; level < kEulerDepth; ++level)
      for (std::size_t i = 0; i + 1 < avg.size() - level; ++i) avg[i] = 0.5 * (avg[i] + avg[i + 1]);
    estimates.push_back(scale * avg[0]);
    if (estimates.size() > 3) estimates.pop_front();

    const double reached = (k + 1) * period;
    if (estimates.size() == 3 && reached >= r_min) {
      const double e0 = estimates[0], e1 = estimates[1], e2 = estimates[2];
      if (std::abs(e2 - e1) <= config.tail_tolerance && std::abs(e1 - e0) <= config.tail_tolerance)
        return e2;
    }
  }
  throw KernelError(ErrorCode::QuadratureNonconvergence,
                    "inverse transform did not settle within max_panels");
}

}  // namespace

double Profile::operator()(double t) const {
  t = std::abs(t);
  if (t >= 1.0) return 0.0;
  double v = smooth(t);
  if (left_exponent != 0.0) v *= std::pow(t, left_exponent);
  if (right_exponent != 0.0) v *= std::pow(1.0 - t, right_exponent);
  return v;
}

Profile profile_of(const KernelSpec& spec) {
  validate_spec(spec);
  const int d = spec.dimension;
  const double v = spec.order;
  switch (spec.family) {
    case Family::Askey: return {[](double) { return 1.0; }, 0.0, v};
    case Family::WendlandType:
      return {[d, v](double t) { return reduced_phi(d, v, t); }, 0.0, 2.0 * v - 0.5 * (d + 1)};
    case Family::Smooth:
      return {[d, v](double t) { return reduced_psi(d, v, t); }, 0.0, 3.0 * v - 0.5 * (d + 1)};
    case Family::BesselPotential: break;
  }
  throw KernelError(ErrorCode::DomainError, "the Bessel potential kernel has no compact profile");
}

double BinomialDensity::operator()(double t) const { return as_profile()(t); }

Profile BinomialDensity::as_profile() const {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw KernelError(ErrorCode::DomainError, "binomial density needs alpha, beta > 0");
  const double norm = std::exp(-log_beta(alpha, beta));
  if (squared_argument) {
    const double a = alpha;
    return {[a, norm](double t) { return 2.0 * norm * std::pow(1.0 + t, a - 1.0); }, 2.0 * beta - 1.0,
            alpha - 1.0};
  }
  return {[norm](double) { return norm; }, beta - 1.0, alpha - 1.0};
}

double hankel_schoenberg(double lambda, const Profile& f, double r) {
  if (!(lambda >= -0.5)) throw KernelError(ErrorCode::DomainError, "hankel_schoenberg requires lambda >= -1/2");
  r = std::abs(r);
  auto g = [&](double t) { return omega(lambda, r * t) * f.smooth(t); };
  double w = r > 16.0 ? 4.0 / r : 0.25;
  for (int attempt = 0; attempt < 4; ++attempt, w *= 0.5) {
    double mass = 0.0, mass_fine = 0.0;
    const double coarse = composite_unit(g, f.left_exponent, f.right_exponent, w, 24, mass);
    const double fine = composite_unit(g, f.left_exponent, f.right_exponent, w, 32, mass_fine);
    if (std::abs(fine - coarse) <= 1e-13 * mass_fine + 1e-11 * std::abs(fine)) return fine;
  }
  throw KernelError(ErrorCode::QuadratureNonconvergence, "Hankel-Schoenberg panels did not converge");
}

double radial_fourier(int d, const Profile& f, double r) {
  if (d < 1) throw KernelError(ErrorCode::DomainError, "dimension must be >= 1");
  Profile weighted{f.smooth, f.left_exponent + d - 1.0, f.right_exponent};
  const double sphere = 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
  return sphere * hankel_schoenberg(0.5 * (d - 2), weighted, r);
}

double inverse_transform(double lambda, const SpectralFunction& phi, double t,
                         const OscillatoryIntegralConfig& config) {
  if (!(lambda >= -0.5)) throw KernelError(ErrorCode::DomainError, "inverse_transform requires lambda >= -1/2");
  t = std::abs(t);
  if (t == 0.0) {
    return 2.0 * inverse_transform(lambda, phi, 1e-3, config) - inverse_transform(lambda, phi, 2e-3, config);
  }
  return std::pow(t, 2.0 * lambda + 1.0) * hankel_watson_integral(lambda, phi, t, config);
}

double inverse_radial(int d, const SpectralFunction& phi, double t, const OscillatoryIntegralConfig& config) {
  if (d < 1) throw KernelError(ErrorCode::DomainError, "dimension must be >= 1");
  t = std::abs(t);
  const double lambda = 0.5 * (d - 2);
  if (t == 0.0) {
    // The inversion holds for t > 0; extend by continuity.
    return 2.0 * hankel_watson_integral(lambda, phi, 1e-3, config) -
           hankel_watson_integral(lambda, phi, 2e-3, config);
  }
  return hankel_watson_integral(lambda, phi, t, config);
}

Profile order_walk(double lambda, int d, const Profile& f) {
  if (d < 1) throw KernelError(ErrorCode::ParameterOutOfRange, "dimension must be >= 1");
  if (!(lambda > 0.5 * d - 1.0))
    throw KernelError(ErrorCode::ParameterOutOfRange, "order walk requires lambda > d/2 - 1");
  const double mu = lambda - 0.5 * d;
  const double a = f.left_exponent, b = f.right_exponent;
  const double norm = 2.0 * std::exp(-log_beta(lambda + 1.0 - 0.5 * d, 0.5 * d));
  const double left = std::min(0.0, a + 1.0 - d);
  const double right = mu + b + 1.0;
  auto smooth = [=, g = f.smooth](double t) -> double {
    if (t <= 0.0) {
      if (left < 0.0) t = 1e-12;
      else return norm * integrate_panel(g, 0.0, 1.0, a - d, b, 24);
    }
    if (t >= 1.0) t = 1.0 - 1e-15;
    const double omt = 1.0 - t;
    // After s = t + (1-t)θ: (s^2-t^2)^mu = (1-t)^mu θ^mu (2t + (1-t)θ)^mu.
    auto h = [=](double theta) {
      const double s = t + omt * theta;
      return std::pow(2.0 * t + omt * theta, mu) * std::pow(s, a - 2.0 * lambda) * g(s);
    };
    const double integral = integrate_graded_unit(h, mu, b, t / omt, 20);
    return norm * integral * std::pow(t, -left);
  };
  return {smooth, left, right};
}

double poisson_omega(double lambda, double t) {
  if (!(lambda > -0.5)) throw KernelError(ErrorCode::DomainError, "poisson_omega requires lambda > -1/2");
  t = std::abs(t);
  if (t == 0.0) return 1.0;
  int n = 40 + static_cast<int>(std::ceil(t));
  n = std::min(4000, 16 * ((n + 15) / 16));
  const QuadratureRule& rule = cached_jacobi(n, lambda - 0.5, lambda - 0.5);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::cos(t * rule.nodes[i]);
  return sum * std::exp(-log_beta(lambda + 0.5, 0.5));
}

}  // namespace cskern
