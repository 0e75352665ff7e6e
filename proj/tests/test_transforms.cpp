#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cskern/error.hpp"
#include "cskern/kernels.hpp"
#include "cskern/quadrature.hpp"
#include "cskern/specfun.hpp"
#include "cskern/transforms.hpp"

using namespace cskern;

namespace {

constexpr double kPi = std::numbers::pi;

double sphere(int d) { return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d); }

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("binomial densities have unit mass") {
  for (bool squared : {false, true})
    for (auto [a, b] : {std::pair{1.0, 1.0}, {2.5, 0.5}, {0.75, 3.0}, {4.0, 2.25}}) {
      const BinomialDensity f{a, b, squared};
      CAPTURE(squared);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(std::abs(hankel_schoenberg(0.3, f.as_profile(), 0.0) - 1.0) <= 1e-10);
      const Profile p = f.as_profile();
      for (double t : {0.1, 0.5, 0.8}) CHECK(p(t) == doctest::Approx(f(t)).epsilon(1e-13));
    }
  // Independent of the library's own rule selection.
  const BinomialDensity g{2.0, 3.0, false};
  CHECK(integrate_adaptive([&](double t) { return g(t); }, 0.0, 1.0, 1e-14, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hankel_schoenberg of binomial densities is hypergeometric") {
  const BinomialDensity sq{2.0, 1.5, true};
  const BinomialDensity lin{2.0, 1.5, false};
  const double lambda = 0.5;
  for (double r : {0.5, 3.0, 30.0, 120.0}) {
    CAPTURE(r);
    CHECK(rel(hankel_schoenberg(lambda, sq.as_profile(), r), hyp1f2(1.5, 3.5, lambda + 1, r).value) <= 1e-8);
  }
  for (double r : {0.5, 3.0, 8.0}) {
    const double want = hyp2f3(0.75, 1.25, 1.75, 2.25, lambda + 1, r).value;
    CHECK(rel(hankel_schoenberg(lambda, lin.as_profile(), r), want) <= 1e-8);
  }
}

TEST_CASE("radial_fourier examples") {
  const Profile a2 = profile_of({Family::Askey, 1, 2.0});
  for (double r : {0.1, 1.0, 7.0, 60.0, 400.0}) {
    const double want = 4.0 / (r * r) * (1.0 - std::sin(r) / r);
    CAPTURE(r);
    CHECK(std::abs(radial_fourier(1, a2, r) - want) <= 1e-10 * std::max(want, 1e-6));
  }
  CHECK(radial_fourier(1, a2, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  const KernelSpec w{Family::WendlandType, 2, 1.75};
  for (double r : {0.0, 2.0, 15.0}) {
    CHECK(rel(radial_fourier(2, profile_of(w), r), fourier_constant(w) * spectrum(w, r).value) <= 1e-6);
  }
}

TEST_CASE("poisson_omega examples") {
  CHECK(poisson_omega(0.5, 2.0) == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-10));
  CHECK(poisson_omega(1.2, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(poisson_omega(1.5, 7.0) - omega(1.5, 7.0)) <= 1e-9);
}

TEST_CASE("inverse_transform rejects slow decay") {
  const SpectralFunction slow{[](double r) { return 1.0 / (1.0 + r * r); }, 2.0};
  CHECK_THROWS_AS(inverse_transform(0.5, slow, 0.3), KernelError);
  bool threw = false;
  try {
    inverse_radial(3, slow, 0.3);
  } catch (const KernelError& e) {
    threw = e.code() == ErrorCode::DecayTooSlow;
  }
  CHECK(threw);
}

TEST_CASE("Askey spectra invert to truncated powers") {
  for (auto [d, alpha] : {std::pair{1, 2.0}, {3, 2.5}}) {
    const KernelSpec s{Family::Askey, d, alpha};
    const double c = fourier_constant(s) / sphere(d);
    const SpectralFunction phi{[=](double r) { return c * spectrum(s, r).value; }, spectrum_decay_exponent(s)};
    for (double t : {0.2, 0.5, 0.8}) {
      CAPTURE(d);
      CAPTURE(t);
      CHECK(std::abs(inverse_radial(d, phi, t) - std::pow(1 - t, alpha)) <= 1e-4);
    }
  }
}

TEST_CASE("smooth-family spectra invert to Psi") {
  const int d = 2;
  const double delta = 2.0;
  const SpectralFunction phi{[=](double r) { return spectrum_q(delta, r) / tau_constant(d, delta); }, 2 * delta};
  for (double t : {0.0, 0.3, 0.6}) {
    CAPTURE(t);
    CHECK(std::abs(inverse_radial(d, phi, t) - profile_psi(d, delta, t)) <= 1e-4);
  }
}

TEST_CASE("order_walk domain") {
  const Profile f{[](double) { return 1.0; }, 0.0, 1.0};
  CHECK_THROWS_AS(order_walk(0.4, 3, f), KernelError);
  CHECK_THROWS_AS(order_walk(-0.5, 1, f), KernelError);
  CHECK_NOTHROW(order_walk(0.6, 3, f));
}

TEST_CASE("order_walk of the Sonine density recovers Omega") {
  // 2/B(λ+1-d/2, d/2) ∫ Ω_{(d-2)/2}(rt) (1-t^2)^{λ-d/2} t^{d-1} dt = Ω_λ(r)
  for (auto [d, lambda] : {std::pair{1, 0.75}, {2, 1.5}, {3, 2.0}}) {
    const double e = lambda - 0.5 * d;
    const double norm = 2.0 / beta(lambda + 1 - 0.5 * d, 0.5 * d);
    const Profile g{[=](double t) { return norm * std::pow(1 + t, e); }, d - 1.0, e};
    for (double r : {0.5, 4.0, 25.0}) {
      CAPTURE(d);
      CAPTURE(r);
      CHECK(std::abs(hankel_schoenberg(0.5 * (d - 2), g, r) - omega(lambda, r)) <= 1e-8);
    }
  }
}

TEST_CASE("order_walk of (1-t)^{2δ-1} t^{2δ-1} is proportional to Psi") {
  for (auto [d, delta] : {std::pair{1, 1.5}, {2, 2.0}, {3, 2.5}}) {
    const Profile f{[](double) { return 1.0; }, 2 * delta - 1, 2 * delta - 1};
    const Profile g = order_walk(delta - 0.5, d, f);
    const double c = g(0.0) / profile_psi(d, delta, 0.0);
    CHECK(c > 0.0);
    for (double t : {0.1, 0.4, 0.7, 0.95}) {
      CAPTURE(d);
      CAPTURE(t);
      CHECK(std::abs(g(t) - c * profile_psi(d, delta, t)) <= 1e-9 * c);
    }
  }
}

TEST_CASE("order_walk is an L1 contraction") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 1 + trial % 3;
    const double lambda = 0.5 * d + (trial % 2 ? 1.0 : 0.25);
    const std::vector<double> c = {u(rng), u(rng), u(rng), u(rng), u(rng)};
    const bool positive = trial < 2;
    auto poly = [=](double t) {
      double s = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * t + *it;
      return positive ? 1.0 + s * s : s;
    };
    const Profile f{poly, 0.0, 1.0};
    const Profile g = order_walk(lambda, d, f);
    const double in = integrate_adaptive([&](double t) { return std::abs(f(t)); }, 0.0, 1.0, 1e-12, 0.0, 30);
    const double out = integrate_adaptive([&](double t) { return std::abs(g(t)) * std::pow(t, d - 1); }, 0.0, 1.0,
                                          1e-12, 0.0, 30);
    CAPTURE(trial);
    CHECK(out <= in * (1 + 1e-9));
    // Nonnegative inputs keep their mass exactly.
    if (positive) CHECK(out == doctest::Approx(in).epsilon(1e-8));
  }
}

TEST_CASE("order_walk realizes the dimension walk") {
  // With λ = (D-2)/2, F_D(f) = |S^{D-1}| / |S^{d-1}| F_d(I_λ(f t^{D-1})).
  const int d = 1, big = 3;
  const Profile f = profile_of({Family::WendlandType, 3, 2.0});
  const Profile g{f.smooth, f.left_exponent + big - 1, f.right_exponent};
  const Profile walked = order_walk(0.5 * (big - 2), d, g);
  for (double r : {0.5, 3.0, 12.0}) {
    const double lhs = radial_fourier(big, f, r);
    const double rhs = sphere(big) / sphere(d) * radial_fourier(d, walked, r);
    CAPTURE(r);
    CHECK(std::abs(lhs - rhs) <= 1e-6 * radial_fourier(big, f, 0.0));
  }
}
