#include <doctest.h>

#include <cmath>
#include <numeric>

#include "cskern/quadrature.hpp"
#include "cskern/specfun.hpp"

using namespace cskern;

TEST_CASE("Gauss-Legendre weights and exactness") {
  for (int n : {1, 2, 5, 16, 64}) {
    const QuadratureRule r = gauss_legendre(n);
    REQUIRE(r.size() == static_cast<std::size_t>(n));
    CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    // Exact for polynomials of degree 2n - 1.
    for (int k = 0; k < 2 * n; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) sum += r.weights[i] * std::pow(r.nodes[i], k);
      const double want = (k % 2) ? 0.0 : 2.0 / (k + 1);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(std::abs(sum - want) <= 1e-13);
    }
  }
}

TEST_CASE("Gauss-Jacobi moments") {
  // Weight (1 - x)^a (1 + x)^b on [-1, 1].
  const double params[][2] = {{0.5, 0.0}, {2.0, 1.5}, {-0.5, -0.5}, {0.0, 3.25}, {-0.7, 1.2}};
  for (const auto& p : params) {
    const double a = p[0], b = p[1];
    const QuadratureRule r = gauss_jacobi(12, a, b);
    const double mass = std::pow(2.0, a + b + 1) * beta(a + 1, b + 1);
    CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(mass).epsilon(1e-13));
    // ∫ (1 + x)^k w = 2^{a+b+k+1} B(a+1, b+k+1)
    for (int k = 1; k < 24; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) sum += r.weights[i] * std::pow(1.0 + r.nodes[i], k);
      const double want = std::pow(2.0, a + b + k + 1) * beta(a + 1, b + k + 1);
      CAPTURE(a);
      CAPTURE(k);
      CHECK(std::abs(sum - want) <= 1e-12 * want);
    }
  }
  CHECK(&cached_jacobi(10, 0.5, 0.0) == &cached_jacobi(10, 0.5, 0.0));
}

TEST_CASE("panel and adaptive integration") {
  // ∫_0^1 x^{-1/2} cos x dx through the t^{-1/2} weight.
  const double v = integrate_panel([](double x) { return std::cos(x); }, 0.0, 1.0, -0.5, 0.0, 20);
  CHECK(v == doctest::Approx(1.8090484758005441).epsilon(1e-14));
  const double w = integrate_adaptive([](double x) { return std::exp(-x) * std::sin(10 * x); }, 0.0, 5.0, 1e-13, 0.0);
  const double want = (10.0 - std::exp(-5.0) * (std::sin(50.0) + 10 * std::cos(50.0))) / 101.0;
  CHECK(w == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("graded unit integration with a near-singular factor") {
  // ∫_0^1 x^{1/2} (1-x)^2 / (x + c) dx for small c, against adaptive on the smooth remainder.
  const double c = 1e-4;
  const double v = integrate_graded_unit([&](double x) { return 1.0 / (x + c); }, 0.5, 2.0, c);
  const double ref = integrate_adaptive(
      [&](double u) { return 2.0 * u * u * std::pow(1 - u * u, 2) / (u * u + c); }, 0.0, 1.0, 1e-14, 0.0);
  CHECK(v == doctest::Approx(ref).epsilon(1e-10));
}
