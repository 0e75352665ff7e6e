#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace cskern {

enum class RuleKind { Legendre, Jacobi };

/// Gaussian rule on (-1, 1). For Jacobi rules the weight is
/// (1 - x)^a_exp (1 + x)^b_exp and is *not* included in `weights`' integrand.
struct QuadratureRule {
  RuleKind kind = RuleKind::Legendre;
  double a_exp = 0.0;
  double b_exp = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Golub-Welsch on the Jacobi matrix. Requires a_exp, b_exp > -1.
QuadratureRule gauss_jacobi(int n, double a_exp, double b_exp);
QuadratureRule gauss_legendre(int n);

/// Thread-safe memoized rules; references stay valid for the program lifetime.
const QuadratureRule& cached_jacobi(int n, double a_exp, double b_exp);
inline const QuadratureRule& cached_legendre(int n) { return cached_jacobi(n, 0.0, 0.0); }

/// ∫_lo^hi (x - lo)^left_exp (hi - x)^right_exp g(x) dx with an n-point rule.
template <class F>
double integrate_panel(F&& g, double lo, double hi, double left_exp, double right_exp, int n) {
  const QuadratureRule& rule = cached_jacobi(n, right_exp, left_exp);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    sum += rule.weights[i] * g(lo + half * (1.0 + rule.nodes[i]));
  }
  double scale = half;
  if (left_exp != 0.0 || right_exp != 0.0) scale *= std::pow(half, left_exp + right_exp);
  return scale * sum;
}

/// Adaptive Gauss-Legendre: bisects any panel where the n- and 2n-point
/// estimates disagree by more than its share (by width) of
/// max(rel_tol * |whole-interval estimate|, abs_tol). Returns the refined sum.
template <class F>
double integrate_adaptive(F&& g, double lo, double hi, double rel_tol, double abs_tol,
                          int max_depth = 40, int n = 16) {
  struct Piece {
    double lo, hi;
    int depth;
  };
  const double scale = std::abs(integrate_panel(g, lo, hi, 0.0, 0.0, 2 * n));
  const double budget = std::max(rel_tol * scale, abs_tol);
  std::vector<Piece> stack{{lo, hi, 0}};
  double total = 0.0;
  while (!stack.empty()) {
    Piece p = stack.back();
    stack.pop_back();
    double coarse = integrate_panel(g, p.lo, p.hi, 0.0, 0.0, n);
    double fine = integrate_panel(g, p.lo, p.hi, 0.0, 0.0, 2 * n);
    double width = (p.hi - p.lo) / (hi - lo);
    // The second bound is a roundoff floor; below it bisection cannot help.
    if (std::abs(fine - coarse) <= std::max(budget * width, 1e-14 * std::abs(fine)) || p.depth >= max_depth) {
      total += fine;
    } else {
      double mid = 0.5 * (p.lo + p.hi);
      stack.push_back({p.lo, mid, p.depth + 1});
      stack.push_back({mid, p.hi, p.depth + 1});
    }
  }
  return total;
}

/// ∫_0^1 θ^p (1-θ)^q h(θ) dθ where h is analytic on [0, 1] but may have a
/// singularity at θ = -c just outside it. Panels grow geometrically from
/// width c so each sees the singularity at a distance comparable to its size.
/// c <= 0 means h has no nearby singularity.
template <class H>
double integrate_graded_unit(H&& h, double p, double q, double c, int n = 20) {
  auto left_weighted = [&](double x) { return h(x) * std::pow(1.0 - x, q); };
  auto right_weighted = [&](double x) { return h(x) * std::pow(x, p); };
  if (!(c > 0.0) || c >= 0.25) {
    return integrate_panel(left_weighted, 0.0, 0.5, p, 0.0, n) +
           integrate_panel(right_weighted, 0.5, 1.0, 0.0, q, n);
  }
  double sum = integrate_panel(left_weighted, 0.0, c, p, 0.0, n);
  double x0 = c;
  auto interior = [&](double x) { return h(x) * std::pow(x, p) * std::pow(1.0 - x, q); };
  while (2.0 * x0 < 0.5) {
    sum += integrate_panel(interior, x0, 2.0 * x0, 0.0, 0.0, n);
    x0 *= 2.0;
  }
  return sum + integrate_panel(right_weighted, x0, 1.0, 0.0, q, n);
}

}  // namespace cskern
