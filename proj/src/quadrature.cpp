#include "cskern/quadrature.hpp"

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "cskern/error.hpp"

namespace cskern {

QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw KernelError(ErrorCode::DomainError, "quadrature rule needs n >= 1");
  if (!(a > -1.0) || !(b > -1.0))
    throw KernelError(ErrorCode::DomainError, "Jacobi exponents must exceed -1");

  // Monic Jacobi recurrence p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0) {
      diag(k) = (b - a) / (ab + 2.0);
    } else {
      diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    double beta;
    if (k == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(beta);
  }

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));

  QuadratureRule rule;
  rule.kind = (a == 0.0 && b == 0.0) ? RuleKind::Legendre : RuleKind::Jacobi;
  rule.a_exp = a;
  rule.b_exp = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw KernelError(ErrorCode::QuadratureNonconvergence, "Golub-Welsch eigensolve failed");
  const Eigen::VectorXd& x = solver.eigenvalues();
  const Eigen::MatrixXd& v = solver.eigenvectors();
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = x(i);
    rule.weights[i] = mu0 * v(0, i) * v(0, i);
  }
  return rule;
}

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

const QuadratureRule& cached_jacobi(int n, double a, double b) {
  using Key = std::tuple<int, double, double>;
  static std::mutex mutex;
  static std::map<Key, std::unique_ptr<QuadratureRule>> cache;
  // Per-thread index over the shared cache so hot loops never take the lock.
  thread_local std::map<Key, const QuadratureRule*> local;
  Key key{n, a, b};
  if (auto hit = local.find(key); hit != local.end()) return *hit->second;

  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<QuadratureRule>(gauss_jacobi(n, a, b))).first;
  }
  local.emplace(key, it->second.get());
  return *it->second;
}

}  // namespace cskern
