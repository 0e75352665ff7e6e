#include <doctest.h>

#include <Eigen/Cholesky>
#include <cmath>

#include "cskern/error.hpp"
#include "cskern/kernels.hpp"
#include "cskern/rkhs.hpp"

using namespace cskern;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const KernelError& e) {
    return e.code();
  }
  FAIL("expected a KernelError");
  return ErrorCode::IoError;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, i / (n - 1.0));
  return g;
}

}  // namespace

TEST_CASE("random_nodes is seeded and separated") {
  const NodeSet a = random_nodes(2, 50, 42), b = random_nodes(2, 50, 42), c = random_nodes(2, 50, 43);
  CHECK(a.dimension == 2);
  CHECK(a.size() == 50);
  CHECK(a.points == b.points);
  CHECK(a.points != c.points);
  CHECK(a.points.minCoeff() >= 0.0);
  CHECK(a.points.maxCoeff() <= 2.0);
  double closest = INFINITY;
  for (Eigen::Index j = 0; j < a.size(); ++j)
    for (Eigen::Index k = 0; k < j; ++k) closest = std::min(closest, (a.points.col(j) - a.points.col(k)).norm());
  CHECK(closest >= 1e-3);
  const NodeSet wide = random_nodes(1, 5, 1, -3.0, 3.0, 0.5);
  CHECK(wide.points.minCoeff() >= -3.0);
}

TEST_CASE("gram matrices") {
  const KernelSpec s{Family::WendlandType, 3, 2.0};
  const NodeSet n = random_nodes(3, 40, 5);
  const Eigen::MatrixXd g = gram(s, n);
  CHECK(g == g.transpose());
  CHECK((g.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-13);
  CHECK(g(3, 7) == doctest::Approx(kernel_eval(s, n.points.col(3), n.points.col(7))).epsilon(1e-15));

  NodeSet one{3, Eigen::MatrixXd::Zero(3, 1)};
  CHECK(gram(s, one).rows() == 1);
  CHECK(gram(s, one)(0, 0) == doctest::Approx(1.0));

  // Nodes at least one apart never see each other.
  NodeSet far{1, Eigen::RowVectorXd::LinSpaced(6, 0.0, 5.0)};
  CHECK(gram({Family::Askey, 1, 2.0}, far).isIdentity(1e-15));
}

TEST_CASE("factorize") {
  const KernelSpec s{Family::Smooth, 2, 2.5};
  const Eigen::MatrixXd g = gram(s, random_nodes(2, 60, 9));
  const GramFactorization f = factorize(g);
  const Eigen::MatrixXd& l = f.lower_factor;
  CHECK((l * l.transpose() - g).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(f.min_pivot() > 0.0);
  CHECK(f.log_determinant == doctest::Approx(2.0 * l.diagonal().array().log().sum()).epsilon(1e-12));
  CHECK(f.log_determinant <= 1e-12);  // det <= product of unit diagonals

  NodeSet dup{1, Eigen::RowVector3d(0.2, 0.5, 0.2)};
  CHECK(code_of([&] { factorize(gram({Family::WendlandType, 1, 2.0}, dup)); }) == ErrorCode::SingularGram);
  CHECK(code_of([&] { fit({Family::WendlandType, 1, 2.0}, dup, Eigen::Vector3d(1, 2, 3)); }) ==
        ErrorCode::SingularGram);
}

TEST_CASE("fit and evaluate") {
  const KernelSpec s{Family::WendlandType, 2, 2.0};
  const NodeSet n = random_nodes(2, 30, 3);
  const Interpolant zero = fit(s, n, Eigen::VectorXd::Zero(30));
  CHECK(zero.coefficients.isZero(0.0));

  Eigen::VectorXd hot = Eigen::VectorXd::Zero(30);
  hot(4) = 1.0;
  const Interpolant h = fit(s, n, hot);
  for (Eigen::Index j = 0; j < n.size(); ++j) CHECK(std::abs(eval_interpolant(h, n.points.col(j)) - hot(j)) <= 1e-10);

  Eigen::VectorXd values(30);
  for (Eigen::Index j = 0; j < 30; ++j) values(j) = std::sin(n.points.col(j).sum());
  const Interpolant p = fit(s, n, values);
  CHECK(p.relative_residual <= 1e-10);
  for (Eigen::Index j = 0; j < n.size(); ++j) CHECK(std::abs(eval_interpolant(p, n.points.col(j)) - values(j)) <= 1e-10);
  CHECK(eval_interpolant(p, Eigen::Vector2d(10.0, 10.0)) == 0.0);
  CHECK(code_of([&] { eval_interpolant(p, Eigen::Vector3d(0, 0, 0)); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { fit(s, n, Eigen::VectorXd::Zero(29)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("native inner products reproduce the kernel") {
  const KernelSpec w{Family::WendlandType, 1, 2.0};
  const TranslatedSpectrum k0 = kernel_translate_spectrum(w, 0.0);
  CHECK(native_inner_product_1d(w, k0, k0) == doctest::Approx(1.0).epsilon(1e-8));
  for (double h : {0.3, 0.9, 1.4}) {
    CAPTURE(h);
    const double v = native_inner_product_1d(w, k0, kernel_translate_spectrum(w, h));
    CHECK(std::abs(v - profile(w, h)) <= 1e-8);
  }

  // The Askey(1, 2) kernel through the generic path equals the explicit weight.
  const KernelSpec a{Family::Askey, 1, 2.0};
  const double h = 0.4;
  const double generic = native_inner_product_1d(a, kernel_translate_spectrum(a, 0.0), kernel_translate_spectrum(a, h));
  const double explicit_w = weighted_inner_product_1d({askey2_fourier, 2.0, 0.0, 1.0}, {askey2_fourier, 2.0, h, 1.0},
                                                      askey2_weight, 2.0);
  CHECK(generic == doctest::Approx(explicit_w).epsilon(1e-8));
  CHECK(explicit_w == doctest::Approx(0.36).epsilon(1e-8));
  CHECK(askey2_fourier(0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(askey2_fourier(2.0) == doctest::Approx(1.0 - std::sin(2.0) / 2.0).epsilon(1e-14));

  const TranslatedSpectrum slow{[](double xi) { return 1.0 / (1.0 + std::abs(xi)); }, 1.0};
  CHECK(code_of([&] { weighted_inner_product_1d(slow, slow, askey2_weight, 2.0); }) == ErrorCode::DecayTooSlow);
  CHECK(code_of([&] { native_inner_product_1d({Family::WendlandType, 2, 2.0}, k0, k0); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("Sobolev equivalence constants") {
  const std::vector<double> grid = log_grid(1e-2, 1e4, 400);
  const EquivalenceConstants w = sobolev_equivalence_check({Family::WendlandType, 1, 2.0}, grid);
  CHECK(w.c1 > 0.0);
  CHECK(w.c2 >= w.c1);
  CHECK(std::isfinite(w.c2 / w.c1));
  const EquivalenceConstants sm = sobolev_equivalence_check({Family::Smooth, 1, 0.75}, grid);
  CHECK(sm.c1 > 0.0);
  const EquivalenceConstants bp = sobolev_equivalence_check({Family::BesselPotential, 2, 1.5}, grid);
  CHECK(bp.c1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bp.c2 == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(code_of([] { sobolev_equivalence_check({Family::Smooth, 1, 2.0}, log_grid(1e-2, 1e4, 100)); }) ==
        ErrorCode::DomainError);
  CHECK(code_of([] { sobolev_equivalence_check({Family::Smooth, 1, 2.0}, log_grid(1e-2, 1e3, 300)); }) ==
        ErrorCode::DomainError);
}
