#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <vector>

#include "cskern/kernel_spec.hpp"

namespace cskern {

/// Points stored column-wise: points.col(j) is the j-th node.
struct NodeSet {
  int dimension = 1;
  Eigen::MatrixXd points;

  Eigen::Index size() const noexcept { return points.cols(); }
};

/// Uniform nodes in [lo, hi]^d with pairwise distance >= min_separation,
/// by rejection from a seeded mt19937_64.
NodeSet random_nodes(int d, int count, std::uint64_t seed, double lo = 0.0, double hi = 2.0,
                     double min_separation = 1e-3);

struct GramFactorization {
  Eigen::MatrixXd lower_factor;
  double log_determinant = 0.0;

  double min_pivot() const { return lower_factor.diagonal().minCoeff(); }
};

struct Interpolant {
  KernelSpec spec;
  NodeSet nodes;
  Eigen::VectorXd coefficients;
  /// max |Gram c - values| / max(|values|, tiny) observed at fit time.
  double relative_residual = 0.0;
};

/// Gram matrix M(j, k) = kernel_eval(spec, x_j, x_k), assembled in parallel.
/// Exactly symmetric: only the lower triangle is evaluated.
Eigen::MatrixXd gram(const KernelSpec& spec, const NodeSet& nodes);

/// Unpivoted Cholesky. SINGULAR_GRAM on failure; no jitter is added.
GramFactorization factorize(const Eigen::MatrixXd& gram_matrix);

/// Solves Gram c = values. SINGULAR_GRAM when factorization fails or the
/// residual exceeds 1e-10 relative.
Interpolant fit(const KernelSpec& spec, const NodeSet& nodes, const Eigen::VectorXd& values);

double eval_interpolant(const Interpolant& interp, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Real even spectrum of a 1-d function translated to `center`:
/// u_hat(xi) = radial(|xi|) exp(-i xi center). A function supported in
/// |x| <= support_radius has a spectrum oscillating at that frequency; 0 means
/// no oscillation is expected.
struct TranslatedSpectrum {
  std::function<double(double)> radial;
  double decay_exponent;
  double center = 0.0;
  double support_radius = 0.0;
};

/// Fourier transform of profile(spec, |x - center|) in d = 1.
TranslatedSpectrum kernel_translate_spectrum(const KernelSpec& spec, double center);

/// Fourier transform of (1 - |x|)_+^2, 4/xi^2 (1 - sin xi / xi).
double askey2_fourier(double xi);

/// Explicit native weight for the alpha = 2 Askey kernel: xi^3 / (8 pi (xi - sin xi)).
double askey2_weight(double xi);

/// ∫_R u_hat conj(v_hat) weight dxi, where weight(xi) = O(xi^weight_growth).
/// DECAY_TOO_SLOW unless the integrand decays faster than 1/xi.
double weighted_inner_product_1d(const TranslatedSpectrum& u, const TranslatedSpectrum& v,
                                 const std::function<double(double)>& weight, double weight_growth);

/// Native-space inner product (2 pi)^-1 C^-1 ∫ u_hat conj(v_hat) / S for a d = 1 spec.
double native_inner_product_1d(const KernelSpec& spec, const TranslatedSpectrum& u,
                               const TranslatedSpectrum& v);

struct EquivalenceConstants {
  double c1;
  double c2;
};

/// min and max over r_grid of C S(r) (1 + r^2)^s, with s = delta, or (d+1)/2
/// for the Askey family. POSITIVITY_VIOLATION on a nonpositive value.
EquivalenceConstants sobolev_equivalence_check(const KernelSpec& spec, const std::vector<double>& r_grid);

}  // namespace cskern
