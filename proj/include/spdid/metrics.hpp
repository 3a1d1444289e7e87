#pragma once

#include <optional>

#include <Eigen/Dense>

#include "spdid/metric_spec.hpp"
#include "spdid/spd_matrix.hpp"

namespace spdid::metrics {

/// A nonnegative distance or divergence value together with the metric that
/// produced it.
struct DistanceValue {
  double value = 0.0;
  MetricSpec metric;
};

// Small negative results from cancellation are reported as 0 when they are no
// larger than kNegativeClampScale * (1 + tr A + tr B); anything more negative
// throws NumericalError.
inline constexpr double kNegativeClampScale = 1e-12;

/// Frobenius distance ||A - B||_F.
DistanceValue euclid(const SpdMatrix& a, const SpdMatrix& b);

/// 1 - r, where r is the Pearson correlation of the strict upper triangles of
/// A and B (diagonal excluded). Range [0, 2]. Throws DegenerateVariance when a
/// triangle is constant, which includes every matrix of order < 3.
DistanceValue pearson_dist(const SpdMatrix& a, const SpdMatrix& b);

/// Log-Euclidean distance ||log A - log B||_F (Arsigny et al., 2007).
DistanceValue log_euclid(const SpdMatrix& a, const SpdMatrix& b);

/// Affine-invariant Riemannian distance ||log(A^{-1/2} B A^{-1/2})||_F
/// (Bhatia, Positive Definite Matrices, ch. 6). Evaluated as
/// sqrt(sum ln^2 mu_i) over the eigenvalues of the symmetrized congruence.
DistanceValue affine_invariant(const SpdMatrix& a, const SpdMatrix& b);

/// Bures-Wasserstein distance (Bhatia, Jain & Lim, 2019):
///   sqrt(tr A + tr B - 2 tr (A^{1/2} B A^{1/2})^{1/2}).
/// Evaluated as the Procrustes residual min over orthogonal U of
/// ||A^{1/2} - B^{1/2} U||_F, which is the same quantity without the
/// cancellation of the trace form near A = B.
DistanceValue bures_wasserstein(const SpdMatrix& a, const SpdMatrix& b);

/// Alpha-Procrustes distance (Minh, 2022): (1/alpha) d_BW(A^{2 alpha}, B^{2 alpha}).
/// Equals 2 d_BW at alpha = 1/2 and tends to the log-Euclidean distance as
/// alpha -> 0. Requires alpha in (0, 1).
DistanceValue alpha_procrustes(const SpdMatrix& a, const SpdMatrix& b, double alpha);

/// Alpha-z Bures-Wasserstein divergence (Dinh, Le, Vo & Vuong, 2021):
///
///   Phi(A, B) = tr((1 - alpha) A + alpha B) - tr Q,
///   Q = (A^{(1-alpha)/(2z)} B^{alpha/z} A^{(1-alpha)/(2z)})^z.
///
/// In one dimension this is (1-alpha) a + alpha b - a^{1-alpha} b^alpha, which
/// is nonnegative by the weighted AM-GM inequality. Not symmetric in (A, B).
/// At alpha = z = 1/2 it reduces to d_BW^2 / 2. Nonnegativity is guaranteed
/// for alpha <= z <= 1; alpha in (0,1) and z in (0,1] are accepted.
DistanceValue alpha_z_bw(const SpdMatrix& a, const SpdMatrix& b, double alpha, double z);

/// Routes to the kernel selected by spec ("log" -> log_euclid, "ai" -> affine_invariant).
DistanceValue dispatch(const MetricSpec& spec, const SpdMatrix& a, const SpdMatrix& b);

/// Everything a kernel needs from one operand, computed from a single
/// eigendecomposition. Preparing a probe once and comparing it against many
/// prepared gallery matrices gives bitwise the same values as calling the
/// kernels pair by pair, since the kernels are implemented on top of this.
class Operand {
 public:
  Operand(const SpdMatrix& m, const MetricSpec& spec);

  const MetricSpec& spec() const noexcept { return spec_; }
  Eigen::Index order() const noexcept { return matrix_.rows(); }

 private:
  friend double distance(const Operand& a, const Operand& b);

  MetricSpec spec_;
  Eigen::MatrixXd matrix_;
  double trace_ = 0.0;
  // Per-kind precomputations; unused members stay empty.
  Eigen::MatrixXd first_;   // log A | A^{-1/2} | A^{1/2} | A^{alpha} | A^{(1-alpha)/(2z)}
  Eigen::MatrixXd second_;  // A^{alpha/z}
  Eigen::VectorXd triangle_;  // centered, unit-norm strict upper triangle
};

/// Raw value of the prepared kernel (after negative clamping).
double distance(const Operand& a, const Operand& b);

}  // namespace spdid::metrics
