#pragma once

#include <functional>

#include <Eigen/Dense>

#include "spdid/spd_matrix.hpp"

namespace spdid {

/// Symmetric eigendecomposition A = V diag(lambda) V^T.
///
/// Eigenvalues ascend; each eigenvector column is normalised so that its first
/// component with magnitude above 1e-12 is positive. Both conventions make the
/// factorization reproducible for a fixed input.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  Eigen::Index order() const noexcept { return eigenvalues.size(); }
};

using ScalarFn = std::function<double(double)>;

/// Throws ConvergenceFailure if the eigensolver does not converge.
Spectrum eig_sym(const SpdMatrix& a);

/// Same for any symmetric matrix (eigenvalues may be of any sign). Used for
/// matrix logarithms that need exponentiating back.
Spectrum eig_symmetric(const Eigen::MatrixXd& symmetric);

/// Eigenvalues only, ascending; for traces of matrix functions.
Eigen::VectorXd eigenvalues_symmetric(const Eigen::MatrixXd& symmetric);

/// (M + M^T) / 2. The result is bitwise symmetric.
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m);

/// V diag(f(lambda)) V^T, symmetrized. Throws DomainError if f is not finite
/// at some eigenvalue.
Eigen::MatrixXd spectral_map(const Spectrum& s, const ScalarFn& f);

RawSquareMatrix sym_fn(const SpdMatrix& a, const ScalarFn& f);
RawSquareMatrix sym_fn(const Spectrum& s, const ScalarFn& f);

// Specialisations. The Spectrum overloads let callers that need several
// functions of one matrix pay for a single decomposition.
SpdMatrix sym_pow(const SpdMatrix& a, double p);
SpdMatrix sym_pow(const Spectrum& s, double p);
RawSquareMatrix sym_log(const SpdMatrix& a);
RawSquareMatrix sym_log(const Spectrum& s);
SpdMatrix sym_sqrt(const SpdMatrix& a);
SpdMatrix sym_sqrt(const Spectrum& s);
SpdMatrix sym_inv_sqrt(const SpdMatrix& a);
SpdMatrix sym_inv_sqrt(const Spectrum& s);

/// Matrix exponential of a symmetric matrix; the result is SPD.
SpdMatrix sym_exp(const RawSquareMatrix& symmetric);

}  // namespace spdid
