#pragma once

#include <Eigen/Dense>

namespace spdid {

// Smallest eigenvalue, relative to the largest absolute entry, that still
// counts as positive definite.
inline constexpr double kPdFloor = 1e-12;

// Allowed |a_ij - a_ji| is kSymmetryTolerance * (1 + max|a|).
inline constexpr double kSymmetryTolerance = 1e-10;

/// Square matrix of finite doubles as parsed from input, before any SPD checks.
class RawSquareMatrix {
 public:
  /// Throws NotSquare for non-square or empty input, NonFiniteEntry on NaN/Inf.
  explicit RawSquareMatrix(Eigen::MatrixXd entries);

  Eigen::Index order() const noexcept { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  Eigen::MatrixXd entries_;
};

/// A validated symmetric positive-definite matrix. Only obtainable through
/// regularize(), validate_spd() or the matrix functions, so holding one is
/// proof that the checks passed. Immutable.
class SpdMatrix {
 public:
  Eigen::Index order() const noexcept { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  /// Smallest eigenvalue observed when the matrix was validated.
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

  double trace() const { return entries_.trace(); }

  // Wraps an exactly symmetric matrix whose spectrum is already known to be
  // positive. Used by the spectral routines, which validate from eigenvalues.
  static SpdMatrix from_trusted(Eigen::MatrixXd symmetric, double min_eigenvalue);

 private:
  SpdMatrix(Eigen::MatrixXd entries, double min_eigenvalue)
      : entries_(std::move(entries)), min_eigenvalue_(min_eigenvalue) {}

  Eigen::MatrixXd entries_;
  double min_eigenvalue_;
};

/// Returns (raw + raw^T)/2 + tau*I after checking positive definiteness.
/// The result is exactly symmetric. Throws InvalidParameter for tau < 0 and
/// NotPositiveDefinite when the smallest eigenvalue is at or below the floor.
SpdMatrix regularize(const RawSquareMatrix& raw, double tau);

/// Accepts a matrix that is already SPD up to text round-off. Asymmetry within
/// tolerance is averaged away; anything larger raises NotSymmetric.
SpdMatrix validate_spd(const RawSquareMatrix& raw);

/// Largest absolute entry.
double max_abs_entry(const Eigen::MatrixXd& m);

}  // namespace spdid
