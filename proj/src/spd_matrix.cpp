#include "spdid/spd_matrix.hpp"

#include <cmath>
#include <sstream>

#include "spdid/error.hpp"

namespace spdid {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NumericalError: return "NumericalError";
    case ErrorCode::UnknownMetric: return "UnknownMetric";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::BaseNotFound: return "BaseNotFound";
    case ErrorCode::NoSubjectsFound: return "NoSubjectsFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

RawSquareMatrix::RawSquareMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    std::ostringstream msg;
    msg << "expected a non-empty square matrix, got " << entries_.rows() << "x" << entries_.cols();
    throw Error(ErrorCode::NotSquare, msg.str());
  }
  for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
      if (!std::isfinite(entries_(i, j))) {
        std::ostringstream msg;
        msg << "entry (" << i << ", " << j << ") is " << entries_(i, j);
        throw Error(ErrorCode::NonFiniteEntry, msg.str());
      }
    }
  }
}

double max_abs_entry(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

SpdMatrix SpdMatrix::from_trusted(Eigen::MatrixXd symmetric, double min_eigenvalue) {
  return SpdMatrix(std::move(symmetric), min_eigenvalue);
}

namespace {

double smallest_eigenvalue(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "eigenvalue computation did not converge");
  }
  return solver.eigenvalues()(0);
}

SpdMatrix check_positive_definite(Eigen::MatrixXd symmetric, double tau) {
  const double lambda_min = smallest_eigenvalue(symmetric);
  const double floor = kPdFloor * max_abs_entry(symmetric);
  if (!(lambda_min > floor)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "smallest eigenvalue " << lambda_min << " is not above the floor " << floor << " (tau = " << tau
        << "); increase the regularization --tau";
    throw Error(ErrorCode::NotPositiveDefinite, msg.str());
  }
  return SpdMatrix::from_trusted(std::move(symmetric), lambda_min);
}

}  // namespace

SpdMatrix regularize(const RawSquareMatrix& raw, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidParameter, "tau must be finite and >= 0");
  }
  const Eigen::MatrixXd& a = raw.entries();
  Eigen::MatrixXd s = (a + a.transpose()) * 0.5;
  s.diagonal().array() += tau;
  return check_positive_definite(std::move(s), tau);
}

SpdMatrix validate_spd(const RawSquareMatrix& raw) {
  const Eigen::MatrixXd& a = raw.entries();
  const double tol = kSymmetryTolerance * (1.0 + max_abs_entry(a));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < a.rows(); ++i) {
      const double gap = std::abs(a(i, j) - a(j, i));
      if (gap > tol) {
        std::ostringstream msg;
        msg << "entries (" << i << ", " << j << ") and (" << j << ", " << i << ") differ by " << gap
            << ", tolerance " << tol;
        throw Error(ErrorCode::NotSymmetric, msg.str());
      }
    }
  }
  Eigen::MatrixXd s = (a + a.transpose()) * 0.5;
  return check_positive_definite(std::move(s), 0.0);
}

}  // namespace spdid
