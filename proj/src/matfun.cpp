#include "spdid/matfun.hpp"

#include <cmath>
#include <sstream>

#include "spdid/error.hpp"

namespace spdid {

namespace {

constexpr double kSignThreshold = 1e-12;

void fix_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) > kSignThreshold) {
        if (v(i, j) < 0.0) v.col(j) = -v.col(j);
        break;
      }
    }
  }
}

void require_positive_spectrum(const Spectrum& s, const char* what) {
  if (!(s.eigenvalues(0) > 0.0)) {
    std::ostringstream msg;
    msg << what << " needs positive eigenvalues, smallest is " << s.eigenvalues(0);
    throw Error(ErrorCode::DomainError, msg.str());
  }
}

SpdMatrix power_from_spectrum(const Spectrum& s, double p) {
  require_positive_spectrum(s, "matrix power");
  Eigen::VectorXd mapped = s.eigenvalues.array().pow(p).matrix();
  const double lo = mapped.minCoeff();
  const double hi = mapped.maxCoeff();
  if (!std::isfinite(hi) || !(lo > kPdFloor * hi)) {
    std::ostringstream msg;
    msg << "power " << p << " leaves eigenvalues in [" << lo << ", " << hi << "], not positive definite";
    throw Error(ErrorCode::NotPositiveDefinite, msg.str());
  }
  Eigen::MatrixXd m = s.eigenvectors * mapped.asDiagonal() * s.eigenvectors.transpose();
  return SpdMatrix::from_trusted(symmetrize(m), lo);
}

}  // namespace

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) { return (m + m.transpose()) * 0.5; }

Spectrum eig_symmetric(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "symmetric eigensolver did not converge");
  }
  Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
  fix_signs(s.eigenvectors);
  return s;
}

Spectrum eig_sym(const SpdMatrix& a) { return eig_symmetric(a.entries()); }

Eigen::VectorXd eigenvalues_symmetric(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "symmetric eigensolver did not converge");
  }
  return solver.eigenvalues();
}

Eigen::MatrixXd spectral_map(const Spectrum& s, const ScalarFn& f) {
  Eigen::VectorXd mapped(s.order());
  for (Eigen::Index i = 0; i < s.order(); ++i) {
    mapped(i) = f(s.eigenvalues(i));
    if (!std::isfinite(mapped(i))) {
      std::ostringstream msg;
      msg << "function is not finite at eigenvalue " << s.eigenvalues(i);
      throw Error(ErrorCode::DomainError, msg.str());
    }
  }
  Eigen::MatrixXd m = s.eigenvectors * mapped.asDiagonal() * s.eigenvectors.transpose();
  return symmetrize(m);
}

RawSquareMatrix sym_fn(const Spectrum& s, const ScalarFn& f) { return RawSquareMatrix(spectral_map(s, f)); }

RawSquareMatrix sym_fn(const SpdMatrix& a, const ScalarFn& f) { return sym_fn(eig_sym(a), f); }

SpdMatrix sym_pow(const Spectrum& s, double p) { return power_from_spectrum(s, p); }

SpdMatrix sym_pow(const SpdMatrix& a, double p) { return power_from_spectrum(eig_sym(a), p); }

RawSquareMatrix sym_log(const Spectrum& s) {
  require_positive_spectrum(s, "matrix logarithm");
  return sym_fn(s, [](double x) { return std::log(x); });
}

RawSquareMatrix sym_log(const SpdMatrix& a) { return sym_log(eig_sym(a)); }

SpdMatrix sym_sqrt(const Spectrum& s) { return power_from_spectrum(s, 0.5); }

SpdMatrix sym_sqrt(const SpdMatrix& a) { return sym_sqrt(eig_sym(a)); }

SpdMatrix sym_inv_sqrt(const Spectrum& s) { return power_from_spectrum(s, -0.5); }

SpdMatrix sym_inv_sqrt(const SpdMatrix& a) { return sym_inv_sqrt(eig_sym(a)); }

SpdMatrix sym_exp(const RawSquareMatrix& symmetric) {
  const Spectrum s = eig_symmetric(symmetrize(symmetric.entries()));
  Eigen::MatrixXd m = spectral_map(s, [](double x) { return std::exp(x); });
  const double lo = std::exp(s.eigenvalues(0));
  const double hi = std::exp(s.eigenvalues(s.order() - 1));
  if (!(lo > kPdFloor * hi)) {
    throw Error(ErrorCode::NotPositiveDefinite, "matrix exponential is numerically singular");
  }
  return SpdMatrix::from_trusted(std::move(m), lo);
}

}  // namespace spdid
