#include "spdid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "spdid/error.hpp"
#include "spdid/matfun.hpp"

namespace spdid::metrics {

namespace {

double clamp_negative(double value, double scale, const char* what) {
  if (value >= 0.0) return value;
  const double threshold = kNegativeClampScale * scale;
  if (value >= -threshold) return 0.0;
  std::ostringstream msg;
  msg << what << " evaluated to " << value << ", below the round-off threshold -" << threshold;
  throw Error(ErrorCode::NumericalError, msg.str());
}

// Centered strict upper triangle scaled to unit norm, so that a dot product of
// two of these is the Pearson correlation.
Eigen::VectorXd normalized_triangle(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  Eigen::VectorXd v(n * (n - 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) v(k++) = m(i, j);
  }
  if (v.size() < 2) {
    throw Error(ErrorCode::DegenerateVariance, "pearson needs matrices of order >= 3");
  }
  const double mean = v.mean();
  v.array() -= mean;
  const double norm = v.norm();
  const double scale = std::max(std::abs(mean), v.cwiseAbs().maxCoeff());
  if (!(norm > 1e-14 * std::sqrt(static_cast<double>(v.size())) * scale) || norm == 0.0) {
    throw Error(ErrorCode::DegenerateVariance, "upper triangle is constant, correlation is undefined");
  }
  return v / norm;
}

// Bures-Wasserstein distance from the square roots X = A^{1/2}, Y = B^{1/2}
// as the Procrustes residual min_U ||X - Y U||_F. The minimizer is the polar
// factor of Y X, whose singular values sum to tr (X B X)^{1/2}. Avoids the
// cancellation in tr A + tr B - 2 tr (X B X)^{1/2} when A and B are close.
double bures_from_roots(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(y * x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd u = svd.matrixU() * svd.matrixV().transpose();
  return (x - y * u).norm();
}

MetricSpec spec_of(MetricKind kind) { return MetricSpec::simple(kind); }

DistanceValue evaluate(const SpdMatrix& a, const SpdMatrix& b, const MetricSpec& spec) {
  if (a.order() != b.order()) {
    std::ostringstream msg;
    msg << "orders " << a.order() << " and " << b.order() << " differ";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  const Operand pa(a, spec);
  const Operand pb(b, spec);
  return {distance(pa, pb), spec};
}

}  // namespace

Operand::Operand(const SpdMatrix& m, const MetricSpec& spec) : spec_(spec.normalized()), matrix_(m.entries()), trace_(m.trace()) {
  spec_.validate();
  switch (spec_.kind) {
    case MetricKind::Euclid:
      break;
    case MetricKind::Pearson:
      triangle_ = normalized_triangle(matrix_);
      break;
    case MetricKind::LogEuclid:
      first_ = sym_log(eig_sym(m)).entries();
      break;
    case MetricKind::AffineInvariant:
      first_ = sym_inv_sqrt(eig_sym(m)).entries();
      break;
    case MetricKind::BuresWasserstein:
      first_ = sym_sqrt(eig_sym(m)).entries();
      break;
    case MetricKind::AlphaPro: {
      const Spectrum s = eig_sym(m);
      const double alpha = *spec_.alpha;
      first_ = sym_pow(s, alpha).entries();
      break;
    }
    case MetricKind::AlphaZ: {
      const Spectrum s = eig_sym(m);
      const double alpha = *spec_.alpha;
      const double z = *spec_.z;
      first_ = sym_pow(s, (1.0 - alpha) / (2.0 * z)).entries();
      second_ = sym_pow(s, alpha / z).entries();
      break;
    }
  }
}

double distance(const Operand& a, const Operand& b) {
  if (!(a.spec_ == b.spec_)) {
    throw Error(ErrorCode::InvalidParameter,
                "operands prepared for different metrics: " + a.spec_.describe() + " vs " + b.spec_.describe());
  }
  if (a.order() != b.order()) {
    std::ostringstream msg;
    msg << "orders " << a.order() << " and " << b.order() << " differ";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  const double scale = 1.0 + a.trace_ + b.trace_;
  switch (a.spec_.kind) {
    case MetricKind::Euclid:
      return (a.matrix_ - b.matrix_).norm();
    case MetricKind::Pearson: {
      const double value = 1.0 - a.triangle_.dot(b.triangle_);
      return std::min(clamp_negative(value, 1.0, "pearson distance"), 2.0);
    }
    case MetricKind::LogEuclid:
      return (a.first_ - b.first_).norm();
    case MetricKind::AffineInvariant: {
      const Eigen::VectorXd mu = eigenvalues_symmetric(symmetrize(a.first_ * b.matrix_ * a.first_));
      if (!(mu(0) > 0.0)) {
        std::ostringstream msg;
        msg << "congruence A^{-1/2} B A^{-1/2} has eigenvalue " << mu(0);
        throw Error(ErrorCode::NumericalError, msg.str());
      }
      return std::sqrt(mu.array().log().square().sum());
    }
    case MetricKind::BuresWasserstein:
      return bures_from_roots(a.first_, b.first_);
    case MetricKind::AlphaPro:
      return bures_from_roots(a.first_, b.first_) / *a.spec_.alpha;
    case MetricKind::AlphaZ: {
      const double alpha = *a.spec_.alpha;
      const double z = *a.spec_.z;
      const Eigen::VectorXd mu = eigenvalues_symmetric(symmetrize(a.first_ * b.second_ * a.first_));
      double q_trace = 0.0;
      for (Eigen::Index i = 0; i < mu.size(); ++i) q_trace += std::pow(std::max(mu(i), 0.0), z);
      const double value = (1.0 - alpha) * a.trace_ + alpha * b.trace_ - q_trace;
      return clamp_negative(value, scale, "alpha-z divergence");
    }
  }
  throw Error(ErrorCode::UnknownMetric, "unhandled metric kind");
}

DistanceValue euclid(const SpdMatrix& a, const SpdMatrix& b) { return evaluate(a, b, spec_of(MetricKind::Euclid)); }

DistanceValue pearson_dist(const SpdMatrix& a, const SpdMatrix& b) {
  return evaluate(a, b, spec_of(MetricKind::Pearson));
}

DistanceValue log_euclid(const SpdMatrix& a, const SpdMatrix& b) {
  return evaluate(a, b, spec_of(MetricKind::LogEuclid));
}

DistanceValue affine_invariant(const SpdMatrix& a, const SpdMatrix& b) {
  return evaluate(a, b, spec_of(MetricKind::AffineInvariant));
}

DistanceValue bures_wasserstein(const SpdMatrix& a, const SpdMatrix& b) {
  return evaluate(a, b, spec_of(MetricKind::BuresWasserstein));
}

DistanceValue alpha_procrustes(const SpdMatrix& a, const SpdMatrix& b, double alpha) {
  return evaluate(a, b, MetricSpec::alpha_pro(alpha));
}

DistanceValue alpha_z_bw(const SpdMatrix& a, const SpdMatrix& b, double alpha, double z) {
  return evaluate(a, b, MetricSpec::alpha_z(alpha, z));
}

DistanceValue dispatch(const MetricSpec& spec, const SpdMatrix& a, const SpdMatrix& b) {
  return evaluate(a, b, spec.normalized());
}

}  // namespace spdid::metrics
