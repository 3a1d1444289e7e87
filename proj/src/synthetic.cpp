#include "spdid/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spdid/error.hpp"
#include "spdid/matfun.hpp"

namespace spdid {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  // 1 - u keeps the logarithm away from 0.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

// Gaussian matrix filled row by row.
Eigen::MatrixXd gaussian(SplitMix64& rng, Eigen::Index n) {
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  return g;
}

// Modified Gram-Schmidt on the columns; with probability one the Gaussian
// matrix has full rank.
Eigen::MatrixXd random_orthogonal(SplitMix64& rng, Eigen::Index n) {
  Eigen::MatrixXd q = gaussian(rng, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    q.col(j) /= q.col(j).norm();
  }
  return q;
}

Eigen::MatrixXd symmetric_noise(SplitMix64& rng, Eigen::Index n, double scale) {
  const Eigen::MatrixXd g = gaussian(rng, n);
  return (g + g.transpose()) * (scale / std::numbers::sqrt2);
}

SpdMatrix rescale(const SpdMatrix& m, double c, double d) {
  Eigen::MatrixXd out = c * m.entries();
  out.diagonal().array() += d;
  return validate_spd(RawSquareMatrix(std::move(out)));
}

}  // namespace

std::string subject_label(std::size_t index, std::size_t count) {
  const std::string digits = std::to_string(index + 1);
  const std::size_t width = std::max<std::size_t>(3, std::to_string(count).size());
  return "sub" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

SyntheticCohort generate_synthetic_cohort(const CohortOptions& options) {
  if (options.n_subjects < 1) throw Error(ErrorCode::InvalidParameter, "n_subjects must be >= 1");
  if (options.order < 2) throw Error(ErrorCode::InvalidParameter, "matrix order must be >= 2");
  if (!(options.within_noise >= 0.0) || !std::isfinite(options.within_noise)) {
    throw Error(ErrorCode::InvalidParameter, "within_noise must be finite and >= 0");
  }
  if (!(options.between_spread > 0.0) || !std::isfinite(options.between_spread)) {
    throw Error(ErrorCode::InvalidParameter, "between_spread must be finite and > 0");
  }

  SplitMix64 rng(options.seed);
  const Eigen::Index n = options.order;
  SyntheticCohort cohort;
  Eigen::MatrixXd base_log;
  double pair_shift = 0.0;

  for (std::size_t s = 0; s < options.n_subjects; ++s) {
    const bool twin = options.affine_confound && s % 2 == 1;
    if (!twin) {
      const Eigen::MatrixXd q = random_orthogonal(rng, n);
      Eigen::VectorXd log_eigs(n);
      for (Eigen::Index k = 0; k < n; ++k) log_eigs(k) = rng.uniform(-options.between_spread, options.between_spread);
      base_log = symmetrize(q * log_eigs.asDiagonal() * q.transpose());
    }
    SpdMatrix lr = sym_exp(RawSquareMatrix(base_log + symmetric_noise(rng, n, options.within_noise)));
    SpdMatrix rl = sym_exp(RawSquareMatrix(base_log + symmetric_noise(rng, n, options.within_noise)));
    if (options.affine_confound) {
      if (!twin) pair_shift = rng.uniform(0.25, 0.5);
      const double c = std::exp(twin ? pair_shift : -pair_shift);
      const double d = rng.uniform(0.0, 0.5);
      lr = rescale(lr, c, d);
      rl = rescale(rl, c, d);
    }
    const std::string label = subject_label(s, options.n_subjects);
    cohort.scan1.labels.push_back(label);
    cohort.scan1.matrices.push_back(std::move(lr));
    cohort.scan2.labels.push_back(label);
    cohort.scan2.matrices.push_back(std::move(rl));
  }
  return cohort;
}

std::size_t write_cohort(const SyntheticCohort& cohort, const std::filesystem::path& base, const std::string& task,
                         const std::string& scan1, const std::string& scan2, const io::PathTemplate& tmpl) {
  std::size_t written = 0;
  for (const auto& [scan, set] : {std::pair{&scan1, &cohort.scan1}, std::pair{&scan2, &cohort.scan2}}) {
    for (std::size_t k = 0; k < set->size(); ++k) {
      const auto& m = set->matrices[k];
      const auto path = tmpl.expand(base, set->labels[k], task, *scan, static_cast<int>(m.order()));
      if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
      io::save_matrix(path, m.entries());
      ++written;
    }
  }
  return written;
}

}  // namespace spdid
