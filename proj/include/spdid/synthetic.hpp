#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spdid/dataio.hpp"
#include "spdid/pairwise.hpp"

namespace spdid {

/// SplitMix64 (Steele, Lea & Flood, 2014). The state advances by
/// 0x9E3779B97F4A7C15 per call and the output is
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
///   z ^ (z >> 31).
/// Uniforms use the top 53 bits; normals use the Box-Muller cosine branch with
/// a fresh pair of uniforms for every draw. Nothing here depends on the
/// standard library's distributions, so streams match across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::uint64_t state_;
};

struct CohortOptions {
  std::size_t n_subjects = 30;
  Eigen::Index order = 100;
  // Standard deviation of the symmetric log-domain noise added to each scan.
  double within_noise = 0.01;
  // Log eigenvalues of each subject's base matrix are uniform in
  // [-between_spread, between_spread].
  double between_spread = 1.0;
  std::uint64_t seed = 42;
  // When set, subjects come in pairs sharing one base matrix and are told
  // apart only by a per-subject rescaling c*M + d*I of both scans, with
  // c = exp(-delta) / exp(+delta) within a pair (delta uniform in [0.25, 0.5])
  // and d uniform in [0, 0.5]. Correlation of off-diagonals cannot see it.
  bool affine_confound = false;
};

struct SyntheticCohort {
  LabeledSet scan1;  // simulated LR
  LabeledSet scan2;  // simulated RL
};

/// Seeded cohort of paired scans.
///
/// Per subject: a base log-matrix Q diag(l) Q^T with Q orthogonal (Gram-Schmidt
/// on a Gaussian matrix) and l uniform in [-between_spread, between_spread];
/// each scan is exp(base + within_noise * E) with E symmetric, unit-variance
/// Gaussian off the diagonal and variance 2 on it. Deterministic for a seed.
/// Throws InvalidParameter for n_subjects < 1, order < 2, within_noise < 0 or
/// between_spread <= 0.
SyntheticCohort generate_synthetic_cohort(const CohortOptions& options);

/// Writes both scans of every subject as template-named text files under base,
/// creating directories as needed. Returns the number of files written.
std::size_t write_cohort(const SyntheticCohort& cohort, const std::filesystem::path& base, const std::string& task,
                         const std::string& scan1, const std::string& scan2,
                         const io::PathTemplate& tmpl = io::PathTemplate());

/// "sub001", "sub002", ... zero-padded to the width of the count (min 3).
std::string subject_label(std::size_t index, std::size_t count);

}  // namespace spdid
