#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spdid/metric_spec.hpp"
#include "spdid/spd_matrix.hpp"

namespace spdid {

/// Matrices with one subject label each, in a fixed order.
struct LabeledSet {
  std::vector<std::string> labels;
  std::vector<SpdMatrix> matrices;

  std::size_t size() const noexcept { return matrices.size(); }
};

/// Probe-by-gallery distances: values(i, j) = d(probe[i], gallery[j]).
struct DistanceMatrix {
  std::vector<std::string> probe_labels;
  std::vector<std::string> gallery_labels;
  Eigen::MatrixXd values;
  MetricSpec metric;

  bool is_square() const noexcept { return values.rows() == values.cols(); }
};

/// Number of workers to use when the caller does not say (hardware concurrency, at least 1).
unsigned default_workers();

/// Cross-distance matrix between two labeled sets.
///
/// Work is split by probe row: gallery operands are prepared once up front,
/// then each worker prepares one probe at a time and fills that row. Each cell
/// is computed independently and written to its own slot, so the result is
/// bitwise identical for any worker count.
///
/// Throws DimensionMismatch when matrix orders differ, InvalidParameter for
/// empty or inconsistent sets. The first kernel failure aborts the sweep and is
/// rethrown with its (row, column) and labels; no partial matrix is returned.
DistanceMatrix cross_distances(const LabeledSet& probe, const LabeledSet& gallery, const MetricSpec& spec,
                               unsigned workers = default_workers());

/// (D12, D21) = (set1 vs set2, set2 vs set1). Both directions are always
/// computed; the second is not derived by transposition.
std::pair<DistanceMatrix, DistanceMatrix> both_directions(const LabeledSet& set1, const LabeledSet& set2,
                                                          const MetricSpec& spec,
                                                          unsigned workers = default_workers());

}  // namespace spdid
