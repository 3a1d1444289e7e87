#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spdid/pairwise.hpp"

namespace spdid {

struct IdRate {
  double rate = 0.0;
  std::vector<bool> hits;
};

/// Fraction of probe rows whose diagonal entry is the strict row minimum.
/// Ties with another column count as misses. Requires a square matrix whose
/// probe and gallery labels agree position by position (NotSquare / LabelMismatch).
IdRate compute_id_rate(const DistanceMatrix& d);

struct IdReport {
  double id12 = 0.0;
  double id21 = 0.0;
  double mean = 0.0;  // (id12 + id21) / 2
  std::size_t n_subjects = 0;
  std::vector<bool> per_subject_hits12;
  std::vector<bool> per_subject_hits21;
};

/// Identification rates in both directions. D21's probe labels must equal
/// D12's gallery labels.
IdReport id_report(const DistanceMatrix& d12, const DistanceMatrix& d21);

struct NearestMatch {
  std::string probe_label;
  std::string closest_label;
  std::size_t closest_index = 0;
  double within_distance = 0.0;
  // Minimum over the other columns; +inf for a 1x1 matrix.
  double best_other_distance = 0.0;
  // More than one column attains the row minimum; closest is the lowest index.
  bool ambiguous = false;
};

/// Per-probe closest gallery subject, its own (diagonal) distance and the best
/// competing distance.
std::vector<NearestMatch> nearest_match_table(const DistanceMatrix& d);

}  // namespace spdid
