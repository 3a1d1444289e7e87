#include "spdid/identification.hpp"

#include <limits>
#include <sstream>

#include "spdid/error.hpp"

namespace spdid {

namespace {

void check_square_labeled(const DistanceMatrix& d) {
  if (!d.is_square() || d.values.rows() == 0) {
    std::ostringstream msg;
    msg << "identification needs a non-empty square matrix, got " << d.values.rows() << "x" << d.values.cols();
    throw Error(ErrorCode::NotSquare, msg.str());
  }
  const auto n = static_cast<std::size_t>(d.values.rows());
  if (d.probe_labels.size() != n || d.gallery_labels.size() != n) {
    throw Error(ErrorCode::LabelMismatch, "label count does not match the matrix size");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (d.probe_labels[i] != d.gallery_labels[i]) {
      std::ostringstream msg;
      msg << "position " << i << ": probe '" << d.probe_labels[i] << "' vs gallery '" << d.gallery_labels[i] << "'";
      throw Error(ErrorCode::LabelMismatch, msg.str());
    }
  }
}

}  // namespace

IdRate compute_id_rate(const DistanceMatrix& d) {
  check_square_labeled(d);
  const Eigen::Index n = d.values.rows();
  IdRate out;
  out.hits.resize(static_cast<std::size_t>(n));
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double within = d.values(i, i);
    bool hit = true;
    for (Eigen::Index j = 0; j < n && hit; ++j) {
      if (j != i && !(within < d.values(i, j))) hit = false;
    }
    out.hits[static_cast<std::size_t>(i)] = hit;
    if (hit) ++count;
  }
  out.rate = static_cast<double>(count) / static_cast<double>(n);
  return out;
}

IdReport id_report(const DistanceMatrix& d12, const DistanceMatrix& d21) {
  if (d21.probe_labels != d12.gallery_labels || d21.gallery_labels != d12.probe_labels) {
    throw Error(ErrorCode::LabelMismatch, "D21 labels are not the reverse of D12 labels");
  }
  IdRate r12 = compute_id_rate(d12);
  IdRate r21 = compute_id_rate(d21);
  IdReport out;
  out.id12 = r12.rate;
  out.id21 = r21.rate;
  out.mean = (out.id12 + out.id21) / 2.0;
  out.n_subjects = r12.hits.size();
  out.per_subject_hits12 = std::move(r12.hits);
  out.per_subject_hits21 = std::move(r21.hits);
  return out;
}

std::vector<NearestMatch> nearest_match_table(const DistanceMatrix& d) {
  check_square_labeled(d);
  const Eigen::Index n = d.values.rows();
  std::vector<NearestMatch> table;
  table.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    NearestMatch row;
    row.probe_label = d.probe_labels[static_cast<std::size_t>(i)];
    row.within_distance = d.values(i, i);
    row.best_other_distance = std::numeric_limits<double>::infinity();
    Eigen::Index best = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = d.values(i, j);
      if (j != i && v < row.best_other_distance) row.best_other_distance = v;
      if (j == 0 || v < d.values(i, best)) best = j;
    }
    for (Eigen::Index j = best + 1; j < n; ++j) {
      if (d.values(i, j) == d.values(i, best)) row.ambiguous = true;
    }
    row.closest_index = static_cast<std::size_t>(best);
    row.closest_label = d.gallery_labels[row.closest_index];
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace spdid
