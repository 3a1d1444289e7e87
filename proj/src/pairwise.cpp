#include "spdid/pairwise.hpp"

#include <optional>
#include <sstream>
#include <thread>

#include "spdid/error.hpp"
#include "spdid/metrics.hpp"
#include "parallel.hpp"

namespace spdid {

namespace {

void check_set(const LabeledSet& set, const char* name) {
  if (set.matrices.empty()) {
    throw Error(ErrorCode::InvalidParameter, std::string(name) + " set is empty");
  }
  if (set.labels.size() != set.matrices.size()) {
    std::ostringstream msg;
    msg << name << " set has " << set.labels.size() << " labels for " << set.matrices.size() << " matrices";
    throw Error(ErrorCode::InvalidParameter, msg.str());
  }
}

[[noreturn]] void rethrow_annotated(const Error& e, std::size_t i, std::size_t j, const std::string& probe,
                                    const std::string& gallery) {
  std::ostringstream msg;
  msg << "at (" << i << ", " << j << ") probe '" << probe << "' vs gallery '" << gallery << "': " << e.detail();
  throw Error(e.code(), msg.str());
}

}  // namespace

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

DistanceMatrix cross_distances(const LabeledSet& probe, const LabeledSet& gallery, const MetricSpec& spec,
                               unsigned workers) {
  check_set(probe, "probe");
  check_set(gallery, "gallery");
  spec.validate();
  const Eigen::Index n = probe.matrices.front().order();
  auto check_order = [n](const LabeledSet& set, const char* name) {
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (set.matrices[k].order() != n) {
        std::ostringstream msg;
        msg << name << " matrix '" << set.labels[k] << "' has order " << set.matrices[k].order() << ", expected "
            << n;
        throw Error(ErrorCode::DimensionMismatch, msg.str());
      }
    }
  };
  check_order(probe, "probe");
  check_order(gallery, "gallery");

  std::vector<std::optional<metrics::Operand>> prepared(gallery.size());
  detail::parallel_for(gallery.size(), workers, [&](std::size_t j) {
    try {
      prepared[j].emplace(gallery.matrices[j], spec);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "preparing gallery matrix " << j << " '" << gallery.labels[j] << "': " << e.detail();
      throw Error(e.code(), msg.str());
    }
  });

  DistanceMatrix out;
  out.probe_labels = probe.labels;
  out.gallery_labels = gallery.labels;
  out.metric = spec.normalized();
  out.values.resize(static_cast<Eigen::Index>(probe.size()), static_cast<Eigen::Index>(gallery.size()));

  detail::parallel_for(probe.size(), workers, [&](std::size_t i) {
    std::size_t j = 0;
    try {
      const metrics::Operand row(probe.matrices[i], spec);
      for (; j < gallery.size(); ++j) {
        out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = metrics::distance(row, *prepared[j]);
      }
    } catch (const Error& e) {
      rethrow_annotated(e, i, j, probe.labels[i], gallery.labels[std::min(j, gallery.size() - 1)]);
    }
  });
  return out;
}

std::pair<DistanceMatrix, DistanceMatrix> both_directions(const LabeledSet& set1, const LabeledSet& set2,
                                                          const MetricSpec& spec, unsigned workers) {
  DistanceMatrix d12 = cross_distances(set1, set2, spec, workers);
  DistanceMatrix d21 = cross_distances(set2, set1, spec, workers);
  return {std::move(d12), std::move(d21)};
}

}  // namespace spdid
