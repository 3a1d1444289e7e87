#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace spdid {

enum class MetricKind { AlphaZ, AlphaPro, BuresWasserstein, AffineInvariant, LogEuclid, Pearson, Euclid };

/// CLI name of a metric ("alpha_z", "alpha_pro", "bw", "ai", "log", "pearson", "euclid").
std::string_view metric_name(MetricKind kind);

/// Inverse of metric_name. Throws UnknownMetric.
MetricKind parse_metric_kind(std::string_view name);

/// Which kernel to run, plus alpha (alpha_z, alpha_pro) and z (alpha_z).
/// Parameters that the kind does not use are left empty.
struct MetricSpec {
  MetricKind kind = MetricKind::Euclid;
  std::optional<double> alpha;
  std::optional<double> z;

  static MetricSpec alpha_z(double alpha, double z);
  static MetricSpec alpha_pro(double alpha);
  static MetricSpec simple(MetricKind kind);

  /// Throws InvalidParameter when a required parameter is missing or out of range:
  /// alpha in (0,1), z in (0,1].
  void validate() const;

  /// Set for alpha_z when z < max(alpha, 1 - alpha), where nonnegativity of the
  /// divergence is no longer guaranteed.
  std::optional<std::string> warning() const;

  /// Whether d(A,B) == d(B,A) for this kind.
  bool is_symmetric() const noexcept { return kind != MetricKind::AlphaZ; }

  /// Copy with the parameters this kind ignores removed.
  MetricSpec normalized() const;

  std::string describe() const;

  friend bool operator==(const MetricSpec&, const MetricSpec&) = default;
};

}  // namespace spdid
