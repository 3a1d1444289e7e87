#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spdid/error.hpp"
#include "spdid/metrics.hpp"
#include "spdid/pairwise.hpp"
#include "test_support.hpp"

using namespace spdid;
using spdid::testing::diag;
using spdid::testing::random_spd;

namespace {

LabeledSet random_set(std::mt19937_64& rng, std::size_t count, Eigen::Index n, const std::string& prefix) {
  LabeledSet set;
  for (std::size_t k = 0; k < count; ++k) {
    set.labels.push_back(prefix + std::to_string(k));
    set.matrices.push_back(random_spd(rng, n));
  }
  return set;
}

// (1 - alpha) a + alpha b - a^(1-alpha) b^alpha
double scalar_alpha_z(double a, double b, double alpha) {
  return (1 - alpha) * a + alpha * b - std::pow(a, 1 - alpha) * std::pow(b, alpha);
}

}  // namespace

TEST_CASE("cross_distances examples") {
  SUBCASE("single identity") {
    const LabeledSet s{{"s1"}, {diag({1, 1})}};
    const DistanceMatrix d = cross_distances(s, s, MetricSpec::simple(MetricKind::Euclid));
    CHECK(d.values.rows() == 1);
    CHECK(d.values(0, 0) == 0.0);
  }
  SUBCASE("scalar bw") {
    const LabeledSet s{{"a", "b"}, {diag({1}), diag({4})}};
    const DistanceMatrix d = cross_distances(s, s, MetricSpec::simple(MetricKind::BuresWasserstein));
    // |sqrt a - sqrt b|
    CHECK(d.values(0, 0) == doctest::Approx(0.0));
    CHECK(d.values(1, 1) == doctest::Approx(0.0));
    CHECK(d.values(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.values(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("scalar alpha_z is asymmetric") {
    const double e = std::numbers::e;
    const LabeledSet s{{"a", "b"}, {diag({1}), diag({e})}};
    const DistanceMatrix d = cross_distances(s, s, MetricSpec::alpha_z(0.99, 1.0));
    CHECK(std::abs(d.values(0, 0)) < 1e-15);
    CHECK(std::abs(d.values(1, 1)) < 1e-14);
    CHECK(std::abs(d.values(0, 1) - scalar_alpha_z(1, e, 0.99)) < 1e-14);
    CHECK(std::abs(d.values(1, 0) - scalar_alpha_z(e, 1, 0.99)) < 1e-14);
    CHECK(d.values(0, 1) != doctest::Approx(d.values(1, 0)));
  }
}

TEST_CASE("cross_distances is deterministic across worker counts") {
  std::mt19937_64 rng(21);
  const LabeledSet probe = random_set(rng, 9, 12, "p");
  const LabeledSet gallery = random_set(rng, 7, 12, "g");
  for (const MetricSpec& spec : {MetricSpec::alpha_z(0.99, 1.0), MetricSpec::simple(MetricKind::AffineInvariant),
                                 MetricSpec::simple(MetricKind::Pearson)}) {
    const DistanceMatrix one = cross_distances(probe, gallery, spec, 1);
    const DistanceMatrix many = cross_distances(probe, gallery, spec, 5);
    CHECK(one.values == many.values);
    // no shared-decomposition shortcut changes anything
    for (Eigen::Index i = 0; i < one.values.rows(); ++i) {
      for (Eigen::Index j = 0; j < one.values.cols(); ++j) {
        CHECK(one.values(i, j) ==
              metrics::dispatch(spec, probe.matrices[std::size_t(i)], gallery.matrices[std::size_t(j)]).value);
      }
    }
  }
}

TEST_CASE("permutation equivariance") {
  std::mt19937_64 rng(22);
  const LabeledSet probe = random_set(rng, 5, 6, "p");
  const LabeledSet gallery = random_set(rng, 4, 6, "g");
  const std::vector<std::size_t> pperm{3, 0, 4, 1, 2};
  const std::vector<std::size_t> gperm{2, 3, 1, 0};
  LabeledSet p2, g2;
  for (auto k : pperm) {
    p2.labels.push_back(probe.labels[k]);
    p2.matrices.push_back(probe.matrices[k]);
  }
  for (auto k : gperm) {
    g2.labels.push_back(gallery.labels[k]);
    g2.matrices.push_back(gallery.matrices[k]);
  }
  const auto spec = MetricSpec::simple(MetricKind::LogEuclid);
  const DistanceMatrix d = cross_distances(probe, gallery, spec, 2);
  const DistanceMatrix d2 = cross_distances(p2, g2, spec, 3);
  for (std::size_t i = 0; i < pperm.size(); ++i) {
    for (std::size_t j = 0; j < gperm.size(); ++j) {
      CHECK(d2.values(Eigen::Index(i), Eigen::Index(j)) == d.values(Eigen::Index(pperm[i]), Eigen::Index(gperm[j])));
    }
  }
  CHECK(d2.probe_labels == p2.labels);
  CHECK(d2.gallery_labels == g2.labels);
}

TEST_CASE("cross_distances errors") {
  const LabeledSet two{{"a"}, {diag({1, 2})}};
  const LabeledSet three{{"b"}, {diag({1, 2, 3})}};
  try {
    cross_distances(two, three, MetricSpec::simple(MetricKind::Euclid));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }

  const LabeledSet empty;
  CHECK_THROWS_AS(cross_distances(empty, two, MetricSpec::simple(MetricKind::Euclid)), Error);

  // a diagonal probe has a constant upper triangle; the failure names the cell
  std::mt19937_64 rng(23);
  const LabeledSet good{{"g0", "g1"}, {random_spd(rng, 4), random_spd(rng, 4)}};
  const LabeledSet bad{{"ok", "flat"}, {random_spd(rng, 4), diag({1, 2, 3, 4})}};
  try {
    cross_distances(bad, good, MetricSpec::simple(MetricKind::Pearson), 2);
    FAIL("expected DegenerateVariance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateVariance);
    const std::string what = e.what();
    CHECK(what.find("(1, 0)") != std::string::npos);
    CHECK(what.find("'flat'") != std::string::npos);
    CHECK(what.find("'g0'") != std::string::npos);
  }
}

TEST_CASE("both_directions") {
  std::mt19937_64 rng(24);
  SUBCASE("symmetric metric gives the transpose") {
    const LabeledSet s1 = random_set(rng, 6, 8, "s");
    const LabeledSet s2 = random_set(rng, 6, 8, "s");
    const auto [d12, d21] = both_directions(s1, s2, MetricSpec::simple(MetricKind::LogEuclid));
    const Eigen::MatrixXd t = d12.values.transpose();
    for (Eigen::Index k = 0; k < t.size(); ++k) CHECK(spdid::testing::rel_close(d21.values(k), t(k), 1e-10));
    CHECK(d21.probe_labels == d12.gallery_labels);
  }
  SUBCASE("alpha_z computes both directions") {
    const LabeledSet s{{"a", "b"}, {diag({1}), diag({std::numbers::e})}};
    const auto [d12, d21] = both_directions(s, s, MetricSpec::alpha_z(0.99, 1.0));
    CHECK(d21.values(1, 0) == doctest::Approx(scalar_alpha_z(std::numbers::e, 1, 0.99)));
    CHECK(d21.values != Eigen::MatrixXd(d12.values.transpose()));
  }
  SUBCASE("singleton") {
    const LabeledSet s{{"a"}, {diag({2, 3})}};
    const auto [d12, d21] = both_directions(s, s, MetricSpec::simple(MetricKind::AffineInvariant));
    CHECK(d12.values(0, 0) == doctest::Approx(0.0));
    CHECK(d21.values(0, 0) == doctest::Approx(0.0));
  }
}
