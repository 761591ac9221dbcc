#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "cavdetect/dbscan.hpp"
#include "oracles.hpp"

using namespace cavdetect;

namespace {

// mixed blobs + background noise: exercises cores, borders and outliers
std::vector<Point3> clustered_points(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 60.0);
  std::normal_distribution<double> jitter(0.0, 1.2);
  std::uniform_int_distribution<int> blob_count(1, 5);
  std::vector<Point3> pts;
  int blobs = blob_count(rng);
  std::vector<Point3> centers;
  for (int b = 0; b < blobs; ++b)
    centers.push_back({u(rng), u(rng), u(rng)});
  std::uniform_int_distribution<int> pick(0, blobs);
  for (int i = 0; i < n; ++i) {
    int b = pick(rng);
    if (b == blobs) {
      pts.push_back({u(rng), u(rng), u(rng)});  // background
    } else {
      pts.push_back(centers[b] + Vec3{jitter(rng), jitter(rng), jitter(rng)});
    }
  }
  return pts;
}

std::set<std::set<int>> core_partition(std::span<const Point3> pts,
                                       const ClusterLabeling& labeling,
                                       const DbscanParams& params) {
  std::map<int, std::set<int>> by_label;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (labeling.labels[i] == kNoise)
      continue;
    int count = 0;
    for (size_t j = 0; j < pts.size(); ++j)
      if (distance(pts[i], pts[j]) <= params.eps)
        ++count;
    if (count >= params.min_pts)
      by_label[labeling.labels[i]].insert(static_cast<int>(i));
  }
  std::set<std::set<int>> partition;
  for (auto& [label, members] : by_label)
    partition.insert(members);
  return partition;
}

}  // namespace

TEST_CASE("an isolated point is noise") {
  std::vector<Point3> pts = {{0, 0, 0}};
  auto labeling = dbscan(pts, {1.0, 2});
  CHECK(labeling.labels[0] == kNoise);
  CHECK(labeling.n_clusters == 0);
}

TEST_CASE("five collinear points chain into one cluster") {
  std::vector<Point3> pts;
  for (int i = 0; i < 5; ++i)
    pts.push_back({0.5 * i, 0, 0});
  DbscanParams params{1.0, 3};
  auto labeling = dbscan(pts, params);
  CHECK(labeling.n_clusters == 1);
  for (int label : labeling.labels)
    CHECK(label == 0);
  CHECK(labeling.labels == oracles::reference_dbscan(pts, params).labels);
}

TEST_CASE("two well-separated blobs become two clusters") {
  std::mt19937 rng(3);
  std::normal_distribution<double> jitter(0.0, 0.5);
  std::vector<Point3> pts;
  for (int i = 0; i < 20; ++i)
    pts.push_back(Vec3{0, 0, 0} + Vec3{jitter(rng), jitter(rng), jitter(rng)});
  for (int i = 0; i < 20; ++i)
    pts.push_back(Vec3{50, 0, 0} + Vec3{jitter(rng), jitter(rng), jitter(rng)});
  DbscanParams params{2.0, 4};
  auto labeling = dbscan(pts, params);
  REQUIRE(labeling.n_clusters == 2);
  for (int i = 0; i < 20; ++i)
    CHECK(labeling.labels[i] == 0);
  for (int i = 20; i < 40; ++i)
    CHECK(labeling.labels[i] == 1);
  CHECK(labeling.labels == oracles::reference_dbscan(pts, params).labels);
}

TEST_CASE("grid implementation equals the reference on random configurations") {
  std::mt19937 rng(404);
  std::uniform_int_distribution<int> nof(1, 300);
  std::uniform_real_distribution<double> eps_of(0.8, 6.0);
  std::uniform_int_distribution<int> minpts_of(1, 8);
  for (int trial = 0; trial < 40; ++trial) {
    auto pts = clustered_points(rng, nof(rng));
    DbscanParams params{eps_of(rng), minpts_of(rng)};
    auto got = dbscan(pts, params);
    auto expect = oracles::reference_dbscan(pts, params);
    REQUIRE(got.labels == expect.labels);
    REQUIRE(got.n_clusters == expect.n_clusters);
  }
}

TEST_CASE("core-point partition is invariant under input permutation") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    auto pts = clustered_points(rng, 120);
    DbscanParams params{2.5, 4};
    auto base = core_partition(pts, dbscan(pts, params), params);

    std::vector<int> perm(pts.size());
    for (size_t i = 0; i < perm.size(); ++i)
      perm[i] = static_cast<int>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Point3> shuffled(pts.size());
    for (size_t i = 0; i < perm.size(); ++i)
      shuffled[i] = pts[perm[i]];
    auto shuffled_labeling = dbscan(shuffled, params);
    // map the shuffled labeling back to original indices
    ClusterLabeling mapped;
    mapped.labels.assign(pts.size(), kNoise);
    mapped.n_clusters = shuffled_labeling.n_clusters;
    for (size_t i = 0; i < perm.size(); ++i)
      mapped.labels[perm[i]] = shuffled_labeling.labels[i];
    CHECK(core_partition(pts, mapped, params) == base);
  }
}

TEST_CASE("small cluster merges into the nearest large cluster") {
  std::vector<Point3> pts;
  ClusterLabeling labeling;
  for (int i = 0; i < 10; ++i) {
    pts.push_back({0.1 * i, 0, 0});
    labeling.labels.push_back(0);
  }
  for (int i = 0; i < 2; ++i) {
    pts.push_back({3.0 + 0.1 * i, 0.4, 0});
    labeling.labels.push_back(1);
  }
  labeling.n_clusters = 2;
  auto merged = merge_small_clusters(labeling, pts, 3, 5.0);
  CHECK(merged.n_clusters == 1);
  for (int label : merged.labels)
    CHECK(label == 0);
}

TEST_CASE("small cluster too far from any large cluster becomes noise") {
  std::vector<Point3> pts;
  ClusterLabeling labeling;
  for (int i = 0; i < 10; ++i) {
    pts.push_back({0.1 * i, 0, 0});
    labeling.labels.push_back(0);
  }
  for (int i = 0; i < 2; ++i) {
    pts.push_back({50.0 + 0.1 * i, 0, 0});
    labeling.labels.push_back(1);
  }
  labeling.n_clusters = 2;
  auto merged = merge_small_clusters(labeling, pts, 3, 5.0);
  CHECK(merged.n_clusters == 1);
  for (int i = 0; i < 10; ++i)
    CHECK(merged.labels[i] == 0);
  CHECK(merged.labels[10] == kNoise);
  CHECK(merged.labels[11] == kNoise);
}

TEST_CASE("merge leaves a labeling with no undersized cluster and is idempotent") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto pts = clustered_points(rng, 150);
    auto labeling = dbscan(pts, {2.0, 3});
    int min_size = 4;
    double dist = 8.0;
    auto once = merge_small_clusters(labeling, pts, min_size, dist);
    std::vector<int> sizes(once.n_clusters, 0);
    for (int label : once.labels)
      if (label != kNoise)
        ++sizes[label];
    for (int s : sizes)
      CHECK(s >= min_size);
    auto twice = merge_small_clusters(once, pts, min_size, dist);
    CHECK(twice.labels == once.labels);
    CHECK(twice.n_clusters == once.n_clusters);
  }
}

TEST_CASE("merge with all clusters large is the identity") {
  std::vector<Point3> pts;
  ClusterLabeling labeling;
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < 5; ++i) {
      pts.push_back({20.0 * c + 0.2 * i, 0, 0});
      labeling.labels.push_back(c);
    }
  labeling.n_clusters = 2;
  auto merged = merge_small_clusters(labeling, pts, 3, 5.0);
  CHECK(merged.labels == labeling.labels);
  CHECK(merged.n_clusters == 2);
}

TEST_CASE("silhouette of two tight, far-apart pairs is nearly 1") {
  std::vector<Point3> pts = {{0, 0, 0}, {0.1, 0, 0}, {100, 0, 0}, {100.1, 0, 0}};
  ClusterLabeling labeling{{0, 0, 1, 1}, 2};
  auto score = silhouette_score(pts, labeling);
  REQUIRE(score.has_value());
  CHECK(*score > 0.99);
}

TEST_CASE("silhouette conventions: singletons score zero, one cluster undefined") {
  std::vector<Point3> pts = {{0, 0, 0}, {10, 0, 0}};
  ClusterLabeling two_singletons{{0, 1}, 2};
  auto score = silhouette_score(pts, two_singletons);
  REQUIRE(score.has_value());
  CHECK(*score == doctest::Approx(0.0));

  ClusterLabeling one_cluster{{0, 0}, 1};
  CHECK_FALSE(silhouette_score(pts, one_cluster).has_value());
}

TEST_CASE("silhouette matches the direct formula and stays within [-1, 1]") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 25; ++trial) {
    auto pts = clustered_points(rng, 80);
    auto labeling = dbscan(pts, {2.5, 3});
    auto mine = silhouette_score(pts, labeling);
    auto ref = oracles::reference_silhouette(pts, labeling);
    REQUIRE(mine.has_value() == ref.has_value());
    if (!mine)
      continue;
    CHECK(*mine == doctest::Approx(*ref).epsilon(1e-9));
    CHECK(*mine >= -1.0);
    CHECK(*mine <= 1.0);
  }
}
