#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cavdetect/geom3.hpp"

namespace cavdetect {

inline constexpr int kNoise = -1;

struct DbscanParams {
  double eps = 4.5;  // neighborhood radius (inclusive)
  int min_pts = 4;   // core threshold; the neighborhood count includes the point itself
};

struct ClusterLabeling {
  std::vector<int> labels;  // dense cluster ids 0..n_clusters-1, or kNoise
  int n_clusters = 0;
};

// Standard DBSCAN over Euclidean distance. Deterministic: points are
// processed in input order, so a border point reachable from several
// clusters joins the first cluster grown.
ClusterLabeling dbscan(std::span<const Point3> centers, const DbscanParams& params);

// Every cluster smaller than min_size is absorbed into the nearest cluster
// of size >= min_size (centroid distance <= merge_dist) or relabeled noise.
// Small clusters are processed smallest-first, ties by lower id; sizes and
// centroids reflect earlier absorptions. Ids are re-densified afterwards.
ClusterLabeling merge_small_clusters(const ClusterLabeling& labeling,
                                     std::span<const Point3> centers, int min_size,
                                     double merge_dist);

// Mean silhouette over non-noise points; s(i) = 0 for singleton clusters.
// Returns nullopt when fewer than 2 clusters or 2 non-noise points exist.
std::optional<double> silhouette_score(std::span<const Point3> centers,
                                       const ClusterLabeling& labeling);

}  // namespace cavdetect
