#include "cavdetect/dbscan.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

#include "uniform_grid.hpp"

namespace cavdetect {

ClusterLabeling dbscan(std::span<const Point3> centers, const DbscanParams& params) {
  if (!(params.eps > 0.0) || params.min_pts < 1)
    throw std::invalid_argument("dbscan requires eps > 0 and min_pts >= 1");

  const int n = static_cast<int>(centers.size());
  constexpr int kUnvisited = -2;
  ClusterLabeling result;
  result.labels.assign(n, kUnvisited);
  if (n == 0)
    return result;

  detail::UniformGrid grid(centers, params.eps);
  auto neighbors = [&](int i) { return grid.within(centers[i], params.eps); };

  int cid = 0;
  std::deque<int> queue;
  for (int i = 0; i < n; ++i) {
    if (result.labels[i] != kUnvisited)
      continue;
    std::vector<int> seed = neighbors(i);
    if (static_cast<int>(seed.size()) < params.min_pts) {
      result.labels[i] = kNoise;
      continue;
    }
    result.labels[i] = cid;
    queue.assign(seed.begin(), seed.end());
    while (!queue.empty()) {
      int j = queue.front();
      queue.pop_front();
      if (result.labels[j] == kNoise)
        result.labels[j] = cid;  // border point claimed by the first cluster
      if (result.labels[j] != kUnvisited)
        continue;
      result.labels[j] = cid;
      std::vector<int> nj = neighbors(j);
      if (static_cast<int>(nj.size()) >= params.min_pts)
        queue.insert(queue.end(), nj.begin(), nj.end());
    }
    ++cid;
  }
  result.n_clusters = cid;
  return result;
}

ClusterLabeling merge_small_clusters(const ClusterLabeling& labeling,
                                     std::span<const Point3> centers, int min_size,
                                     double merge_dist) {
  const int n = static_cast<int>(centers.size());
  const int k = labeling.n_clusters;
  ClusterLabeling result = labeling;
  if (k == 0 || min_size <= 1)
    return result;

  std::vector<int> size(k, 0);
  std::vector<Vec3> sum(k);
  for (int i = 0; i < n; ++i) {
    int c = result.labels[i];
    if (c == kNoise)
      continue;
    ++size[c];
    sum[c] += centers[i];
  }

  std::vector<int> small;
  for (int c = 0; c < k; ++c)
    if (size[c] > 0 && size[c] < min_size)
      small.push_back(c);
  std::sort(small.begin(), small.end(), [&](int a, int b) {
    return size[a] != size[b] ? size[a] < size[b] : a < b;
  });

  std::vector<int> remap(k);
  for (int c = 0; c < k; ++c)
    remap[c] = c;

  for (int c : small) {
    Vec3 centroid = sum[c] / size[c];
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int t = 0; t < k; ++t) {
      if (t == c || size[t] < min_size)
        continue;
      double d2 = distance2(centroid, sum[t] / size[t]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = t;
      }
    }
    if (best >= 0 && best_d2 <= merge_dist * merge_dist) {
      size[best] += size[c];
      sum[best] += sum[c];
      remap[c] = best;
    } else {
      remap[c] = kNoise;
    }
    size[c] = 0;
  }

  // small clusters never receive members, so remap has no chains; densify
  // the surviving ids in ascending order
  std::vector<int> dense(k, kNoise);
  int next = 0;
  for (int c = 0; c < k; ++c)
    if (remap[c] == c && size[c] > 0)
      dense[c] = next++;
  for (int i = 0; i < n; ++i) {
    int c = result.labels[i];
    if (c == kNoise)
      continue;
    int target = remap[c];
    result.labels[i] = target == kNoise ? kNoise : dense[target];
  }
  result.n_clusters = next;
  return result;
}

std::optional<double> silhouette_score(std::span<const Point3> centers,
                                       const ClusterLabeling& labeling) {
  const int n = static_cast<int>(centers.size());
  std::vector<int> members;
  int max_label = -1;
  for (int i = 0; i < n; ++i)
    if (labeling.labels[i] != kNoise) {
      members.push_back(i);
      max_label = std::max(max_label, labeling.labels[i]);
    }
  const int k = max_label + 1;
  std::vector<int> cluster_size(k, 0);
  for (int i : members)
    ++cluster_size[labeling.labels[i]];
  int populated = 0;
  for (int c = 0; c < k; ++c)
    if (cluster_size[c] > 0)
      ++populated;
  if (populated < 2 || members.size() < 2)
    return std::nullopt;

  double total = 0.0;
  std::vector<double> mean_dist(k);
  for (int i : members) {
    int ci = labeling.labels[i];
    if (cluster_size[ci] == 1) {
      continue;  // singleton convention: s(i) = 0
    }
    std::fill(mean_dist.begin(), mean_dist.end(), 0.0);
    for (int j : members)
      if (j != i)
        mean_dist[labeling.labels[j]] += distance(centers[i], centers[j]);
    double a = mean_dist[ci] / (cluster_size[ci] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      if (c == ci || cluster_size[c] == 0)
        continue;
      b = std::min(b, mean_dist[c] / cluster_size[c]);
    }
    double denom = std::max(a, b);
    total += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(members.size());
}

}  // namespace cavdetect
