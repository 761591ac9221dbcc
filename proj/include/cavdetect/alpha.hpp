#pragma once

#include <span>
#include <vector>

#include "cavdetect/delaunay.hpp"

namespace cavdetect {

struct AlphaSphere {
  Point3 center;
  double radius = 0.0;
  std::array<int, 4> defining_atoms{};
};

// Radius band for alpha-sphere selection; bounds are inclusive at both ends.
struct RadiusBand {
  double r_min = 3.0;
  double r_max = 5.0;
};

// Keeps exactly the vertices with r_min <= radius <= r_max, order-preserving.
// Throws std::invalid_argument unless 0 < r_min < r_max.
std::vector<AlphaSphere> filter_alpha_spheres(std::span<const VoronoiVertex> vertices,
                                              const RadiusBand& band);

}  // namespace cavdetect
