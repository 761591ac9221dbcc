#include "cavdetect/alpha.hpp"

#include <stdexcept>

namespace cavdetect {

std::vector<AlphaSphere> filter_alpha_spheres(std::span<const VoronoiVertex> vertices,
                                              const RadiusBand& band) {
  if (!(band.r_min > 0.0 && band.r_min < band.r_max))
    throw std::invalid_argument("alpha radius band requires 0 < r_min < r_max");
  std::vector<AlphaSphere> out;
  for (const VoronoiVertex& v : vertices)
    if (v.radius >= band.r_min && v.radius <= band.r_max)
      out.push_back({v.center, v.radius, v.defining_atoms});
  return out;
}

}  // namespace cavdetect
