#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "cavdetect/geom3.hpp"

namespace cavdetect::detail {

// Hash grid over 3D points; cell size chosen by the caller so that range
// queries only need a fixed block of neighboring cells.
class UniformGrid {
 public:
  UniformGrid(std::span<const Point3> points, double cell) : points_(points), cell_(cell) {
    // cell indices must fit the 21-bit packing; widen the cell when the
    // requested size is tiny relative to the coordinate magnitudes
    double max_abs = 1.0;
    for (const Point3& p : points)
      max_abs = std::max({max_abs, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    cell_ = std::max(cell_, max_abs / 500000.0);
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
      cells_[key_of(points[i])].push_back(i);
  }

  // Visit indices of all points in the (2r+1)^3 cell block around p.
  template <typename Fn>
  void visit_block(const Point3& p, int r, Fn&& fn) const {
    std::int64_t cx = coord(p.x), cy = coord(p.y), cz = coord(p.z);
    for (std::int64_t dx = -r; dx <= r; ++dx)
      for (std::int64_t dy = -r; dy <= r; ++dy)
        for (std::int64_t dz = -r; dz <= r; ++dz) {
          auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
          if (it == cells_.end())
            continue;
          for (int idx : it->second)
            fn(idx);
        }
  }

  // All indices within (inclusive) Euclidean distance `radius <= cell` of p,
  // sorted ascending.
  std::vector<int> within(const Point3& p, double radius) const {
    std::vector<int> out;
    double r2 = radius * radius;
    visit_block(p, 1, [&](int idx) {
      if (distance2(points_[idx], p) <= r2)
        out.push_back(idx);
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  double cell() const { return cell_; }

 private:
  std::int64_t coord(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }

  static std::int64_t pack(std::int64_t x, std::int64_t y, std::int64_t z) {
    // 21 bits per axis, offset to stay positive
    constexpr std::int64_t kBias = 1 << 20;
    return ((x + kBias) << 42) | ((y + kBias) << 21) | (z + kBias);
  }

  std::int64_t key_of(const Point3& p) const { return pack(coord(p.x), coord(p.y), coord(p.z)); }

  std::span<const Point3> points_;
  double cell_;
  std::unordered_map<std::int64_t, std::vector<int>> cells_;
};

}  // namespace cavdetect::detail
