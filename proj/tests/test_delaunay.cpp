#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>

#include "cavdetect/delaunay.hpp"
#include "oracles.hpp"

using namespace cavdetect;

namespace {

Point3 rotate_z(const Point3& p, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y, p.z};
}

Point3 rotate_x(const Point3& p, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return {p.x, c * p.y - s * p.z, s * p.y + c * p.z};
}

Point3 rigid(const Point3& p, double a1, double a2, const Vec3& t) {
  return rotate_x(rotate_z(p, a1), a2) + t;
}

}  // namespace

TEST_CASE("circumsphere of the unit right tetrahedron") {
  auto cs = circumsphere({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1});
  REQUIRE(cs.has_value());
  CHECK(std::abs(cs->center.x - 0.5) < 1e-12);
  CHECK(std::abs(cs->center.y - 0.5) < 1e-12);
  CHECK(std::abs(cs->center.z - 0.5) < 1e-12);
  CHECK(std::abs(cs->radius - std::sqrt(3.0) / 2.0) < 1e-12);
}

TEST_CASE("circumsphere of a regular tetrahedron, edge 2") {
  double e = 2.0;
  Point3 a{0, 0, 0}, b{e, 0, 0}, c{e / 2, e * std::sqrt(3.0) / 2, 0};
  Point3 d{e / 2, e * std::sqrt(3.0) / 6, e * std::sqrt(6.0) / 3};
  auto cs = circumsphere(a, b, c, d);
  REQUIRE(cs.has_value());
  CHECK(std::abs(cs->radius - e * std::sqrt(6.0) / 4.0) < 1e-12);
  for (const Point3& p : {a, b, c, d})
    CHECK(std::abs(distance(cs->center, p) - cs->radius) < 1e-12);
}

TEST_CASE("circumsphere rejects coplanar points") {
  CHECK_FALSE(circumsphere({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}).has_value());
  CHECK_FALSE(circumsphere({0, 0, 0}, {1, 0, 0}, {1, 0, 0}, {0, 0, 1}).has_value());
}

TEST_CASE("circumsphere agrees with the elimination-based reference") {
  std::mt19937 rng(7);
  auto pts = oracles::random_points(rng, 400, 20.0);
  for (size_t i = 0; i + 4 <= pts.size(); i += 4) {
    auto mine = circumsphere(pts[i], pts[i + 1], pts[i + 2], pts[i + 3]);
    auto ref = oracles::reference_circumsphere(pts[i], pts[i + 1], pts[i + 2], pts[i + 3]);
    REQUIRE(mine.has_value() == ref.has_value());
    if (!mine)
      continue;
    CHECK(distance(mine->center, ref->center) < 1e-6 * (1.0 + ref->radius));
    CHECK(std::abs(mine->radius - ref->radius) < 1e-6 * (1.0 + ref->radius));
  }
}

TEST_CASE("delaunay of four points is the single tetrahedron") {
  std::vector<Point3> pts = {{0, 0, 0}, {4, 0, 0}, {0, 4, 0}, {0, 0, 4}};
  auto tets = delaunay(pts);
  REQUIRE(tets.size() == 1);
  CHECK(tets[0].vertices == std::array<int, 4>{0, 1, 2, 3});
}

TEST_CASE("delaunay error cases") {
  CHECK_THROWS_AS(delaunay(std::vector<Point3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}),
                  InsufficientDimensionError);
  CHECK_THROWS_AS(
      delaunay(std::vector<Point3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {2, 3, 0}}),
      InsufficientDimensionError);
  CHECK_THROWS_AS(
      delaunay(std::vector<Point3>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {4, 4, 4}}),
      InsufficientDimensionError);
  CHECK_THROWS_AS(delaunay(std::vector<Point3>{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}, {1, 1, 1}}),
                  InsufficientDimensionError);
}

TEST_CASE("delaunay skips exact duplicate points") {
  std::vector<Point3> pts = {{0, 0, 0}, {4, 0, 0}, {0, 4, 0}, {0, 0, 4}, {4, 0, 0}};
  auto tets = delaunay(pts);
  REQUIRE(tets.size() == 1);
  // the duplicate index 4 must not appear
  for (int v : tets[0].vertices)
    CHECK(v <= 3);
}

TEST_CASE("delaunay of five points in convex position matches the oracle") {
  std::vector<Point3> pts = {{0, 0, 0}, {6, 0, 0}, {0, 6, 0}, {0, 0, 6}, {5, 5, 5}};
  auto tets = delaunay(pts);
  auto expect = oracles::brute_force_delaunay(pts);
  CHECK(tets == expect);
  CHECK(tets.size() >= 2);
  CHECK(tets.size() <= 3);
}

TEST_CASE("delaunay equals brute-force enumeration on random point sets") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> nof(8, 50);
  for (int trial = 0; trial < 12; ++trial) {
    auto pts = oracles::random_points(rng, nof(rng), 20.0);
    auto got = delaunay(pts);
    auto expect = oracles::brute_force_delaunay(pts);
    REQUIRE(got == expect);
  }
}

TEST_CASE("every voronoi vertex satisfies the empty-sphere invariant") {
  std::mt19937 rng(5);
  auto pts = oracles::random_points(rng, 400, 25.0);
  auto tets = delaunay(pts);
  auto result = voronoi_vertices(pts, tets);
  CHECK(result.vertices.size() + result.dropped_degenerate == tets.size());
  for (const VoronoiVertex& v : result.vertices) {
    for (const Point3& p : pts)
      CHECK(distance(v.center, p) >= v.radius * (1.0 - 1e-9));
    for (int a : v.defining_atoms)
      CHECK(std::abs(distance(v.center, pts[a]) - v.radius) <= 1e-6 * v.radius);
  }
}

TEST_CASE("cospherical cube corners: all dual vertices share the circumsphere") {
  std::vector<Point3> pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
                             {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  auto tets = delaunay(pts);
  CHECK(tets.size() >= 5);  // 5 or 6 depending on the tie-break
  auto result = voronoi_vertices(pts, tets);
  REQUIRE(result.vertices.size() == tets.size());
  for (const VoronoiVertex& v : result.vertices) {
    CHECK(distance(v.center, {0.5, 0.5, 0.5}) < 1e-9);
    CHECK(std::abs(v.radius - std::sqrt(3.0) / 2.0) < 1e-9);
  }
}

TEST_CASE("voronoi vertex of a single tetrahedron is its circumcenter") {
  std::vector<Point3> pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto tets = delaunay(pts);
  auto result = voronoi_vertices(pts, tets);
  REQUIRE(result.vertices.size() == 1);
  CHECK(distance(result.vertices[0].center, {0.5, 0.5, 0.5}) < 1e-12);
  CHECK(result.vertices[0].defining_atoms == std::array<int, 4>{0, 1, 2, 3});
}

TEST_CASE("rigid motions move circumcenters along and leave radii unchanged") {
  std::mt19937 rng(11);
  auto pts = oracles::random_points(rng, 60, 15.0);
  auto tets = delaunay(pts);
  auto base = voronoi_vertices(pts, tets);

  double a1 = 0.73, a2 = -1.21;
  Vec3 t{5.5, -3.25, 12.0};
  std::vector<Point3> moved(pts.size());
  for (size_t i = 0; i < pts.size(); ++i)
    moved[i] = rigid(pts[i], a1, a2, t);
  auto moved_tets = delaunay(moved);
  CHECK(moved_tets == tets);  // same combinatorics in general position

  auto moved_result = voronoi_vertices(moved, moved_tets);
  REQUIRE(moved_result.vertices.size() == base.vertices.size());
  std::map<std::array<int, 4>, const VoronoiVertex*> by_tet;
  for (const VoronoiVertex& v : moved_result.vertices)
    by_tet[v.defining_atoms] = &v;
  for (const VoronoiVertex& v : base.vertices) {
    const VoronoiVertex* m = by_tet.at(v.defining_atoms);
    CHECK(distance(rigid(v.center, a1, a2, t), m->center) < 1e-6);
    CHECK(std::abs(v.radius - m->radius) < 1e-9 * v.radius);
  }
}

TEST_CASE("delaunay rejects non-finite input") {
  std::vector<Point3> pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, std::nan("")}};
  CHECK_THROWS_AS(delaunay(pts), std::invalid_argument);
}

TEST_CASE("delaunay scaling smoke test stays close to n log n growth") {
  // growth ratio for 8x the points: ~8 * log(16n)/log(2n) ~ 10.7 if n log n,
  // 64 if quadratic; allow generous slack for timer noise
  std::mt19937 rng(8);
  auto small = oracles::random_points(rng, 2000, 50.0);
  auto large = oracles::random_points(rng, 16000, 100.0);

  auto time_of = [](const std::vector<Point3>& pts) {
    auto start = std::chrono::steady_clock::now();
    auto tets = delaunay(pts);
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(!tets.empty());
    return sec;
  };
  time_of(small);  // warm-up
  double t_small = time_of(small);
  double t_large = time_of(large);
  CHECK(t_large < 40.0 * std::max(t_small, 1e-3));
}
