#include "cavdetect/delaunay.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>

#include "cavdetect/predicates.hpp"

namespace cavdetect {

std::optional<Circumsphere> circumsphere(const Point3& p1, const Point3& p2, const Point3& p3,
                                         const Point3& p4) {
  // Solve 2*(q - p1) . y = |q - p1|^2 for q in {p2,p3,p4}; center = p1 + y.
  Vec3 b = p2 - p1, c = p3 - p1, d = p4 - p1;
  double m[3][4] = {
      {2 * b.x, 2 * b.y, 2 * b.z, norm2(b)},
      {2 * c.x, 2 * c.y, 2 * c.z, norm2(c)},
      {2 * d.x, 2 * d.y, 2 * d.z, norm2(d)},
  };
  auto det3 = [&](int c0, int c1, int c2) {
    return m[0][c0] * (m[1][c1] * m[2][c2] - m[1][c2] * m[2][c1]) -
           m[0][c1] * (m[1][c0] * m[2][c2] - m[1][c2] * m[2][c0]) +
           m[0][c2] * (m[1][c0] * m[2][c1] - m[1][c1] * m[2][c0]);
  };
  double det = det3(0, 1, 2);
  double hadamard = std::sqrt(norm2({m[0][0], m[0][1], m[0][2]}) *
                              norm2({m[1][0], m[1][1], m[1][2]}) *
                              norm2({m[2][0], m[2][1], m[2][2]}));
  if (std::abs(det) <= 1e-12 * hadamard)
    return std::nullopt;  // coplanar or duplicated within tolerance

  Vec3 y = {det3(3, 1, 2) / det, det3(0, 3, 2) / det, det3(0, 1, 3) / det};
  return Circumsphere{p1 + y, norm(y)};
}

namespace {

constexpr int kGhost = -1;
constexpr int kNone = -1;

// Face j of a positively oriented cell, ordered so orient3d(face, p) > 0
// means p lies strictly outside across that face.
constexpr int kFace[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};

struct Cell {
  std::array<int, 4> v{};    // vertex indices; kGhost marks the hull vertex (slot 3)
  std::array<int, 4> nbr{};  // neighbor across the face opposite v[i]
  bool alive = true;
  std::uint32_t visit_epoch = 0;
  bool in_conflict = false;
};

class Mesh {
 public:
  explicit Mesh(std::span<const Point3> pts) : pts_(pts) {}

  void build() {
    init_first_cell();
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i) {
      if (i == init_[0] || i == init_[1] || i == init_[2] || i == init_[3])
        continue;
      insert(i);
    }
  }

  std::vector<Tetrahedron> finite_tets() const {
    std::vector<Tetrahedron> out;
    for (const Cell& c : cells_) {
      if (!c.alive || c.v[3] == kGhost)
        continue;
      Tetrahedron t{{c.v[0], c.v[1], c.v[2], c.v[3]}};
      std::sort(t.vertices.begin(), t.vertices.end());
      out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int skipped_points() const { return skipped_; }

 private:
  bool is_ghost(int cell) const { return cells_[cell].v[3] == kGhost; }

  void init_first_cell() {
    const int n = static_cast<int>(pts_.size());
    if (n < 4)
      throw InsufficientDimensionError("delaunay: need at least 4 points");

    int i0 = 0;
    int i1 = kNone;
    for (int i = 1; i < n; ++i)
      if (!(pts_[i] == pts_[i0])) {
        i1 = i;
        break;
      }
    if (i1 == kNone)
      throw InsufficientDimensionError("delaunay: all points coincide");

    // widest triangle base, so an exactly collinear prefix cannot fool us
    int i2 = kNone;
    double best = 0.0;
    Vec3 e1 = pts_[i1] - pts_[i0];
    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1)
        continue;
      double a = norm2(cross(e1, pts_[i] - pts_[i0]));
      if (a > best) {
        best = a;
        i2 = i;
      }
    }
    if (i2 == kNone)
      throw InsufficientDimensionError("delaunay: all points collinear");

    int i3 = kNone;
    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1 || i == i2)
        continue;
      if (orient3d_sign(pts_[i0], pts_[i1], pts_[i2], pts_[i]) != 0) {
        i3 = i;
        break;
      }
    }
    if (i3 == kNone)
      throw InsufficientDimensionError("delaunay: all points coplanar");

    if (orient3d_sign(pts_[i0], pts_[i1], pts_[i2], pts_[i3]) < 0)
      std::swap(i1, i2);
    init_ = {i0, i1, i2, i3};

    Cell real;
    real.v = {i0, i1, i2, i3};
    cells_.push_back(real);

    // one ghost per hull face
    for (int j = 0; j < 4; ++j) {
      Cell g;
      g.v = {cells_[0].v[kFace[j][0]], cells_[0].v[kFace[j][1]], cells_[0].v[kFace[j][2]], kGhost};
      g.nbr = {kNone, kNone, kNone, 0};
      cells_.push_back(g);
      cells_[0].nbr[j] = static_cast<int>(cells_.size()) - 1;
    }
    // ghost-ghost adjacency: each hull edge is shared by exactly two ghosts
    std::map<std::pair<int, int>, std::pair<int, int>> edges;
    for (int g = 1; g <= 4; ++g) {
      for (int m = 0; m < 3; ++m) {
        // face m of the ghost omits base vertex m, keeps the other two + ghost
        int a = cells_[g].v[(m + 1) % 3];
        int b = cells_[g].v[(m + 2) % 3];
        std::pair<int, int> key = std::minmax(a, b);
        auto it = edges.find(key);
        if (it == edges.end()) {
          edges[key] = {g, m};
        } else {
          cells_[g].nbr[m] = it->second.first;
          cells_[it->second.first].nbr[it->second.second] = g;
        }
      }
    }
    hint_ = 0;
  }

  bool conflict(int cell, const Point3& p, int pi) {
    const Cell& c = cells_[cell];
    if (c.v[3] != kGhost)
      return insphere_conflict(pts_[c.v[0]], pts_[c.v[1]], pts_[c.v[2]], pts_[c.v[3]], p, c.v[0],
                               c.v[1], c.v[2], c.v[3], pi);
    // Ghost cell: conflict iff p lies strictly beyond the hull face. Ties
    // (p on the face plane) delegate to the real neighbor below the face,
    // which by the sphere-section argument gives the identical answer the
    // perturbed metric requires.
    int real = c.nbr[3];
    const Cell& r = cells_[real];
    int q = kNone;
    for (int k = 0; k < 4; ++k)
      if (r.v[k] != c.v[0] && r.v[k] != c.v[1] && r.v[k] != c.v[2])
        q = r.v[k];
    int side_in = orient3d_sign(pts_[c.v[0]], pts_[c.v[1]], pts_[c.v[2]], pts_[q]);
    if (side_in == 0)
      return conflict(real, p, pi);  // degenerate base, fall back to the real cell
    int o = orient3d_sign(pts_[c.v[0]], pts_[c.v[1]], pts_[c.v[2]], p);
    if (o == 0)
      return conflict(real, p, pi);
    return o != side_in;
  }

  // Visibility walk through real cells. Returns the cell containing p, or a
  // ghost cell when p lies outside the current hull.
  int locate(const Point3& p) {
    int cur = hint_;
    std::size_t guard = 8 * cells_.size() + 64;
    while (guard-- > 0) {
      const Cell& c = cells_[cur];
      int next = kNone;
      for (int j = 0; j < 4 && next == kNone; ++j) {
        const Point3& f0 = pts_[c.v[kFace[j][0]]];
        const Point3& f1 = pts_[c.v[kFace[j][1]]];
        const Point3& f2 = pts_[c.v[kFace[j][2]]];
        if (orient3d_sign(f0, f1, f2, p) > 0)
          next = c.nbr[j];
      }
      if (next == kNone)
        return cur;
      if (is_ghost(next))
        return next;
      cur = next;
    }
    throw DegeneracyError("delaunay: point location failed to terminate");
  }

  void insert(int pi) {
    const Point3& p = pts_[pi];
    int loc = locate(p);

    if (!is_ghost(loc)) {
      for (int k = 0; k < 4; ++k)
        if (pts_[cells_[loc].v[k]] == p) {
          ++skipped_;  // exact duplicate contributes nothing
          return;
        }
    }

    ++epoch_;
    auto visit = [&](int cell) {
      Cell& c = cells_[cell];
      if (c.visit_epoch != epoch_) {
        c.visit_epoch = epoch_;
        c.in_conflict = conflict(cell, p, pi);
      }
      return c.in_conflict;
    };

    if (!visit(loc)) {
      // The located cell can fail the perturbed conflict test only in
      // pathological near-ties; rescan before giving up on the point.
      loc = kNone;
      for (int cidx = 0; cidx < static_cast<int>(cells_.size()) && loc == kNone; ++cidx)
        if (cells_[cidx].alive && visit(cidx))
          loc = cidx;
      if (loc == kNone) {
        ++skipped_;
        return;
      }
    }

    std::vector<int> bad{loc};
    std::vector<int> stack{loc};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int j = 0; j < 4; ++j) {
        int nb = cells_[cur].nbr[j];
        if (cells_[nb].visit_epoch == epoch_)
          continue;
        if (visit(nb)) {
          bad.push_back(nb);
          stack.push_back(nb);
        }
      }
    }

    // cavity boundary: faces of bad cells whose neighbor stayed good
    struct Boundary {
      int bad_cell, face, good_cell;
    };
    std::vector<Boundary> boundary;
    for (int bc : bad)
      for (int j = 0; j < 4; ++j) {
        int nb = cells_[bc].nbr[j];
        if (!(cells_[nb].visit_epoch == epoch_ && cells_[nb].in_conflict))
          boundary.push_back({bc, j, nb});
      }

    int first_real = kNone;
    std::map<std::pair<int, int>, std::pair<int, int>> open_faces;  // edge -> (cell, slot)

    for (const Boundary& bf : boundary) {
      const Cell& t = cells_[bf.bad_cell];
      std::array<int, 3> s = {t.v[kFace[bf.face][0]], t.v[kFace[bf.face][1]],
                              t.v[kFace[bf.face][2]]};
      Cell nc;
      int boundary_slot;
      if (s[0] != kGhost && s[1] != kGhost && s[2] != kGhost) {
        int o = orient3d_sign(pts_[s[0]], pts_[s[1]], pts_[s[2]], p);
        if (o == 0)
          throw DegeneracyError("delaunay: degenerate cell survived tie-break");
        if (o < 0)
          std::swap(s[1], s[2]);
        nc.v = {s[0], s[1], s[2], pi};
        boundary_slot = 3;
      } else {
        // horizon edge: the two real vertices of the shared ghost face
        std::array<int, 2> e{};
        int k = 0;
        for (int vtx : s)
          if (vtx != kGhost)
            e[k++] = vtx;
        nc.v = {e[0], e[1], pi, kGhost};
        boundary_slot = 2;
      }
      nc.nbr = {kNone, kNone, kNone, kNone};
      nc.nbr[boundary_slot] = bf.good_cell;
      cells_.push_back(nc);
      int id = static_cast<int>(cells_.size()) - 1;
      if (nc.v[3] != kGhost && first_real == kNone)
        first_real = id;

      // patch the good neighbor's back-pointer
      Cell& u = cells_[bf.good_cell];
      for (int j = 0; j < 4; ++j)
        if (u.nbr[j] == bf.bad_cell)
          u.nbr[j] = id;

      // remaining three faces all contain pi; match them pairwise by the
      // other two vertices
      for (int j = 0; j < 4; ++j) {
        if (j == boundary_slot)
          continue;
        std::array<int, 2> others{};
        int kk = 0;
        for (int m = 0; m < 3; ++m) {
          int vtx = cells_[id].v[kFace[j][m]];
          if (vtx != pi)
            others[kk++] = vtx;
        }
        std::pair<int, int> key = std::minmax(others[0], others[1]);
        auto it = open_faces.find(key);
        if (it == open_faces.end()) {
          open_faces[key] = {id, j};
        } else {
          cells_[id].nbr[j] = it->second.first;
          cells_[it->second.first].nbr[it->second.second] = id;
          open_faces.erase(it);
        }
      }
    }
    if (!open_faces.empty())
      throw DegeneracyError("delaunay: cavity boundary failed to close");

    for (int bc : bad)
      cells_[bc].alive = false;
    hint_ = first_real;
  }

  std::span<const Point3> pts_;
  std::vector<Cell> cells_;
  std::array<int, 4> init_{};
  std::uint32_t epoch_ = 0;
  int hint_ = kNone;
  int skipped_ = 0;
};

}  // namespace

std::vector<Tetrahedron> delaunay(std::span<const Point3> points) {
  for (const Point3& p : points)
    if (!is_finite(p))
      throw std::invalid_argument("delaunay: non-finite coordinate");
  Mesh mesh(points);
  mesh.build();
  return mesh.finite_tets();
}

VoronoiResult voronoi_vertices(std::span<const Point3> points, std::span<const Tetrahedron> tets) {
  VoronoiResult result;
  result.vertices.reserve(tets.size());
  for (const Tetrahedron& t : tets) {
    auto cs = circumsphere(points[t.vertices[0]], points[t.vertices[1]], points[t.vertices[2]],
                           points[t.vertices[3]]);
    if (!cs) {
      ++result.dropped_degenerate;
      continue;
    }
    bool ok = cs->radius > 0;
    for (int k = 1; k < 4 && ok; ++k) {
      double d = distance(cs->center, points[t.vertices[k]]);
      if (std::abs(d - cs->radius) > 1e-6 * cs->radius)
        ok = false;
    }
    if (!ok) {
      ++result.dropped_degenerate;
      continue;
    }
    result.vertices.push_back({cs->center, cs->radius, t.vertices});
  }
  return result;
}

}  // namespace cavdetect
