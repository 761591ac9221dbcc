#include "cavdetect/pockets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "uniform_grid.hpp"

namespace cavdetect {

namespace {

const std::set<std::string>& polar_residues() {
  static const std::set<std::string> kPolar = {"ARG", "ASN", "ASP", "GLN", "GLU",
                                               "HIS", "LYS", "SER", "THR", "TYR"};
  return kPolar;
}

int residue_charge(const std::string& name) {
  if (name == "ASP" || name == "GLU")
    return -1;
  if (name == "LYS" || name == "ARG")
    return 1;
  return 0;
}

// 26 ray directions: all nonzero sign combinations of {-1,0,1}^3, normalized.
const std::array<Vec3, 26>& ray_directions() {
  static const std::array<Vec3, 26> kRays = [] {
    std::array<Vec3, 26> rays{};
    int k = 0;
    for (int x = -1; x <= 1; ++x)
      for (int y = -1; y <= 1; ++y)
        for (int z = -1; z <= 1; ++z) {
          if (x == 0 && y == 0 && z == 0)
            continue;
          Vec3 d{static_cast<double>(x), static_cast<double>(y), static_cast<double>(z)};
          rays[k++] = d / norm(d);
        }
    return rays;
  }();
  return kRays;
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) {
    for (int i = 0; i < n; ++i)
      parent[i] = i;
  }
  int find(int a) {
    while (parent[a] != a)
      a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// min-max normalized value -> bin ceil(bins*v) clamped to [1,bins]
int to_bin(double value, double lo, double hi, int bins) {
  if (!(hi > lo))
    return 1;
  double v = (value - lo) / (hi - lo);
  int bin = static_cast<int>(std::ceil(bins * v));
  return std::clamp(bin, 1, bins);
}

}  // namespace

std::string to_string(PocketShape shape) {
  switch (shape) {
    case PocketShape::Cleft:
      return "Cleft";
    case PocketShape::Channel:
      return "Channel";
    case PocketShape::Tunnel:
      return "Tunnel";
    case PocketShape::Void:
      return "Void";
  }
  return "Cleft";
}

std::vector<Pocket> assemble_pockets(const ClusterLabeling& labeling,
                                     std::span<const AlphaSphere> spheres) {
  std::vector<Pocket> pockets(labeling.n_clusters);
  for (size_t i = 0; i < spheres.size(); ++i) {
    int c = labeling.labels[i];
    if (c == kNoise)
      continue;
    pockets[c].spheres.push_back(spheres[i]);
  }
  std::erase_if(pockets, [](const Pocket& p) { return p.spheres.empty(); });

  std::vector<int> order(pockets.size());
  for (size_t i = 0; i < order.size(); ++i)
    order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return pockets[a].spheres.size() > pockets[b].spheres.size();
  });

  std::vector<Pocket> out;
  out.reserve(pockets.size());
  for (int idx : order)
    out.push_back(std::move(pockets[idx]));

  for (size_t i = 0; i < out.size(); ++i) {
    Pocket& p = out[i];
    p.id = static_cast<int>(i) + 1;
    Vec3 sum;
    std::set<int> lining;
    for (const AlphaSphere& s : p.spheres) {
      sum += s.center;
      lining.insert(s.defining_atoms.begin(), s.defining_atoms.end());
    }
    p.centroid = sum / static_cast<double>(p.spheres.size());
    p.lining_atoms.assign(lining.begin(), lining.end());
    p.descriptors.n_spheres = static_cast<int>(p.spheres.size());
  }
  return out;
}

bool pocketpicker_match(const Pocket& pocket, const Ligand& ligand, double pp_dist) {
  for (const Atom& a : ligand.atoms)
    if (distance(pocket.centroid, a.position) <= pp_dist)
      return true;
  return false;
}

bool mutual_overlap_match(const Pocket& pocket, const Ligand& ligand, double mo_dist,
                          double mo_fraction) {
  if (ligand.atoms.empty())
    return false;
  int covered = 0;
  for (const Atom& a : ligand.atoms) {
    for (const AlphaSphere& s : pocket.spheres) {
      if (distance(a.position, s.center) <= mo_dist) {
        ++covered;
        break;
      }
    }
  }
  return covered >= mo_fraction * static_cast<double>(ligand.atoms.size());
}

SiteClassification classify_sites(std::vector<Pocket>& pockets, std::span<const Ligand> ligands,
                                  const SiteCriteria& criteria) {
  SiteClassification result;
  std::vector<bool> ligand_hit(ligands.size(), false);
  for (Pocket& p : pockets) {
    p.matched_ligands.clear();
    for (size_t li = 0; li < ligands.size(); ++li) {
      const Ligand& lig = ligands[li];
      bool hit = false;
      switch (criteria.mode) {
        case MatchMode::PocketPicker:
          hit = pocketpicker_match(p, lig, criteria.pp_dist);
          break;
        case MatchMode::MutualOverlap:
          hit = mutual_overlap_match(p, lig, criteria.mo_dist, criteria.mo_fraction);
          break;
        case MatchMode::Either:
          hit = pocketpicker_match(p, lig, criteria.pp_dist) ||
                mutual_overlap_match(p, lig, criteria.mo_dist, criteria.mo_fraction);
          break;
        case MatchMode::Both:
          hit = pocketpicker_match(p, lig, criteria.pp_dist) &&
                mutual_overlap_match(p, lig, criteria.mo_dist, criteria.mo_fraction);
          break;
      }
      if (hit) {
        p.matched_ligands.push_back(lig.key);
        ligand_hit[li] = true;
      }
    }
    p.is_active = !p.matched_ligands.empty();
  }
  for (size_t li = 0; li < ligands.size(); ++li)
    (ligand_hit[li] ? result.active_ligands : result.non_active_ligands)
        .push_back(ligands[li].key);
  return result;
}

double compute_density(const Pocket& pocket) {
  const auto& s = pocket.spheres;
  if (s.size() < 2)
    return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      sum += distance(s[i].center, s[j].center);
  double pairs = 0.5 * static_cast<double>(s.size()) * static_cast<double>(s.size() - 1);
  return sum / pairs;
}

std::pair<int, int> compute_polarity_charge(const Pocket& pocket, std::span<const Atom> atoms) {
  std::set<std::tuple<std::string, int, std::string>> residues;
  for (int idx : pocket.lining_atoms) {
    const Atom& a = atoms[idx];
    residues.insert({a.chain_id, a.residue_seq, a.residue_name});
  }
  int polarity = 0, charge = 0;
  for (const auto& [chain, seq, name] : residues) {
    if (polar_residues().count(name))
      ++polarity;
    charge += residue_charge(name);
  }
  return {polarity, charge};
}

std::vector<bool> exposed_spheres(const Pocket& pocket, std::span<const Atom> atoms,
                                  const ShapeParams& params) {
  double max_block = 0.0;
  std::vector<Point3> positions(atoms.size());
  for (size_t i = 0; i < atoms.size(); ++i) {
    positions[i] = atoms[i].position;
    max_block = std::max(max_block, atoms[i].vdw_radius + params.probe);
  }
  // cell >= max blocking radius + half the sampling step, so a 3x3x3 block
  // around each ray sample sees every atom that can intersect the ray
  const double step = 2.0;
  const double cell = max_block + step;
  detail::UniformGrid grid(positions, cell);

  std::vector<bool> exposed(pocket.spheres.size(), false);
  std::vector<int> stamp(atoms.size(), -1);
  int ray_id = 0;

  for (size_t si = 0; si < pocket.spheres.size(); ++si) {
    const Point3 origin = pocket.spheres[si].center;
    for (const Vec3& dir : ray_directions()) {
      ++ray_id;
      bool blocked = false;
      for (double t = 0.0; t <= params.escape_length && !blocked; t += step) {
        Point3 sample = origin + dir * t;
        grid.visit_block(sample, 1, [&](int ai) {
          if (blocked || stamp[ai] == ray_id)
            return;
          stamp[ai] = ray_id;
          const Vec3 ap = positions[ai] - origin;
          double proj = std::clamp(dot(ap, dir), 0.0, params.escape_length);
          Point3 closest = origin + dir * proj;
          double r = atoms[ai].vdw_radius + params.probe;
          if (distance2(closest, positions[ai]) < r * r)
            blocked = true;
        });
      }
      if (!blocked) {
        exposed[si] = true;
        break;
      }
    }
  }
  return exposed;
}

namespace {

// eigenvalues of a symmetric 3x3 matrix (ascending), analytic method
std::array<double, 3> symmetric_eigenvalues(const std::array<std::array<double, 3>, 3>& m) {
  double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
  double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  if (p1 == 0.0) {
    std::array<double, 3> eig = {m[0][0], m[1][1], m[2][2]};
    std::sort(eig.begin(), eig.end());
    return eig;
  }
  double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
              (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
  double p = std::sqrt(p2 / 6.0);
  std::array<std::array<double, 3>, 3> b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / p;
  double detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  double r = std::clamp(detb / 2.0, -1.0, 1.0);
  double phi = std::acos(r) / 3.0;
  double e1 = q + 2.0 * p * std::cos(phi);
  double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  double e2 = 3.0 * q - e1 - e3;
  std::array<double, 3> eig = {e1, e2, e3};
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace

PocketShape classify_shape(const Pocket& pocket, std::span<const Atom> atoms,
                           const ShapeParams& params) {
  std::vector<bool> exposed = exposed_spheres(pocket, atoms, params);

  std::vector<int> open;
  for (size_t i = 0; i < exposed.size(); ++i)
    if (exposed[i])
      open.push_back(static_cast<int>(i));
  if (open.empty())
    return PocketShape::Void;

  DisjointSet ds(static_cast<int>(open.size()));
  for (size_t a = 0; a < open.size(); ++a)
    for (size_t b = a + 1; b < open.size(); ++b)
      if (distance(pocket.spheres[open[a]].center, pocket.spheres[open[b]].center) <=
          params.mouth_link)
        ds.unite(static_cast<int>(a), static_cast<int>(b));
  std::set<int> mouths;
  for (size_t a = 0; a < open.size(); ++a)
    mouths.insert(ds.find(static_cast<int>(a)));

  if (mouths.size() >= 2)
    return PocketShape::Channel;

  // one mouth: elongation of the sphere cloud decides tunnel vs cleft
  const auto& spheres = pocket.spheres;
  const double n = static_cast<double>(spheres.size());
  Vec3 mean;
  for (const AlphaSphere& s : spheres)
    mean += s.center;
  mean = mean / n;
  std::array<std::array<double, 3>, 3> cov{};
  for (const AlphaSphere& s : spheres) {
    Vec3 d = s.center - mean;
    double v[3] = {d.x, d.y, d.z};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        cov[i][j] += v[i] * v[j] / n;
  }
  std::array<double, 3> eig = symmetric_eigenvalues(cov);
  double lmin = std::max(eig[0], 1e-6);
  double elongation = std::sqrt(std::max(eig[2], 0.0) / lmin);
  return elongation >= params.min_elongation ? PocketShape::Tunnel : PocketShape::Cleft;
}

void bin_descriptors(std::vector<Pocket>& pockets) {
  if (pockets.empty())
    return;
  double size_lo = pockets[0].descriptors.n_spheres, size_hi = size_lo;
  double pol_lo = pockets[0].descriptors.polarity_score, pol_hi = pol_lo;
  for (const Pocket& p : pockets) {
    size_lo = std::min(size_lo, static_cast<double>(p.descriptors.n_spheres));
    size_hi = std::max(size_hi, static_cast<double>(p.descriptors.n_spheres));
    pol_lo = std::min(pol_lo, static_cast<double>(p.descriptors.polarity_score));
    pol_hi = std::max(pol_hi, static_cast<double>(p.descriptors.polarity_score));
  }
  for (Pocket& p : pockets) {
    p.descriptors.normalized_size_bin = to_bin(p.descriptors.n_spheres, size_lo, size_hi, 6);
    p.descriptors.hydrophilicity_bin = to_bin(p.descriptors.polarity_score, pol_lo, pol_hi, 5);
  }
}

}  // namespace cavdetect
