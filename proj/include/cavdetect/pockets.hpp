#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cavdetect/alpha.hpp"
#include "cavdetect/dbscan.hpp"
#include "cavdetect/pdb.hpp"

namespace cavdetect {

enum class PocketShape { Cleft, Channel, Tunnel, Void };

std::string to_string(PocketShape shape);

struct Descriptors {
  int n_spheres = 0;
  double density = 0.0;        // mean pairwise distance of sphere centers
  int polarity_score = 0;      // polar lining residues
  int charge_score = 0;        // net formal charge of lining residues
  int normalized_size_bin = 1;     // 1..6, smallest to largest
  int hydrophilicity_bin = 1;      // 1..5, least to most hydrophilic
};

struct Pocket {
  int id = 0;  // 1-based rank, largest pocket first
  std::vector<AlphaSphere> spheres;
  std::vector<int> lining_atoms;  // sorted unique union of defining atoms
  Point3 centroid;                // mean of sphere centers
  Descriptors descriptors;
  PocketShape shape = PocketShape::Cleft;
  bool is_active = false;
  std::vector<LigandKey> matched_ligands;
};

enum class MatchMode { PocketPicker, MutualOverlap, Either, Both };

struct SiteCriteria {
  double pp_dist = 4.0;     // centroid-to-ligand-atom threshold
  double mo_dist = 3.0;     // ligand-atom-to-sphere-center threshold
  double mo_fraction = 0.5; // fraction of ligand atoms that must be covered
  MatchMode mode = MatchMode::Either;
};

struct ShapeParams {
  double probe = 1.4;          // solvent probe added to vdW radii
  double escape_length = 25.0; // ray length that counts as escaping
  double mouth_link = 9.0;     // single-linkage distance for grouping mouths
  double min_elongation = 3.0; // tunnel/cleft split on sqrt(lmax/lmin)
};

// One pocket per cluster, ordered by descending sphere count (ties by lower
// cluster id); noise spheres are dropped. Descriptors, shape and activity
// are filled by the later passes.
std::vector<Pocket> assemble_pockets(const ClusterLabeling& labeling,
                                     std::span<const AlphaSphere> spheres);

// PocketPicker criterion: pocket centroid within pp_dist of some ligand atom.
bool pocketpicker_match(const Pocket& pocket, const Ligand& ligand, double pp_dist);

// Mutual-overlap criterion: at least mo_fraction of the ligand's atoms lie
// within mo_dist of some alpha-sphere center.
bool mutual_overlap_match(const Pocket& pocket, const Ligand& ligand, double mo_dist,
                          double mo_fraction);

struct SiteClassification {
  std::vector<LigandKey> active_ligands;
  std::vector<LigandKey> non_active_ligands;
};

// Marks each pocket active iff it matches some ligand under the configured
// mode, fills matched_ligands, and splits the ligands into detected /
// undetected sets. A pocket may match several ligands and vice versa.
SiteClassification classify_sites(std::vector<Pocket>& pockets, std::span<const Ligand> ligands,
                                  const SiteCriteria& criteria);

// Mean distance over unordered pairs of sphere centers; 0 for one sphere.
double compute_density(const Pocket& pocket);

// polarity = count of distinct polar lining residues; charge = net formal
// charge (ASP/GLU -1, LYS/ARG +1) over distinct lining residues.
std::pair<int, int> compute_polarity_charge(const Pocket& pocket, std::span<const Atom> atoms);

// Spheres with at least one of 26 grid rays escaping past the atom shell.
std::vector<bool> exposed_spheres(const Pocket& pocket, std::span<const Atom> atoms,
                                  const ShapeParams& params);

// Mouth-counting heuristic: no exposed sphere -> Void; two or more mouths
// (single-linkage groups of exposed spheres) -> Channel; one mouth -> Tunnel
// when the sphere cloud is elongated, else Cleft.
PocketShape classify_shape(const Pocket& pocket, std::span<const Atom> atoms,
                           const ShapeParams& params);

// Min-max normalizes n_spheres and polarity_score across the pocket set and
// assigns the 6 size bins and 5 hydrophilicity bins (constant value -> 1).
void bin_descriptors(std::vector<Pocket>& pockets);

}  // namespace cavdetect
