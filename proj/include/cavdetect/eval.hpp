#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "cavdetect/pdb.hpp"
#include "cavdetect/pockets.hpp"

namespace cavdetect {

// Per-structure expected detection flags, keyed by ligand.
struct GroundTruth {
  std::map<std::string, std::map<LigandKey, bool>> by_structure;

  bool covers(const std::string& structure_id) const {
    return by_structure.count(structure_id) > 0;
  }
};

// TSV columns: structure_id, residue_name, chain_id, residue_seq,
// expected_detected (0/1). Lines starting with '#' are ignored.
GroundTruth load_ground_truth(const std::string& path);

struct ConfusionCounts {
  int tp = 0;
  int tn = 0;
  int fp = 0;
  int fn = 0;
};

// Ligands present in predictions but absent from the truth map are excluded
// from the counts and tallied in *uncovered when given.
ConfusionCounts confusion(const std::map<LigandKey, bool>& predicted,
                          const std::map<LigandKey, bool>& truth, int* uncovered = nullptr);

struct MetricResult {
  std::optional<double> precision;     // tp / (tp + fp)
  std::optional<double> recall;        // tp / (tp + fn)
  std::optional<double> accuracy_pct;  // 100 * (tp + tn) / total
};

MetricResult metrics(const ConfusionCounts& c);

// Report formatting, with round-half-away-from-zero at the displayed
// precision and "Div 0" for undefined values. Ratios drop trailing zeros
// ("1", "0.5", "0.67"); accuracy renders as an integer percentage.
std::string format_ratio(const std::optional<double>& v);
std::string format_accuracy(const std::optional<double>& v);

// Per-structure classification tallies consumed by aggregate_stats.
struct StructureCounts {
  int active_ligands = 0;
  int non_active_ligands = 0;
  int active_sites = 0;
  int non_active_sites = 0;
  std::array<int, 4> active_shape_counts{};                 // indexed by PocketShape
  std::array<std::array<int, 6>, 4> active_size_bins{};     // shape x size bin (1..6)
  std::array<std::array<int, 5>, 4> active_hydro_bins{};    // shape x hydrophilicity bin (1..5)
};

struct RunStats {
  long n_active_ligands = 0;
  long n_active_sites = 0;
  long n_non_active_ligands = 0;
  long n_non_active_sites = 0;
  std::array<long, 4> active_shape_counts{};
  std::array<std::array<long, 6>, 4> active_size_bins{};
  std::array<std::array<long, 5>, 4> active_hydro_bins{};
};

RunStats aggregate_stats(std::span<const StructureCounts> results);

// Per shape class: active-site total and the per-bin fractions
// (count in group / total sites of that shape), one TSV row per shape.
std::string format_shape_table(const RunStats& stats);

}  // namespace cavdetect
