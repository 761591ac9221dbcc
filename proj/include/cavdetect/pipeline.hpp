#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cavdetect/alpha.hpp"
#include "cavdetect/dbscan.hpp"
#include "cavdetect/eval.hpp"
#include "cavdetect/pdb.hpp"
#include "cavdetect/pockets.hpp"

namespace cavdetect {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MergeParams {
  int min_size = 3;
  std::optional<double> merge_dist;  // defaults to 2 * eps when unset
};

struct PipelineConfig {
  RadiusBand band;
  DbscanParams dbscan;
  MergeParams merge;
  SiteCriteria criteria;
  ShapeParams shape;
  std::optional<double> mouth_link;  // defaults to 2 * eps when unset
  std::string out_dir = ".";
  std::optional<std::string> ground_truth_path;
  int threads = 1;
  bool write_outputs = true;

  double resolved_merge_dist() const { return merge.merge_dist.value_or(2.0 * dbscan.eps); }
  ShapeParams resolved_shape() const {
    ShapeParams s = shape;
    s.mouth_link = mouth_link.value_or(2.0 * dbscan.eps);
    return s;
  }

  // Throws ConfigError on invalid values.
  void validate() const;

  // One line with every resolved value, echoed into the info file header so
  // a run is reproducible from its artifacts.
  std::string echo() const;
};

struct StructureResult {
  std::string id;
  bool ok = false;
  std::string error;

  std::vector<Pocket> pockets;
  std::vector<LigandKey> active_ligands;
  std::vector<LigandKey> non_active_ligands;
  std::optional<double> silhouette;
  std::string silhouette_note;
  StructureCounts counts;
  int dropped_degenerate_vertices = 0;
  int n_alpha_spheres = 0;
};

// Full per-structure pass: tessellation, alpha filtering, clustering, merge,
// pocket assembly, site classification, descriptors, shape, binning, and
// (when enabled) pocket/info file output. Deterministic for a fixed input
// and configuration. Structures with fewer than 4 protein atoms are skipped
// with a diagnostic instead of aborting.
StructureResult run_pipeline(const Structure& structure, const PipelineConfig& config);

struct MetricRow {
  std::string structure_id;
  std::optional<MetricResult> result;  // empty when no ground truth covers it
  ConfusionCounts confusion;
  int uncovered_ligands = 0;
  std::string note;
};

struct BatchResult {
  std::vector<StructureResult> results;  // one per input path, input order
  RunStats stats;                        // over successful structures
  std::vector<MetricRow> metric_rows;    // when ground truth was supplied
  int n_failed = 0;
};

// Runs the pipeline per file; a failing structure is recorded and the batch
// continues. Results are merged in input order regardless of thread count.
BatchResult run_batch(const std::vector<std::string>& paths, const PipelineConfig& config);

// Table-style TSV of the metric rows ("Div 0" literals for undefined).
std::string format_metric_report(const std::vector<MetricRow>& rows);

}  // namespace cavdetect
