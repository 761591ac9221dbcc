// Command-line driver: detect cavities on one or many PDB structures and
// optionally score the detections against a ground-truth table.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "cavdetect/pipeline.hpp"

namespace fs = std::filesystem;
using namespace cavdetect;

int main(int argc, char** argv) {
  CLI::App app{"cavdetect - alpha-sphere cavity detection on protein structures"};

  std::vector<std::string> inputs;
  std::string input_dir;
  PipelineConfig config;
  std::string criteria_mode = "either";
  std::string report_path;
  double merge_dist = -1.0;
  double mouth_link = -1.0;

  app.add_option("inputs", inputs, "PDB files to process");
  app.add_option("--input-dir", input_dir, "directory scanned for *.pdb / *.ent files");
  app.add_option("--r-min", config.band.r_min, "alpha sphere minimum radius [3.0]");
  app.add_option("--r-max", config.band.r_max, "alpha sphere maximum radius [5.0]");
  app.add_option("--eps", config.dbscan.eps, "DBSCAN neighborhood radius [4.5]");
  app.add_option("--min-pts", config.dbscan.min_pts, "DBSCAN core threshold [4]");
  app.add_option("--merge-min-size", config.merge.min_size, "smallest cluster kept as-is [3]");
  app.add_option("--merge-dist", merge_dist, "centroid distance for merging [2*eps]");
  app.add_option("--criteria-mode", criteria_mode,
                 "binding-site criteria: pocketpicker|overlap|either|both [either]");
  app.add_option("--pp-dist", config.criteria.pp_dist, "PocketPicker distance [4.0]");
  app.add_option("--mo-dist", config.criteria.mo_dist, "mutual-overlap distance [3.0]");
  app.add_option("--mo-fraction", config.criteria.mo_fraction, "mutual-overlap fraction [0.5]");
  app.add_option("--probe", config.shape.probe, "solvent probe radius [1.4]");
  app.add_option("--escape", config.shape.escape_length, "ray escape length [25.0]");
  app.add_option("--mouth-link", mouth_link, "mouth grouping distance [2*eps]");
  app.add_option("--elongation", config.shape.min_elongation, "tunnel elongation cutoff [3.0]");
  app.add_option("--out-dir", config.out_dir, "output directory [.]");
  std::string ground_truth;
  app.add_option("--ground-truth", ground_truth, "ground-truth TSV for metric evaluation");
  app.add_option("--report", report_path, "write the metric/summary report to this path");
  app.add_option("--threads", config.threads, "worker threads for batch mode [1]");

  CLI11_PARSE(app, argc, argv);

  static const std::map<std::string, MatchMode> kModes = {
      {"pocketpicker", MatchMode::PocketPicker},
      {"overlap", MatchMode::MutualOverlap},
      {"either", MatchMode::Either},
      {"both", MatchMode::Both}};
  auto mode_it = kModes.find(criteria_mode);
  if (mode_it == kModes.end()) {
    std::cerr << "invalid --criteria-mode: " << criteria_mode << "\n";
    return 2;
  }
  config.criteria.mode = mode_it->second;
  if (merge_dist > 0)
    config.merge.merge_dist = merge_dist;
  if (mouth_link > 0)
    config.mouth_link = mouth_link;
  if (!ground_truth.empty())
    config.ground_truth_path = ground_truth;

  if (!input_dir.empty()) {
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(input_dir, ec)) {
      std::string ext = entry.path().extension().string();
      if (ext == ".pdb" || ext == ".ent")
        inputs.push_back(entry.path().string());
    }
    if (ec) {
      std::cerr << "cannot read --input-dir " << input_dir << ": " << ec.message() << "\n";
      return 2;
    }
    std::sort(inputs.begin(), inputs.end());
  }
  if (inputs.empty()) {
    std::cerr << "no input structures (give files or --input-dir)\n";
    return 2;
  }

  try {
    config.validate();
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  }

  BatchResult batch;
  try {
    batch = run_batch(inputs, config);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 2;
  }

  for (const StructureResult& r : batch.results) {
    if (!r.ok) {
      std::cout << r.id << "\tFAILED\t" << r.error << "\n";
      continue;
    }
    std::cout << r.id << "\tpockets=" << r.pockets.size()
              << "\tactive_sites=" << r.counts.active_sites
              << "\tactive_ligands=" << r.counts.active_ligands << "/"
              << (r.counts.active_ligands + r.counts.non_active_ligands) << "\tsilhouette=";
    if (r.silhouette) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", *r.silhouette);
      std::cout << buf;
    } else {
      std::cout << "undefined";
    }
    std::cout << "\n";
  }

  const RunStats& s = batch.stats;
  std::cout << "total\tactive_ligands=" << s.n_active_ligands
            << "\tnon_active_ligands=" << s.n_non_active_ligands
            << "\tactive_sites=" << s.n_active_sites
            << "\tnon_active_sites=" << s.n_non_active_sites << "\n";
  std::cout << format_shape_table(s);

  std::string report;
  if (!batch.metric_rows.empty())
    report = format_metric_report(batch.metric_rows);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write report to " << report_path << "\n";
      return 2;
    }
    if (!report.empty()) {
      out << report;
    } else {
      out << "structures\t" << batch.results.size() << "\nfailed\t" << batch.n_failed << "\n"
          << "active_ligands\t" << s.n_active_ligands << "\nnon_active_ligands\t"
          << s.n_non_active_ligands << "\nactive_sites\t" << s.n_active_sites
          << "\nnon_active_sites\t" << s.n_non_active_sites << "\n";
    }
  } else if (!report.empty()) {
    std::cout << report;
  }

  return batch.n_failed > 0 ? 1 : 0;
}
