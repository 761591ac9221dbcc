#include "cavdetect/pipeline.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <thread>

#include "cavdetect/delaunay.hpp"
#include "cavdetect/report.hpp"

namespace cavdetect {

namespace {

std::string mode_name(MatchMode mode) {
  switch (mode) {
    case MatchMode::PocketPicker:
      return "pocketpicker";
    case MatchMode::MutualOverlap:
      return "overlap";
    case MatchMode::Either:
      return "either";
    case MatchMode::Both:
      return "both";
  }
  return "either";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(band.r_min > 0.0 && band.r_min < band.r_max))
    throw ConfigError("radius band requires 0 < r_min < r_max");
  if (!(dbscan.eps > 0.0))
    throw ConfigError("eps must be positive");
  if (dbscan.min_pts < 1)
    throw ConfigError("min_pts must be at least 1");
  if (merge.min_size < 1)
    throw ConfigError("merge min_size must be at least 1");
  if (!(resolved_merge_dist() > 0.0))
    throw ConfigError("merge_dist must be positive");
  if (!(criteria.pp_dist > 0.0) || !(criteria.mo_dist > 0.0))
    throw ConfigError("criteria distances must be positive");
  if (!(criteria.mo_fraction > 0.0 && criteria.mo_fraction <= 1.0))
    throw ConfigError("mo_fraction must lie in (0, 1]");
  ShapeParams s = resolved_shape();
  if (!(s.probe >= 0.0) || !(s.escape_length > 0.0) || !(s.mouth_link > 0.0) ||
      !(s.min_elongation >= 1.0))
    throw ConfigError("invalid shape parameters");
  if (threads < 1)
    throw ConfigError("threads must be at least 1");
  if (write_outputs) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir))
      throw ConfigError("output directory not writable: " + out_dir);
  }
}

std::string PipelineConfig::echo() const {
  ShapeParams s = resolved_shape();
  std::ostringstream os;
  os << "r_min=" << fmt(band.r_min) << " r_max=" << fmt(band.r_max)
     << " eps=" << fmt(dbscan.eps) << " min_pts=" << dbscan.min_pts
     << " merge_min_size=" << merge.min_size << " merge_dist=" << fmt(resolved_merge_dist())
     << " criteria=" << mode_name(criteria.mode) << " pp_dist=" << fmt(criteria.pp_dist)
     << " mo_dist=" << fmt(criteria.mo_dist) << " mo_fraction=" << fmt(criteria.mo_fraction)
     << " probe=" << fmt(s.probe) << " escape=" << fmt(s.escape_length)
     << " mouth_link=" << fmt(s.mouth_link) << " elongation=" << fmt(s.min_elongation);
  return os.str();
}

StructureResult run_pipeline(const Structure& structure, const PipelineConfig& config) {
  StructureResult result;
  result.id = structure.id;

  if (structure.protein_atoms.size() < 4) {
    result.error = "structure skipped: fewer than 4 protein atoms";
    return result;
  }

  try {
    std::vector<Point3> points;
    points.reserve(structure.protein_atoms.size());
    for (const Atom& a : structure.protein_atoms)
      points.push_back(a.position);

    std::vector<Tetrahedron> tets = delaunay(points);
    VoronoiResult voronoi = voronoi_vertices(points, tets);
    result.dropped_degenerate_vertices = voronoi.dropped_degenerate;

    std::vector<AlphaSphere> spheres = filter_alpha_spheres(voronoi.vertices, config.band);
    result.n_alpha_spheres = static_cast<int>(spheres.size());

    std::vector<Point3> centers;
    centers.reserve(spheres.size());
    for (const AlphaSphere& s : spheres)
      centers.push_back(s.center);

    ClusterLabeling labeling = dbscan(centers, config.dbscan);
    labeling = merge_small_clusters(labeling, centers, config.merge.min_size,
                                    config.resolved_merge_dist());

    result.silhouette = silhouette_score(centers, labeling);
    if (!result.silhouette)
      result.silhouette_note =
          labeling.n_clusters < 2 ? "fewer than 2 clusters" : "fewer than 2 clustered points";

    result.pockets = assemble_pockets(labeling, spheres);

    SiteClassification sites =
        classify_sites(result.pockets, structure.ligands, config.criteria);
    result.active_ligands = std::move(sites.active_ligands);
    result.non_active_ligands = std::move(sites.non_active_ligands);

    ShapeParams shape_params = config.resolved_shape();
    for (Pocket& p : result.pockets) {
      p.descriptors.density = compute_density(p);
      auto [polarity, charge] = compute_polarity_charge(p, structure.protein_atoms);
      p.descriptors.polarity_score = polarity;
      p.descriptors.charge_score = charge;
      p.shape = classify_shape(p, structure.protein_atoms, shape_params);
    }
    bin_descriptors(result.pockets);

    result.counts.active_ligands = static_cast<int>(result.active_ligands.size());
    result.counts.non_active_ligands = static_cast<int>(result.non_active_ligands.size());
    for (const Pocket& p : result.pockets) {
      if (p.is_active) {
        int shape = static_cast<int>(p.shape);
        ++result.counts.active_sites;
        ++result.counts.active_shape_counts[shape];
        ++result.counts.active_size_bins[shape][p.descriptors.normalized_size_bin - 1];
        ++result.counts.active_hydro_bins[shape][p.descriptors.hydrophilicity_bin - 1];
      } else {
        ++result.counts.non_active_sites;
      }
    }

    if (config.write_outputs) {
      std::filesystem::create_directories(config.out_dir);
      for (const Pocket& p : result.pockets) {
        std::string path = config.out_dir + "/" + structure.id + "_pocket" +
                           std::to_string(p.id) + ".pdb";
        write_pocket_pdb(structure, p, path);
      }
      InfoReport info{config.echo(), result.silhouette, result.silhouette_note};
      write_info_txt(structure, result.pockets, info,
                     config.out_dir + "/" + structure.id + "_info.txt");
    }
    result.ok = true;
  } catch (const std::exception& e) {
    result.ok = false;
    result.error = std::string(e.what()) + " [structure " + structure.id + "]";
  }
  return result;
}

BatchResult run_batch(const std::vector<std::string>& paths, const PipelineConfig& config) {
  config.validate();

  BatchResult batch;
  batch.results.resize(paths.size());

  auto process = [&](size_t i) {
    StructureResult& slot = batch.results[i];
    try {
      Structure st = parse_pdb_file(paths[i]);
      slot = run_pipeline(st, config);
    } catch (const std::exception& e) {
      slot.id = std::filesystem::path(paths[i]).stem().string();
      slot.ok = false;
      slot.error = e.what();
    }
  };

  int threads = std::min<int>(config.threads, static_cast<int>(paths.size()));
  if (threads <= 1) {
    for (size_t i = 0; i < paths.size(); ++i)
      process(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < paths.size(); i = next.fetch_add(1))
          process(i);
      });
    for (std::thread& t : pool)
      t.join();
  }

  std::vector<StructureCounts> counts;
  for (const StructureResult& r : batch.results) {
    if (!r.ok) {
      ++batch.n_failed;
      continue;
    }
    counts.push_back(r.counts);
  }
  batch.stats = aggregate_stats(counts);

  if (config.ground_truth_path) {
    GroundTruth gt = load_ground_truth(*config.ground_truth_path);
    for (const StructureResult& r : batch.results) {
      MetricRow row;
      row.structure_id = r.id;
      if (!r.ok) {
        row.note = "failed: " + r.error;
      } else if (!gt.covers(r.id)) {
        row.note = "No ground truth";
      } else {
        std::map<LigandKey, bool> predicted;
        for (const LigandKey& k : r.active_ligands)
          predicted[k] = true;
        for (const LigandKey& k : r.non_active_ligands)
          predicted[k] = false;
        row.confusion = confusion(predicted, gt.by_structure.at(r.id), &row.uncovered_ligands);
        row.result = metrics(row.confusion);
        if (row.uncovered_ligands > 0)
          row.note = std::to_string(row.uncovered_ligands) + " uncovered ligand(s)";
      }
      batch.metric_rows.push_back(std::move(row));
    }
  }
  return batch;
}

std::string format_metric_report(const std::vector<MetricRow>& rows) {
  std::ostringstream os;
  os << "structure\tprecision\trecall\taccuracy_pct\ttp\tfp\tfn\ttn\tnote\n";
  for (const MetricRow& row : rows) {
    os << row.structure_id << '\t';
    if (row.result) {
      os << format_ratio(row.result->precision) << '\t' << format_ratio(row.result->recall)
         << '\t' << format_accuracy(row.result->accuracy_pct) << '\t' << row.confusion.tp << '\t'
         << row.confusion.fp << '\t' << row.confusion.fn << '\t' << row.confusion.tn;
    } else {
      os << "-\t-\t-\t-\t-\t-\t-";
    }
    os << '\t' << row.note << '\n';
  }
  return os.str();
}

}  // namespace cavdetect
