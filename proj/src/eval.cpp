#include "cavdetect/eval.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace cavdetect {

GroundTruth load_ground_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open ground-truth file " + path);

  GroundTruth gt;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream row(line);
    std::string structure, residue, chain, seq_str, flag_str;
    std::vector<std::string> cols;
    std::string col;
    while (std::getline(row, col, '\t'))
      cols.push_back(col);
    if (cols.size() != 5)
      throw PdbParseError("ground truth row needs 5 tab-separated columns", line_no);
    int seq = 0;
    auto [p1, e1] = std::from_chars(cols[3].data(), cols[3].data() + cols[3].size(), seq);
    if (e1 != std::errc())
      throw PdbParseError("ground truth: bad residue_seq", line_no);
    if (cols[4] != "0" && cols[4] != "1")
      throw PdbParseError("ground truth: expected_detected must be 0 or 1", line_no);
    LigandKey key{cols[1], cols[2] == "_" ? "" : cols[2], seq};
    gt.by_structure[cols[0]][key] = cols[4] == "1";
  }
  return gt;
}

ConfusionCounts confusion(const std::map<LigandKey, bool>& predicted,
                          const std::map<LigandKey, bool>& truth, int* uncovered) {
  ConfusionCounts c;
  int missing = 0;
  for (const auto& [key, pred] : predicted) {
    auto it = truth.find(key);
    if (it == truth.end()) {
      ++missing;
      continue;
    }
    bool want = it->second;
    if (pred && want)
      ++c.tp;
    else if (pred && !want)
      ++c.fp;
    else if (!pred && want)
      ++c.fn;
    else
      ++c.tn;
  }
  if (uncovered)
    *uncovered = missing;
  return c;
}

MetricResult metrics(const ConfusionCounts& c) {
  MetricResult r;
  if (c.tp + c.fp > 0)
    r.precision = static_cast<double>(c.tp) / (c.tp + c.fp);
  if (c.tp + c.fn > 0)
    r.recall = static_cast<double>(c.tp) / (c.tp + c.fn);
  long total = static_cast<long>(c.tp) + c.tn + c.fp + c.fn;
  if (total > 0)
    r.accuracy_pct = 100.0 * (c.tp + c.tn) / static_cast<double>(total);
  return r;
}

std::string format_ratio(const std::optional<double>& v) {
  if (!v)
    return "Div 0";
  long hundredths = std::llround(*v * 100.0);  // half away from zero
  if (hundredths % 100 == 0)
    return std::to_string(hundredths / 100);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", hundredths / 100.0);
  std::string s = buf;
  while (s.back() == '0')
    s.pop_back();
  return s;
}

std::string format_accuracy(const std::optional<double>& v) {
  if (!v)
    return "Div 0";
  return std::to_string(std::llround(*v));
}

RunStats aggregate_stats(std::span<const StructureCounts> results) {
  RunStats s;
  for (const StructureCounts& c : results) {
    s.n_active_ligands += c.active_ligands;
    s.n_non_active_ligands += c.non_active_ligands;
    s.n_active_sites += c.active_sites;
    s.n_non_active_sites += c.non_active_sites;
    for (size_t i = 0; i < c.active_shape_counts.size(); ++i) {
      s.active_shape_counts[i] += c.active_shape_counts[i];
      for (size_t b = 0; b < c.active_size_bins[i].size(); ++b)
        s.active_size_bins[i][b] += c.active_size_bins[i][b];
      for (size_t b = 0; b < c.active_hydro_bins[i].size(); ++b)
        s.active_hydro_bins[i][b] += c.active_hydro_bins[i][b];
    }
  }
  return s;
}

std::string format_shape_table(const RunStats& stats) {
  static const char* kShapes[4] = {"Cleft", "Channel", "Tunnel", "Void"};
  std::ostringstream os;
  os << "shape\tactive_sites";
  for (int b = 1; b <= 6; ++b)
    os << "\tsize_" << b;
  for (int b = 1; b <= 5; ++b)
    os << "\thydro_" << b;
  os << '\n';
  for (int i = 0; i < 4; ++i) {
    long total = stats.active_shape_counts[i];
    os << kShapes[i] << '\t' << total;
    auto fraction = [&](long count) {
      if (total == 0)
        return std::string("-");
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", static_cast<double>(count) / total);
      return std::string(buf);
    };
    for (long count : stats.active_size_bins[i])
      os << '\t' << fraction(count);
    for (long count : stats.active_hydro_bins[i])
      os << '\t' << fraction(count);
    os << '\n';
  }
  return os.str();
}

}  // namespace cavdetect
