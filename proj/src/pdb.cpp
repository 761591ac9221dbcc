#include "cavdetect/pdb.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace cavdetect {

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string upper(std::string s) {
  for (char& c : s)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string_view field(const std::string& line, size_t col0, size_t len) {
  if (col0 >= line.size())
    return {};
  return std::string_view(line).substr(col0, std::min(len, line.size() - col0));
}

bool parse_double(std::string_view raw, double& out) {
  std::string t = trim(raw);
  if (t.empty())
    return false;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

bool parse_int(std::string_view raw, int& out) {
  std::string t = trim(raw);
  if (t.empty())
    return false;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

bool is_water(const std::string& residue) {
  return residue == "HOH" || residue == "WAT" || residue == "DOD";
}

std::string infer_element(const std::string& name4) {
  // PDB right-justifies single-letter elements: " CA " is an alpha carbon,
  // "CA  " a calcium. Leading digits ("1HB2") mean hydrogen-style names.
  std::string n = name4;
  n.resize(4, ' ');
  auto alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; };
  if (!alpha(n[0]))
    return alpha(n[1]) ? upper(std::string(1, n[1])) : std::string();
  if (alpha(n[1]))
    return upper(n.substr(0, 2));
  return upper(std::string(1, n[0]));
}

}  // namespace

double vdw_radius_for(std::string_view element) {
  static const std::map<std::string, double, std::less<>> kRadii = {
      {"H", 1.20}, {"D", 1.20}, {"C", 1.70},  {"N", 1.55},  {"O", 1.52},  {"S", 1.80},
      {"P", 1.80}, {"F", 1.47}, {"CL", 1.75}, {"BR", 1.85}, {"I", 1.98},  {"B", 1.92},
      {"SE", 1.90}, {"NA", 2.27}, {"K", 2.75}, {"MG", 1.73}, {"CA", 2.31}, {"ZN", 1.39},
      {"MN", 2.45}, {"FE", 2.44}, {"CU", 1.40}, {"NI", 2.40}, {"CO", 2.40}, {"HG", 1.55},
  };
  auto it = kRadii.find(upper(std::string(element)));
  return it != kRadii.end() ? it->second : 1.70;
}

std::string to_string(const LigandKey& key) {
  std::string chain = key.chain_id.empty() ? "_" : key.chain_id;
  return key.residue_name + ":" + chain + ":" + std::to_string(key.residue_seq);
}

Structure parse_pdb(std::istream& in, const std::string& id) {
  Structure st;
  st.id = id;

  std::map<LigandKey, size_t> ligand_index;
  std::string line;
  int line_no = 0;
  int model_count = 0;
  bool past_first_model = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("MODEL", 0) == 0) {
      ++model_count;
      continue;
    }
    if (line.rfind("ENDMDL", 0) == 0) {
      if (model_count >= 1)
        past_first_model = true;
      continue;
    }
    bool is_atom = line.rfind("ATOM  ", 0) == 0;
    bool is_het = line.rfind("HETATM", 0) == 0;
    if (!is_atom && !is_het)
      continue;
    if (model_count > 1 || past_first_model)
      continue;

    char alt = line.size() > 16 ? line[16] : ' ';
    if (alt != ' ' && alt != 'A')
      continue;

    Atom atom;
    atom.is_hetero = is_het;
    if (!parse_int(field(line, 6, 5), atom.serial))
      atom.serial = 0;
    atom.name = std::string(field(line, 12, 4));
    atom.name.resize(4, ' ');
    atom.residue_name = upper(trim(field(line, 17, 3)));
    atom.chain_id = trim(field(line, 21, 1));
    if (!parse_int(field(line, 22, 4), atom.residue_seq))
      throw PdbParseError("malformed residue number", line_no);
    atom.insertion_code = line.size() > 26 ? line[26] : ' ';
    if (!parse_double(field(line, 30, 8), atom.position.x) ||
        !parse_double(field(line, 38, 8), atom.position.y) ||
        !parse_double(field(line, 46, 8), atom.position.z))
      throw PdbParseError("malformed coordinate field", line_no);
    if (!is_finite(atom.position))
      throw PdbParseError("non-finite coordinate", line_no);
    atom.element = upper(trim(field(line, 76, 2)));
    if (atom.element.empty())
      atom.element = infer_element(atom.name);
    atom.vdw_radius = vdw_radius_for(atom.element);

    if (!is_het) {
      st.protein_atoms.push_back(std::move(atom));
      continue;
    }
    if (is_water(atom.residue_name))
      continue;
    LigandKey key{atom.residue_name, atom.chain_id, atom.residue_seq};
    auto it = ligand_index.find(key);
    if (it == ligand_index.end()) {
      ligand_index.emplace(key, st.ligands.size());
      st.ligands.push_back(Ligand{key, {}});
      st.ligands.back().atoms.push_back(std::move(atom));
    } else {
      st.ligands[it->second].atoms.push_back(std::move(atom));
    }
  }

  if (st.protein_atoms.empty())
    throw PdbParseError("no ATOM records in structure " + id);
  return st;
}

Structure parse_pdb(const std::string& text, const std::string& id) {
  std::istringstream in(text);
  return parse_pdb(in, id);
}

Structure parse_pdb_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path);
  return parse_pdb(in, std::filesystem::path(path).stem().string());
}

}  // namespace cavdetect
