#pragma once

#include <compare>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cavdetect/geom3.hpp"

namespace cavdetect {

class PdbParseError : public std::runtime_error {
 public:
  PdbParseError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Atom {
  int serial = 0;
  std::string name;          // columns 13-16, kept verbatim (4 chars) for writing
  std::string element;       // from columns 77-78, or inferred from the name
  std::string residue_name;  // trimmed
  std::string chain_id;      // single character, may be blank
  int residue_seq = 0;
  char insertion_code = ' ';
  Point3 position;
  bool is_hetero = false;
  double vdw_radius = 0.0;
};

struct LigandKey {
  std::string residue_name;
  std::string chain_id;
  int residue_seq = 0;

  auto operator<=>(const LigandKey&) const = default;
};

std::string to_string(const LigandKey& key);  // "MG:A:3"

struct Ligand {
  LigandKey key;
  std::vector<Atom> atoms;
};

struct Structure {
  std::string id;
  std::vector<Atom> protein_atoms;  // ATOM records, first model, altLoc blank or 'A'
  std::vector<Ligand> ligands;      // non-water HETATM groups, first-seen order
};

// Built-in van der Waals radius table (angstroms); unknown elements get 1.70.
double vdw_radius_for(std::string_view element);

// Parse fixed-column PDB content. Keeps the first model only and alternate
// location blank or 'A'; waters (HOH, WAT, DOD) are discarded; remaining
// HETATM records are grouped into ligands by (residue, chain, seq).
// Throws PdbParseError on malformed coordinates or if no ATOM record exists.
Structure parse_pdb(std::istream& in, const std::string& id);
Structure parse_pdb(const std::string& text, const std::string& id);

// Convenience: open a file, use the filename stem as the structure id.
Structure parse_pdb_file(const std::string& path);

}  // namespace cavdetect
