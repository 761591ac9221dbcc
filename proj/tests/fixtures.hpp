#pragma once

// Synthetic structures used across the pocket, pipeline and acceptance
// tests: atom shells with and without openings, and a ring-stack tube.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cavdetect/pdb.hpp"

namespace fixtures {

// roughly even points on a sphere (Fibonacci lattice)
inline std::vector<cavdetect::Point3> sphere_points(int n, double radius,
                                                    const cavdetect::Point3& center) {
  std::vector<cavdetect::Point3> pts;
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / n;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * i;
    pts.push_back({center.x + radius * r * std::cos(phi), center.y + radius * r * std::sin(phi),
                   center.z + radius * z});
  }
  return pts;
}

inline std::string coord_line(const char* record, int serial, const char* name, const char* res,
                              const char* chain, int seq, const cavdetect::Point3& p,
                              const char* element) {
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "%-6s%5d %-4s %3s %1s%4d    %8.3f%8.3f%8.3f%6.2f%6.2f          %2s", record,
                serial, name, res, chain, seq, p.x, p.y, p.z, 1.0, 0.0, element);
  return std::string(buf) + "\n";
}

// Hollow atom shell with a ligand placed at its center. open_cap > 0 removes
// the atoms whose z exceeds open_cap * radius, leaving a mouth at the top.
inline std::string shell_structure_text(int n_atoms, double radius, double open_cap,
                                        bool with_ligand) {
  cavdetect::Point3 center{15.0, 15.0, 15.0};
  std::string text;
  int serial = 1;
  int seq = 1;
  for (const cavdetect::Point3& p : sphere_points(n_atoms, radius, center)) {
    if (open_cap > 0.0 && p.z - center.z > open_cap * radius)
      continue;
    text += coord_line("ATOM", serial++, " CA ", "GLY", "A", seq++, p, "C");
  }
  if (with_ligand)
    text += coord_line("HETATM", serial, "MG  ", "MG", "A", 900, center, "MG");
  return text;
}

inline cavdetect::Structure shell_structure(const std::string& id, int n_atoms, double radius,
                                            double open_cap, bool with_ligand) {
  return cavdetect::parse_pdb(shell_structure_text(n_atoms, radius, open_cap, with_ligand), id);
}

// Stack of atom rings forming a narrow tube along z, centered at the origin.
inline std::vector<cavdetect::Atom> ring_stack_atoms(double ring_radius, double z_min,
                                                     double z_max, double z_step,
                                                     int atoms_per_ring) {
  std::vector<cavdetect::Atom> atoms;
  int serial = 1;
  for (double z = z_min; z <= z_max + 1e-9; z += z_step) {
    for (int k = 0; k < atoms_per_ring; ++k) {
      double phi = 2.0 * M_PI * k / atoms_per_ring;
      cavdetect::Atom a;
      a.serial = serial++;
      a.name = " C  ";
      a.element = "C";
      a.residue_name = "GLY";
      a.chain_id = "A";
      a.residue_seq = serial;
      a.position = {ring_radius * std::cos(phi), ring_radius * std::sin(phi), z};
      a.vdw_radius = cavdetect::vdw_radius_for("C");
      atoms.push_back(a);
    }
  }
  return atoms;
}

}  // namespace fixtures
