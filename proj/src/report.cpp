#include "cavdetect/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace cavdetect {

namespace {

void write_coord_record(std::ofstream& out, const char* record, int serial, const std::string& name,
                        const std::string& res_name, char chain, int res_seq, char icode,
                        const Point3& pos, double occupancy, double bfactor,
                        const std::string& element) {
  char buf[96];
  std::string name4 = name;
  name4.resize(4, ' ');
  std::snprintf(buf, sizeof buf, "%-6s%5d %-4s %3s %c%4d%c   %8.3f%8.3f%8.3f%6.2f%6.2f          %2s",
                record, serial, name4.c_str(), res_name.c_str(), chain, res_seq, icode, pos.x,
                pos.y, pos.z, occupancy, bfactor, element.c_str());
  out << buf << '\n';
}

std::string ligand_list(const std::vector<LigandKey>& keys) {
  if (keys.empty())
    return "-";
  std::string s;
  for (size_t i = 0; i < keys.size(); ++i) {
    if (i > 0)
      s += ',';
    s += to_string(keys[i]);
  }
  return s;
}

void write_pocket_row(std::ofstream& out, const Pocket& p) {
  char density[32];
  std::snprintf(density, sizeof density, "%.3f", p.descriptors.density);
  out << p.id << '\t' << p.descriptors.n_spheres << '\t' << density << '\t'
      << p.descriptors.polarity_score << '\t' << p.descriptors.charge_score << '\t'
      << p.descriptors.normalized_size_bin << '\t' << p.descriptors.hydrophilicity_bin << '\t'
      << to_string(p.shape) << '\t' << ligand_list(p.matched_ligands) << '\n';
}

}  // namespace

void write_pocket_pdb(const Structure& structure, const Pocket& pocket, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write pocket file " + path);

  out << "REMARK cavity pocket " << pocket.id << " of structure " << structure.id << '\n';
  out << "REMARK " << pocket.spheres.size() << " alpha spheres, shape " << to_string(pocket.shape)
      << (pocket.is_active ? ", active site" : ", non-active site") << '\n';

  int max_serial = 0;
  for (int idx : pocket.lining_atoms) {
    const Atom& a = structure.protein_atoms[idx];
    char chain = a.chain_id.empty() ? ' ' : a.chain_id[0];
    write_coord_record(out, "ATOM", a.serial, a.name, a.residue_name, chain, a.residue_seq,
                       a.insertion_code, a.position, 1.0, 0.0, a.element);
    max_serial = std::max(max_serial, a.serial);
  }
  for (size_t k = 0; k < pocket.spheres.size(); ++k) {
    const AlphaSphere& s = pocket.spheres[k];
    write_coord_record(out, "HETATM", max_serial + static_cast<int>(k) + 1, " O", "APS", ' ',
                       static_cast<int>(k) + 1, ' ', s.center, 1.0, s.radius, "O");
  }
  out << "END\n";
  if (!out)
    throw IoError("write failed for " + path);
}

void write_info_txt(const Structure& structure, const std::vector<Pocket>& pockets,
                    const InfoReport& info, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write info file " + path);

  std::vector<const Pocket*> active, non_active;
  std::vector<LigandKey> matched;
  for (const Pocket& p : pockets) {
    (p.is_active ? active : non_active).push_back(&p);
    matched.insert(matched.end(), p.matched_ligands.begin(), p.matched_ligands.end());
  }
  auto is_matched = [&](const LigandKey& key) {
    return std::find(matched.begin(), matched.end(), key) != matched.end();
  };

  out << "# cavity report for structure " << structure.id << '\n';
  out << "# config: " << info.config_echo << '\n';
  if (info.silhouette) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *info.silhouette);
    out << "# silhouette: " << buf << '\n';
  } else {
    out << "# silhouette: undefined (" << info.silhouette_note << ")\n";
  }
  out << "# columns: pocket\tn_spheres\tdensity\tpolarity\tcharge\tsize_bin\thydro_bin\tshape\t"
         "ligands\n";

  out << "\n[active sites]\n";
  for (const Pocket* p : active)
    write_pocket_row(out, *p);
  out << "\n[non-active sites]\n";
  for (const Pocket* p : non_active)
    write_pocket_row(out, *p);

  out << "\n[active ligands]\n";
  int n_active_ligands = 0;
  for (const Ligand& lig : structure.ligands)
    if (is_matched(lig.key)) {
      out << to_string(lig.key) << '\n';
      ++n_active_ligands;
    }
  out << "\n[non-active ligands]\n";
  for (const Ligand& lig : structure.ligands)
    if (!is_matched(lig.key))
      out << to_string(lig.key) << '\n';

  out << "\n[summary]\n";
  out << "pockets\t" << pockets.size() << '\n';
  out << "active_sites\t" << active.size() << '\n';
  out << "non_active_sites\t" << non_active.size() << '\n';
  out << "active_ligands\t" << n_active_ligands << '\n';
  out << "non_active_ligands\t" << structure.ligands.size() - n_active_ligands << '\n';
  if (!out)
    throw IoError("write failed for " + path);
}

}  // namespace cavdetect
