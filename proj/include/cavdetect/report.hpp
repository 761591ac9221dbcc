#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cavdetect/pdb.hpp"
#include "cavdetect/pockets.hpp"

namespace cavdetect {

// Writes the pocket's lining atoms as ATOM records (original serials, names,
// residues, coordinates) followed by one APS HETATM per alpha sphere whose
// B-factor column carries the sphere radius. Viewer-loadable PDB output.
void write_pocket_pdb(const Structure& structure, const Pocket& pocket, const std::string& path);

struct InfoReport {
  std::string config_echo;  // fully resolved configuration, one line
  std::optional<double> silhouette;
  std::string silhouette_note;  // reason when silhouette is undefined
};

// Tab-separated descriptor report: active and non-active site sections, the
// active / non-active ligand lists, and a summary block.
void write_info_txt(const Structure& structure, const std::vector<Pocket>& pockets,
                    const InfoReport& info, const std::string& path);

}  // namespace cavdetect
