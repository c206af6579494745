#include "conlat/export.hpp"

#include <fstream>
#include <sstream>

#include "conlat/error.hpp"

namespace conlat {

namespace {

constexpr std::size_t max_listed_members = 6;

std::string escape_dot(std::string const& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

nlohmann::json lattice_json(BigLattice const& lattice) {
  auto const& table = *lattice.table();
  nlohmann::json elements = nlohmann::json::array();
  for (BigLattice::index i = 0; i < lattice.size(); ++i) {
    nlohmann::json relations = nlohmann::json::array();
    for (auto r : lattice.mask(i).indices()) {
      relations.push_back(table.text(r));
    }
    elements.push_back({{"id", i}, {"relations", std::move(relations)}});
  }
  nlohmann::json covers = nlohmann::json::array();
  for (auto [a, b] : lattice.cover_pairs()) {
    covers.push_back({a, b});
  }
  return {
      {"n", lattice.universe_size()},
      {"kind", std::string(to_string(lattice.kind()))},
      {"elements", std::move(elements)},
      {"covers", std::move(covers)},
      {"atoms", lattice.atoms()},
      {"coatoms", lattice.coatoms()},
      {"meet_irreducible", lattice.meet_irreducibles()},
  };
}

std::string lattice_dot(BigLattice const& lattice) {
  auto const& table = *lattice.table();
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n";
  for (BigLattice::index i = 0; i < lattice.size(); ++i) {
    auto const& m = lattice.mask(i);
    std::string label = std::to_string(m.count());
    if (m.count() <= max_listed_members) {
      label += "\\n";
      bool first = true;
      for (auto r : m.indices()) {
        label += (first ? "" : " ") + escape_dot(table.text(r));
        first = false;
      }
    }
    out << "  e" << i << " [label=\"" << label << "\"];\n";
  }
  for (auto [a, b] : lattice.cover_pairs()) {
    out << "  e" << a << " -> e" << b << ";\n";
  }
  out << "}\n";
  return out.str();
}

void write_file(std::string const& path, std::string const& contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open " + path + " for writing");
  }
  file << contents;
  if (!file.flush()) {
    throw IoError("failed writing " + path);
  }
}

}  // namespace conlat
