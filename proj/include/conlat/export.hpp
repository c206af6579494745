#pragma once

// Serialisations of a built lattice: a JSON dump and a Graphviz Hasse diagram.

#include <string>

#include <json.hpp>

#include "conlat/lattice.hpp"

namespace conlat {

// {"n", "kind", "elements": [{"id", "relations"}], "covers": [[lower, upper]],
//  "atoms", "coatoms", "meet_irreducible"}; ids are BigLattice indices.
nlohmann::json lattice_json(BigLattice const& lattice);

// One node per element labelled by its cardinality, plus the relation list
// for elements with at most six members; one edge per cover, bottom at the
// bottom.
std::string lattice_dot(BigLattice const& lattice);

// Throws IoError when the file cannot be written.
void write_file(std::string const& path, std::string const& contents);

}  // namespace conlat
