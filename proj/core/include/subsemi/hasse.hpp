#ifndef SUBSEMI_HASSE_HPP
#define SUBSEMI_HASSE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "subsemi/index_set.hpp"

namespace subsemi {

// Containment order on a family of sets, reduced to cover edges.
struct HasseDiagram {
  std::vector<IndexSet> nodes;                // output order (cardinality, then sequence)
  std::vector<std::vector<uint32_t>> covers;  // covers[i] = nodes directly below node i
};

// Sorts and dedupes `nodes`, then computes the cover relation of strict
// containment.
HasseDiagram hasse_diagram(std::vector<IndexSet> nodes);

// Graphviz rendering; edges run from the covered set up to its cover.
// Node labels are {a,b,...} with 1-based members, {} for the empty set.
std::string hasse_to_dot(const HasseDiagram& h, const std::string& graph_name = "subsemigroups");

}  // namespace subsemi

#endif
