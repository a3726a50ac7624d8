#include "subsemi/hasse.hpp"

#include <algorithm>
#include <sstream>

namespace subsemi {

HasseDiagram hasse_diagram(std::vector<IndexSet> nodes) {
  std::sort(nodes.begin(), nodes.end(), IndexSet::output_less);
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  HasseDiagram h;
  h.covers.resize(nodes.size());
  // Nodes are sorted by cardinality, so scanning candidates for node i from
  // just below i downward visits proper subsets largest-first.  A candidate
  // contained in an already accepted cover sits at least two levels down;
  // a candidate contained in no accepted cover is a maximal proper subset.
  for (size_t i = 0; i < nodes.size(); ++i) {
    std::vector<uint32_t>& cov = h.covers[i];
    for (size_t j = i; j-- > 0;) {
      if (nodes[j].count() >= nodes[i].count()) continue;
      if (!nodes[j].is_subset_of(nodes[i])) continue;
      bool below_cover = false;
      for (uint32_t c : cov) {
        if (nodes[j].is_subset_of(nodes[c])) {
          below_cover = true;
          break;
        }
      }
      if (!below_cover) cov.push_back(uint32_t(j));
    }
    std::sort(cov.begin(), cov.end());
  }
  h.nodes = std::move(nodes);
  return h;
}

std::string hasse_to_dot(const HasseDiagram& h, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (size_t i = 0; i < h.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"{";
    bool first = true;
    h.nodes[i].for_each([&](uint32_t e) {
      if (!first) os << ',';
      first = false;
      os << e + 1;
    });
    os << "}\"];\n";
  }
  for (size_t i = 0; i < h.nodes.size(); ++i)
    for (uint32_t j : h.covers[i]) os << "  n" << j << " -> n" << i << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace subsemi
