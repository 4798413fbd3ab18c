#include <array>

#include "csft/tree.hpp"

namespace csft {

namespace {

// A spine path with pendant paths hung off spine vertices (1-indexed from
// the left end of the spine).
struct Pendant {
  int spine_vertex;
  int length;
};

Tree spine_with_pendants(int spine, std::initializer_list<Pendant> pendants) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < spine; ++i) edges.emplace_back(i, i + 1);
  int next = spine;
  for (const auto& p : pendants) {
    int previous = p.spine_vertex - 1;
    for (int i = 0; i < p.length; ++i) {
      edges.emplace_back(previous, next);
      previous = next++;
    }
  }
  return Tree::from_edges(next, edges);
}

}  // namespace

Tree fixture_tree(std::string_view name) {
  if (name == "T1") return spine_with_pendants(14, {{7, 1}, {7, 1}, {12, 1}});
  if (name == "T2") return spine_with_pendants(14, {{7, 1}, {7, 1}, {10, 1}});
  if (name == "T3") return spine_with_pendants(16, {{7, 1}, {12, 1}, {12, 1}});
  if (name == "T4") return spine_with_pendants(14, {{7, 3}, {10, 1}, {10, 1}});
  throw TreeError("unknown fixture '" + std::string(name) + "' (expected T1, T2, T3 or T4)");
}

std::vector<std::string> fixture_names() { return {"T1", "T2", "T3", "T4"}; }

}  // namespace csft
