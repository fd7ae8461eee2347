#include "vecflow/cotree.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace vecflow {

CycleBasis cycle_basis(const Multigraph& g, const Orientation& o) {
  CycleBasis basis;
  std::map<VertexId, EdgeId> parent_edge;
  std::map<VertexId, int> depth;
  std::set<EdgeId> in_tree;

  for (VertexId root : g.vertices()) {
    if (depth.contains(root)) continue;
    ++basis.components;
    depth[root] = 0;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      VertexId x = queue.front();
      queue.pop_front();
      for (EdgeId id : g.incident_edges(x)) {
        VertexId y = g.opposite(id, x);
        if (depth.contains(y)) continue;
        depth[y] = depth[x] + 1;
        parent_edge[y] = id;
        in_tree.insert(id);
        queue.push_back(y);
      }
    }
  }

  for (const auto& [id, _] : g.edge_map()) {
    if (in_tree.contains(id)) {
      basis.tree.push_back(id);
      basis.coefficients[id];
    } else {
      basis.cotree.push_back(id);
    }
  }

  auto parent = [&](VertexId x) { return g.opposite(parent_edge.at(x), x); };
  for (int c = 0; c < static_cast<int>(basis.cotree.size()); ++c) {
    const EdgeId id = basis.cotree[c];
    const Arrow& arrow = o.at(id);
    if (arrow.init == arrow.ter) continue;
    // Cycle: init -> ter along c, then ter back to init through the tree.
    VertexId up = arrow.ter, down = arrow.init;
    std::vector<std::pair<EdgeId, int>> steps;  // (edge, +1 if walked init->ter)
    std::vector<std::pair<EdgeId, int>> tail;
    while (up != down) {
      if (depth[up] >= depth[down]) {
        const EdgeId t = parent_edge.at(up);
        steps.push_back({t, o.init(t) == up ? +1 : -1});
        up = parent(up);
      } else {
        // Walked later in the reverse direction: parent(down) -> down.
        const EdgeId t = parent_edge.at(down);
        tail.push_back({t, o.ter(t) == down ? +1 : -1});
        down = parent(down);
      }
    }
    steps.insert(steps.end(), tail.rbegin(), tail.rend());
    for (const auto& [t, sign] : steps) basis.coefficients[t].push_back({c, sign});
  }
  return basis;
}

}  // namespace vecflow
