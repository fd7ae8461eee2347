#pragma once

#include <map>
#include <utility>
#include <vector>

#include "vecflow/graph.hpp"

namespace vecflow {

/// Fundamental-cycle coordinates of the circulation space. Each cotree edge
/// is a free coordinate; each tree edge's value is a signed sum of them.
struct CycleBasis {
  /// BFS spanning forest from the smallest vertex of each component.
  std::vector<EdgeId> tree;
  /// Sorted by id. Loops are always cotree.
  std::vector<EdgeId> cotree;
  /// tree edge -> (index into cotree, +-1); empty for bridges.
  std::map<EdgeId, std::vector<std::pair<int, int>>> coefficients;
  int components = 0;
};

/// Signs are relative to `o`: a cotree value x_c pushes x_c along c from
/// init to ter and back through the tree.
CycleBasis cycle_basis(const Multigraph& g, const Orientation& o);

}  // namespace vecflow
