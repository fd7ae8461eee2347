#pragma once

#include <array>
#include <chrono>
#include <set>
#include <vector>

#include "vecflow/vector_flow.hpp"

namespace vecflow {

struct DecompositionPart {
  std::set<EdgeId> edges;
  /// Flow on the spanning subgraph with exactly these edges.
  VectorFlow flow;
};

/// Concatenates the part flows (zero blocks where an edge is absent),
/// scaled by 1/sqrt(l), in g's default orientation.
VectorFlow compose_decomposition(const Multigraph& g, const std::vector<DecompositionPart>& parts, int l);

/// S1-flow from an integer 3-flow (values in {-2..2}, nonzero exactly on
/// its support) given in g's default orientation.
VectorFlow s1_from_integer_3flow(const Multigraph& g, const std::map<EdgeId, int>& f);

struct S6Result {
  VectorFlow flow;
  /// H1 even; H2..H4 carry integer 3-flows. Every edge lies in exactly 3.
  std::array<std::set<EdgeId>, 4> parts;
};

/// Direct search for H1..H4, then compose with l = 3 (ambient dimension 7).
S6Result s6_pipeline(const Multigraph& g, std::chrono::milliseconds budget = std::chrono::milliseconds{10000});

}  // namespace vecflow
