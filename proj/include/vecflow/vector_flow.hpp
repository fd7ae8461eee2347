#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "vecflow/graph.hpp"

namespace vecflow {

struct Tolerance {
  double eps_unit = 1e-9;
  double eps_kcl = 1e-9;
};

/// Unit-vector flow; `dim` is the ambient dimension d + 1.
struct VectorFlow {
  int dim = 0;
  Orientation orientation;
  std::map<EdgeId, Eigen::VectorXd> values;
  Tolerance tol;
};

struct VectorFlowReport {
  double max_kcl_residual = 0;
  double max_norm_deviation = 0;
  std::vector<EdgeId> zero_edges;
  VertexId worst_vertex = -1;
  bool ok(const Tolerance& t) const {
    return max_kcl_residual <= t.eps_kcl && max_norm_deviation <= t.eps_unit && zero_edges.empty();
  }
};

/// Sums are taken in edge-id order. Loops contribute nothing.
VectorFlowReport verify_vector_flow(const Multigraph& g, const VectorFlow& flow);

/// Outward value of `e` at `v` (negated when `e` enters `v`).
Eigen::VectorXd outward(const VectorFlow& flow, EdgeId e, VertexId v);

/// Orientation of an even graph along closed trails (every vertex has
/// in-degree equal to out-degree). Throws on an odd-degree vertex.
Orientation euler_orientation(const Multigraph& g);

VectorFlow s0_flow_even_graph(const Multigraph& g);

/// Orientation A -> B, colour class c gets (cos 2pi c/3, sin 2pi c/3).
VectorFlow s1_flow_R3(const Multigraph& g);

/// Pads a flow with zero coordinates (e.g. an S1-flow into the z = 0 plane).
VectorFlow embed(const VectorFlow& flow, int dim);

/// Distinct values up to sign; edges whose value is the negated
/// representative are reversed in `orientation`.
struct FlowValueIndex {
  std::vector<Eigen::VectorXd> values;
  std::map<EdgeId, int> class_of;
  Orientation orientation;
  int b() const { return static_cast<int>(values.size()); }
};

FlowValueIndex build_value_index(const VectorFlow& flow, double cluster = 1e-7);

/// max_v || sum_i eps_i(v) v_i || using the index's representatives.
double balanced_residual(const Multigraph& g, const FlowValueIndex& index);

struct InjectedFlow {
  Injection injection;
  VectorFlow flow;
};

/// S2-flow on H injected into G at v (guest vertex w). The guest flow is
/// rotated so its outward triple at w meets the negated host triple at v.
InjectedFlow injection_flow_transfer(const Multigraph& G, const VectorFlow& g, VertexId v, const Multigraph& H,
                                     const VectorFlow& h, VertexId w, std::vector<int> pairing = {});

}  // namespace vecflow
