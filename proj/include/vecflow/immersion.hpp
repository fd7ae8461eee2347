#pragma once

#include <array>
#include <map>
#include <vector>

#include "vecflow/geometry.hpp"
#include "vecflow/graph.hpp"
#include "vecflow/vector_flow.hpp"

namespace vecflow {

/// Vertices to points of S2, edges to directed arcs from gamma(init) to gamma(ter).
struct Immersion {
  Orientation orientation;
  std::map<VertexId, Eigen::Vector3d> points;
  std::map<EdgeId, Arc> arcs;
  Tolerance tol;
};

struct EquiangularReport {
  /// Pairwise angles between the departure tangents at each vertex, in
  /// incident-edge order: (0,1), (0,2), (1,2).
  std::map<VertexId, std::array<double, 3>> angles;
  double max_deviation = 0;
  /// Largest of |start - gamma(init)|, |end - gamma(ter)|, |axis . start|.
  double max_endpoint_error = 0;
  VertexId worst_vertex = -1;
};

EquiangularReport check_equiangular(const Multigraph& g, const Immersion& imm);

/// phi(e) = the arc's axis. Throws when the immersion is off by more than `tolerance`.
VectorFlow immersion_to_flow(const Multigraph& g, const Immersion& imm, double tolerance = 1e-8);

/// gamma(v) = normalize(u1 x u2) for the outward values on the two lowest
/// edge ids at v; arcs wind counterclockwise about phi(e).
Immersion flow_to_immersion(const Multigraph& g, const VectorFlow& flow);

/// gamma'(v) = -gamma(v); arcs at v keep their great circle.
Immersion antipodal_flip(const Multigraph& g, const Immersion& imm, VertexId v);

/// gamma(A) = (0,0,1), gamma(B) = -(0,0,1); A holds the smallest vertex.
Immersion two_point_immersion(const Multigraph& g);
Immersion one_point_immersion(const Multigraph& g);

struct ConstructedImmersion {
  Multigraph graph;
  Immersion immersion;
  /// Colatitudes found by bisection (K4: one; quasi-Petersen: V side, W side).
  std::vector<double> theta;
};

ConstructedImmersion k4_immersion();
ConstructedImmersion quasi_petersen_immersion(int a, int b, int p);

struct BlownUpFlow {
  BlowUp blowup;
  VectorFlow flow;
};

/// Flow on blow_up_triangle(g, v): injects the K4 flow with identity pairing.
BlownUpFlow blow_up_triangle_flow(const Multigraph& g, const VectorFlow& flow, VertexId v);

/// `samples` points per arc, start to end inclusive.
std::map<EdgeId, std::vector<Eigen::Vector3d>> polylines(const Immersion& imm, int samples);

}  // namespace vecflow
