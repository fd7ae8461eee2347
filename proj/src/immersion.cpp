#include "vecflow/immersion.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vecflow/bisection.hpp"
#include "vecflow/errors.hpp"
#include "vecflow/generators.hpp"

namespace vecflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kThird = 2 * kPi / 3;
const Eigen::Vector3d kNorth(0, 0, 1);

void require_cubic_loopless(const Multigraph& g, const char* what) {
  if (!is_cubic(g)) throw PreconditionError("not_cubic", std::string(what) + " needs a cubic graph");
  for (const auto& [id, e] : g.edge_map())
    if (e.is_loop()) throw PreconditionError("loop", std::string(what) + " needs a loopless graph");
}

}  // namespace

EquiangularReport check_equiangular(const Multigraph& g, const Immersion& imm) {
  if (!is_cubic(g)) throw PreconditionError("not_cubic", "equiangularity is defined for cubic graphs");
  check_orientation(g, imm.orientation);
  EquiangularReport report;
  for (const auto& [id, e] : g.edge_map()) {
    auto it = imm.arcs.find(id);
    if (it == imm.arcs.end()) throw PreconditionError("domain_mismatch", "no arc on edge " + std::to_string(id));
    const Arc& arc = it->second;
    const Arrow& a = imm.orientation.at(id);
    const double err = std::max({(arc.start - imm.points.at(a.init)).norm(), (arc.end() - imm.points.at(a.ter)).norm(),
                                 std::abs(arc.axis.dot(arc.start)), std::abs(arc.axis.norm() - 1.0)});
    report.max_endpoint_error = std::max(report.max_endpoint_error, err);
  }
  for (VertexId v : g.vertices()) {
    std::array<Eigen::Vector3d, 3> t;
    const auto halves = g.half_edges(v);
    for (int i = 0; i < 3; ++i) {
      const Arc& arc = imm.arcs.at(halves[i].edge);
      const Arrow& a = imm.orientation.at(halves[i].edge);
      const bool at_start = a.init != a.ter ? a.init == v : halves[i].end == 0;
      t[i] = departure_tangent(arc, at_start ? ArcEnd::start : ArcEnd::end);
    }
    std::array<double, 3> angles{spherical_angle(t[0], t[1]), spherical_angle(t[0], t[2]), spherical_angle(t[1], t[2])};
    for (double x : angles) {
      const double dev = std::abs(x - kThird);
      if (report.worst_vertex < 0 || dev > report.max_deviation) {
        report.max_deviation = std::max(report.max_deviation, dev);
        report.worst_vertex = v;
      }
    }
    report.angles[v] = angles;
  }
  return report;
}

VectorFlow immersion_to_flow(const Multigraph& g, const Immersion& imm, double tolerance) {
  const auto report = check_equiangular(g, imm);
  if (report.max_deviation > tolerance || report.max_endpoint_error > tolerance)
    throw PreconditionError("not_equiangular", "immersion deviates by " + std::to_string(report.max_deviation) +
                                                   " (endpoints " + std::to_string(report.max_endpoint_error) + ")");
  VectorFlow flow;
  flow.dim = 3;
  flow.orientation = imm.orientation;
  flow.tol = imm.tol;
  for (const auto& [id, arc] : imm.arcs) flow.values[id] = arc.axis.normalized();
  const auto vr = verify_vector_flow(g, flow);
  const double bound = 10 * (report.max_deviation + report.max_endpoint_error + flow.tol.eps_unit);
  if (vr.max_kcl_residual > bound)
    throw TheoremViolation("equiangular immersion produced residual " + std::to_string(vr.max_kcl_residual));
  return flow;
}

Immersion flow_to_immersion(const Multigraph& g, const VectorFlow& flow) {
  require_cubic_loopless(g, "flow_to_immersion");
  if (flow.dim != 3) throw PreconditionError("dimension_mismatch", "flow_to_immersion needs an S2-flow");
  const auto vr = verify_vector_flow(g, flow);
  if (!vr.ok(flow.tol))
    throw PreconditionError("unverified_flow", "flow residual " + std::to_string(vr.max_kcl_residual) + " exceeds tolerance");

  Immersion imm;
  imm.orientation = flow.orientation;
  imm.tol = flow.tol;
  for (VertexId v : g.vertices()) {
    const auto& inc = g.incident_edges(v);
    const Eigen::Vector3d u1 = outward(flow, inc[0], v), u2 = outward(flow, inc[1], v);
    const Eigen::Vector3d c = u1.cross(u2);
    if (c.norm() < 1e-6)
      throw PreconditionError("degenerate_flow", "outward values at vertex " + std::to_string(v) + " are parallel");
    imm.points[v] = c.normalized();
  }
  for (const auto& [id, x] : flow.values) {
    const Arrow& a = flow.orientation.at(id);
    const Eigen::Vector3d axis = Eigen::Vector3d(x).normalized();
    const Eigen::Vector3d& p = imm.points.at(a.init);
    const Eigen::Vector3d& q = imm.points.at(a.ter);
    imm.arcs[id] = Arc{axis, p, ccw_length(axis, p, q)};
  }
  const auto report = check_equiangular(g, imm);
  if (report.max_deviation > 1e-8 || report.max_endpoint_error > 1e-8)
    throw TheoremViolation("immersion built from an S2-flow is not equiangular (" +
                           std::to_string(report.max_deviation) + ")");
  return imm;
}

Immersion antipodal_flip(const Multigraph& g, const Immersion& imm, VertexId v) {
  if (!g.has_vertex(v)) throw PreconditionError("unknown_vertex", "unknown vertex " + std::to_string(v));
  Immersion out = imm;
  out.points[v] = -imm.points.at(v);
  auto swing = [](double length) { return length <= kPi ? length + kPi : length - kPi; };
  for (EdgeId id : g.incident_edges(v)) {
    const Arrow& a = imm.orientation.at(id);
    Arc& arc = out.arcs.at(id);
    const Arc& old = imm.arcs.at(id);
    if (a.init == a.ter) {
      arc.start = -old.start;  // both ends move, length unchanged
      continue;
    }
    if (a.init == v) arc.start = -old.start;
    arc.length = swing(old.length);
  }
  return out;
}

Immersion two_point_immersion(const Multigraph& g) {
  require_cubic_loopless(g, "two_point_immersion");
  const auto colours = three_edge_coloring_bipartite_cubic(g);
  const auto bip = is_bipartite(g);
  const std::set<VertexId> a(bip.parts->a.begin(), bip.parts->a.end());
  Immersion imm;
  for (VertexId v : g.vertices()) imm.points[v] = a.contains(v) ? kNorth : Eigen::Vector3d(-kNorth);
  for (int c = 0; c < 3; ++c) {
    const Eigen::Vector3d m = spherical_point(kPi / 2, kThird * c);
    for (EdgeId id : colours[c]) {
      const Edge& e = g.edge(id);
      imm.orientation.set(id, a.contains(e.u) ? Arrow{e.u, e.v} : Arrow{e.v, e.u});
      imm.arcs[id] = Arc{kNorth.cross(m), kNorth, kPi};
    }
  }
  return imm;
}

Immersion one_point_immersion(const Multigraph& g) {
  Immersion imm = two_point_immersion(g);
  const auto bip = is_bipartite(g);
  for (VertexId v : bip.parts->b) imm = antipodal_flip(g, imm, v);
  return imm;
}

ConstructedImmersion k4_immersion() {
  ConstructedImmersion out{complete_graph(4), {}, {}};
  auto ring = [](double theta, int i) { return spherical_point(theta, kThird * i); };
  // Angle between the meridian toward the pole and the arc toward the next ring vertex.
  auto f = [&](double theta) {
    const Eigen::Vector3d p = ring(theta, 0);
    return spherical_angle(tangent_toward(p, kNorth), tangent_toward(p, ring(theta, 1))) - kThird;
  };
  const double theta = bisect(f, 0.1, kPi - 0.1);
  out.theta = {theta};

  Immersion& imm = out.immersion;
  imm.orientation = Orientation::from_graph(out.graph);
  imm.points[0] = kNorth;
  for (int i = 1; i <= 3; ++i) imm.points[i] = ring(theta, i - 1);
  for (const auto& [id, e] : out.graph.edge_map()) imm.arcs[id] = minor_arc(imm.points[e.u], imm.points[e.v]);
  if (check_equiangular(out.graph, imm).max_deviation > 1e-9) throw TheoremViolation("K4 immersion is not equiangular");
  return out;
}

ConstructedImmersion quasi_petersen_immersion(int a, int b, int p) {
  if (!(6 * a > p && 2 * a < p && 6 * b > p && 2 * b < p))
    throw PreconditionError("parameter_range", "quasi_petersen_immersion needs p/6 < a, b < p/2 strictly");
  ConstructedImmersion out{quasi_petersen(a, b, p), {}, {}};
  const Eigen::Vector3d south = -kNorth;

  // Colatitude at which the meridian and the step-k cycle arc meet at 2pi/3.
  auto solve = [&](int k) {
    auto f = [&](double theta) {
      const Eigen::Vector3d x = spherical_point(theta, 0.0);
      const Eigen::Vector3d y = spherical_point(theta, 2 * kPi * k / p);
      return spherical_angle(tangent_toward(x, south), tangent_toward(x, y)) - kThird;
    };
    return bisect(f, 1e-6, kPi / 2);
  };
  const double tv = solve(a), tw = solve(b);
  out.theta = {tv, tw};

  Immersion& imm = out.immersion;
  imm.orientation = Orientation::from_graph(out.graph);
  for (int i = 0; i < p; ++i) {
    imm.points[i] = spherical_point(tv, 2 * kPi * i / p);
    imm.points[p + i] = spherical_point(kPi - tw, 2 * kPi * i / p);
  }
  for (const auto& [id, e] : out.graph.edge_map()) imm.arcs[id] = minor_arc(imm.points[e.u], imm.points[e.v]);

  for (int i = 0; i < 2 * p; ++i)
    for (int j = i + 1; j < 2 * p; ++j)
      if ((imm.points[i] - imm.points[j]).norm() < 1e-9) throw TheoremViolation("quasi-Petersen immersion is not injective");
  if (check_equiangular(out.graph, imm).max_deviation > 1e-9)
    throw TheoremViolation("quasi-Petersen immersion is not equiangular");
  return out;
}

BlownUpFlow blow_up_triangle_flow(const Multigraph& g, const VectorFlow& flow, VertexId v) {
  BlownUpFlow out{blow_up_triangle(g, v), {}};
  const auto k4 = k4_immersion();
  const VectorFlow h = immersion_to_flow(k4.graph, k4.immersion);
  const InjectedFlow inj = injection_flow_transfer(g, flow, v, k4.graph, h, 0);

  // Same vertex ids; bridges take the ids of the spokes they replace.
  std::map<EdgeId, EdgeId> rename;
  for (const BridgeEdge& br : inj.injection.bridges) rename[br.id] = br.host_edge;
  out.flow.dim = 3;
  out.flow.tol = flow.tol;
  for (const auto& [id, x] : inj.flow.values) {
    const EdgeId to = rename.contains(id) ? rename.at(id) : id;
    out.flow.values[to] = x;
    out.flow.orientation.set(to, inj.flow.orientation.at(id));
  }
  const auto report = verify_vector_flow(out.blowup.graph, out.flow);
  if (report.max_kcl_residual > 10 * flow.tol.eps_kcl) throw TheoremViolation("blown-up flow does not verify");
  return out;
}

std::map<EdgeId, std::vector<Eigen::Vector3d>> polylines(const Immersion& imm, int samples) {
  if (samples < 2) throw PreconditionError("bad_samples", "polylines need at least two samples per arc");
  std::map<EdgeId, std::vector<Eigen::Vector3d>> out;
  for (const auto& [id, arc] : imm.arcs) {
    auto& line = out[id];
    for (int k = 0; k < samples; ++k) line.push_back(arc.point_at(arc.length * k / (samples - 1)));
  }
  return out;
}

}  // namespace vecflow
