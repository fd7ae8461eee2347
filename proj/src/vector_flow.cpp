#include "vecflow/vector_flow.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "vecflow/errors.hpp"

namespace vecflow {

namespace {

void check_domain(const Multigraph& g, const VectorFlow& flow) {
  check_orientation(g, flow.orientation);
  if (flow.values.size() != g.num_edges())
    throw PreconditionError("domain_mismatch", "flow domain does not match the edge set");
  for (const auto& [id, _] : g.edge_map()) {
    auto it = flow.values.find(id);
    if (it == flow.values.end()) throw PreconditionError("domain_mismatch", "no value on edge " + std::to_string(id));
    if (it->second.size() != flow.dim)
      throw PreconditionError("dimension_mismatch", "edge " + std::to_string(id) + " has a value of dimension " +
                                                        std::to_string(it->second.size()) + ", expected " +
                                                        std::to_string(flow.dim));
  }
}

}  // namespace

VectorFlowReport verify_vector_flow(const Multigraph& g, const VectorFlow& flow) {
  check_domain(g, flow);
  VectorFlowReport report;
  for (VertexId v : g.vertices()) {
    Eigen::VectorXd net = Eigen::VectorXd::Zero(flow.dim);
    for (EdgeId id : g.incident_edges(v)) {
      const int dir = flow.orientation.direction_at(id, v);
      if (dir > 0) net += flow.values.at(id);
      if (dir < 0) net -= flow.values.at(id);
    }
    const double r = net.norm();
    if (report.worst_vertex < 0 || r > report.max_kcl_residual) {
      report.max_kcl_residual = r;
      report.worst_vertex = v;
    }
  }
  for (const auto& [id, x] : flow.values) {
    const double n = x.norm();
    report.max_norm_deviation = std::max(report.max_norm_deviation, std::abs(n - 1.0));
    if (n < 1e-12) report.zero_edges.push_back(id);
  }
  return report;
}

Eigen::VectorXd outward(const VectorFlow& flow, EdgeId e, VertexId v) {
  const int dir = flow.orientation.direction_at(e, v);
  return dir < 0 ? Eigen::VectorXd(-flow.values.at(e)) : flow.values.at(e);
}

Orientation euler_orientation(const Multigraph& g) {
  for (VertexId v : g.vertices())
    if (g.degree(v) % 2)
      throw PreconditionError("odd_degree", "vertex " + std::to_string(v) + " has odd degree " + std::to_string(g.degree(v)));
  Orientation o;
  std::set<EdgeId> used;
  std::map<VertexId, std::size_t> cursor;
  // Walk closed trails; in an even graph a walk can only get stuck at its start.
  for (VertexId start : g.vertices()) {
    for (;;) {
      VertexId x = start;
      bool moved = false;
      for (;;) {
        const auto& inc = g.incident_edges(x);
        std::size_t& c = cursor[x];
        while (c < inc.size() && used.contains(inc[c])) ++c;
        if (c == inc.size()) break;
        const EdgeId id = inc[c];
        used.insert(id);
        const VertexId y = g.opposite(id, x);
        o.set(id, {x, y});
        x = y;
        moved = true;
      }
      if (!moved) break;
      if (x != start) throw TheoremViolation("open trail in an even graph");
    }
  }
  return o;
}

VectorFlow s0_flow_even_graph(const Multigraph& g) {
  VectorFlow flow;
  flow.dim = 1;
  flow.orientation = euler_orientation(g);
  for (const auto& [id, _] : g.edge_map()) flow.values[id] = Eigen::VectorXd::Ones(1);
  const auto report = verify_vector_flow(g, flow);
  if (report.max_kcl_residual != 0.0) throw TheoremViolation("Euler orientation is not balanced");
  return flow;
}

VectorFlow s1_flow_R3(const Multigraph& g) {
  const auto colours = three_edge_coloring_bipartite_cubic(g);
  const auto bip = is_bipartite(g);
  const std::set<VertexId> a(bip.parts->a.begin(), bip.parts->a.end());
  VectorFlow flow;
  flow.dim = 2;
  for (int c = 0; c < 3; ++c) {
    const double t = 2 * std::numbers::pi * c / 3;
    for (EdgeId id : colours[c]) {
      const Edge& e = g.edge(id);
      flow.orientation.set(id, a.contains(e.u) ? Arrow{e.u, e.v} : Arrow{e.v, e.u});
      flow.values[id] = Eigen::Vector2d(std::cos(t), std::sin(t));
    }
  }
  if (verify_vector_flow(g, flow).max_kcl_residual > 1e-12) throw TheoremViolation("cube roots failed to balance");
  return flow;
}

VectorFlow embed(const VectorFlow& flow, int dim) {
  if (dim < flow.dim) throw PreconditionError("dimension_mismatch", "cannot embed into a smaller dimension");
  VectorFlow out = flow;
  out.dim = dim;
  for (auto& [id, x] : out.values) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
    y.head(flow.dim) = x;
    x = y;
  }
  return out;
}

namespace {

// First coordinate whose magnitude is (nearly) maximal decides the sign.
bool canonical_sign_positive(const Eigen::VectorXd& x) {
  const double m = x.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) >= m - 1e-9) return x[i] > 0;
  return true;
}

}  // namespace

FlowValueIndex build_value_index(const VectorFlow& flow, double cluster) {
  FlowValueIndex index;
  index.orientation = flow.orientation;
  for (const auto& [id, x] : flow.values) {
    int found = -1, sign = +1;
    for (int i = 0; i < index.b() && found < 0; ++i) {
      if ((x - index.values[i]).norm() <= cluster) found = i;
      else if ((x + index.values[i]).norm() <= cluster) found = i, sign = -1;
    }
    if (found < 0) {
      found = index.b();
      if (canonical_sign_positive(x)) {
        index.values.push_back(x);
      } else {
        index.values.push_back(-x);
        sign = -1;
      }
    }
    index.class_of[id] = found;
    if (sign < 0) index.orientation.reverse(id);
  }
  return index;
}

double balanced_residual(const Multigraph& g, const FlowValueIndex& index) {
  if (index.values.empty()) return 0.0;
  const auto dim = index.values.front().size();
  double worst = 0;
  for (VertexId v : g.vertices()) {
    Eigen::VectorXd net = Eigen::VectorXd::Zero(dim);
    for (EdgeId id : g.incident_edges(v)) {
      const int dir = index.orientation.direction_at(id, v);
      if (dir != 0) net += dir * index.values[index.class_of.at(id)];
    }
    worst = std::max(worst, net.norm());
  }
  return worst;
}

namespace {

Eigen::Matrix3d frame(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  Eigen::Matrix3d f;
  const Eigen::Vector3d e1 = a.normalized();
  const Eigen::Vector3d e2 = (b - b.dot(e1) * e1).normalized();
  f << e1, e2, e1.cross(e2);
  return f;
}

}  // namespace

InjectedFlow injection_flow_transfer(const Multigraph& G, const VectorFlow& g, VertexId v, const Multigraph& H,
                                     const VectorFlow& h, VertexId w, std::vector<int> pairing) {
  if (g.dim != 3 || h.dim != 3) throw PreconditionError("dimension_mismatch", "injection transfer needs S2-flows");
  if (!is_cubic(G) || !is_cubic(H)) throw PreconditionError("not_cubic", "injection transfer needs cubic graphs");
  const double tol_in = std::max(g.tol.eps_kcl, h.tol.eps_kcl);
  if (!verify_vector_flow(G, g).ok(g.tol)) throw PreconditionError("unverified_flow", "host flow does not verify");
  if (!verify_vector_flow(H, h).ok(h.tol)) throw PreconditionError("unverified_flow", "guest flow does not verify");

  InjectedFlow out{inject(H, w, G, v, pairing), {}};
  const Injection& inj = out.injection;
  const auto& host_inc = G.incident_edges(v);

  // theta(q_i) = p_i where q_i is the paired guest value and p_i = -a_i.
  std::array<Eigen::Vector3d, 3> p, q;
  for (int i = 0; i < 3; ++i) {
    p[i] = -outward(g, host_inc[i], v);
    q[i] = outward(h, inj.bridges[i].guest_edge, w);
  }
  const Eigen::Matrix3d theta = frame(p[0], p[1]) * frame(q[0], q[1]).transpose();
  for (int i = 0; i < 3; ++i)
    if ((theta * q[i] - p[i]).norm() > 1e-6)
      throw PreconditionError("no_rotation", "outward triples are not congruent; no aligning rotation");

  VectorFlow& f = out.flow;
  f.dim = 3;
  f.tol = g.tol;
  for (const auto& [id, e] : G.edge_map()) {
    if (e.u == v || e.v == v) continue;
    f.orientation.set(id, g.orientation.at(id));
    f.values[id] = g.values.at(id);
  }
  for (const auto& [old_id, new_id] : inj.guest_edges) {
    const Arrow& a = h.orientation.at(old_id);
    f.orientation.set(new_id, {inj.guest_vertices.at(a.init), inj.guest_vertices.at(a.ter)});
    f.values[new_id] = theta * Eigen::Vector3d(h.values.at(old_id));
  }
  for (const BridgeEdge& br : inj.bridges) {
    const Edge& e = inj.graph.edge(br.id);
    f.orientation.set(br.id, {e.u, e.v});
  }
  // Bridge values are forced by KCL at the host-side endpoint.
  for (int i = 0; i < 3; ++i) {
    const BridgeEdge& br = inj.bridges[i];
    const VertexId x = inj.graph.edge(br.id).u;
    Eigen::Vector3d rest = Eigen::Vector3d::Zero();
    int bridges_at_x = 0;
    for (EdgeId id : inj.graph.incident_edges(x)) {
      if (f.values.contains(id)) rest += outward(f, id, x);
      else ++bridges_at_x;
    }
    f.values[br.id] = bridges_at_x == 1 ? Eigen::VectorXd(-rest) : Eigen::VectorXd(p[i]);
  }
  const auto report = verify_vector_flow(inj.graph, f);
  if (report.max_kcl_residual > 10 * tol_in || report.max_norm_deviation > 10 * g.tol.eps_unit)
    throw TheoremViolation("injected flow fails KCL (residual " + std::to_string(report.max_kcl_residual) + ")");
  return out;
}

}  // namespace vecflow
