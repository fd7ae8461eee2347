#include "vecflow/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <string>

#include "vecflow/errors.hpp"

namespace vecflow {

namespace {

void insert_sorted(std::vector<EdgeId>& list, EdgeId e) {
  list.insert(std::upper_bound(list.begin(), list.end(), e), e);
}

void erase_one(std::vector<EdgeId>& list, EdgeId e) {
  auto it = std::lower_bound(list.begin(), list.end(), e);
  if (it != list.end() && *it == e) list.erase(it);
}

std::vector<TraceStep> reversed_path(std::vector<TraceStep> steps) {
  std::reverse(steps.begin(), steps.end());
  for (auto& s : steps) s.sign = -s.sign;
  return steps;
}

}  // namespace

// ---------------------------------------------------------------------------
// Multigraph

void Multigraph::set_allow_loops(bool allow) {
  if (!allow) {
    for (const auto& [id, e] : edges_)
      if (e.is_loop()) throw PreconditionError("loop", "graph already contains loop " + std::to_string(id));
  }
  allow_loops_ = allow;
}

void Multigraph::add_vertex(VertexId v) {
  if (!adjacency_.emplace(v, std::vector<EdgeId>{}).second)
    throw PreconditionError("duplicate_vertex", "vertex " + std::to_string(v) + " already exists");
}

VertexId Multigraph::add_vertex() {
  VertexId v = next_vertex_id();
  add_vertex(v);
  return v;
}

EdgeId Multigraph::add_edge(VertexId u, VertexId v) {
  EdgeId id = next_edge_id();
  add_edge(id, u, v);
  return id;
}

void Multigraph::add_edge(EdgeId id, VertexId u, VertexId v) {
  if (!has_vertex(u) || !has_vertex(v))
    throw PreconditionError("dangling_endpoint", "edge " + std::to_string(id) + " has an unknown endpoint");
  if (u == v && !allow_loops_)
    throw PreconditionError("loop", "loop " + std::to_string(id) + " in a loopless graph");
  if (!edges_.emplace(id, Edge{id, u, v}).second)
    throw PreconditionError("duplicate_edge", "edge " + std::to_string(id) + " already exists");
  insert_sorted(adjacency_[u], id);
  insert_sorted(adjacency_[v], id);
}

void Multigraph::remove_edge(EdgeId id) {
  const Edge e = edge(id);
  erase_one(adjacency_[e.u], id);
  erase_one(adjacency_[e.v], id);
  edges_.erase(id);
}

void Multigraph::reattach(HalfEdge h, VertexId to) {
  Edge e = edge(h.edge);
  if (!has_vertex(to)) throw PreconditionError("unknown_vertex", "unknown vertex " + std::to_string(to));
  VertexId& slot = h.end == 0 ? e.u : e.v;
  if (slot == to) return;
  if (e.u == e.v || (h.end == 0 ? e.v : e.u) == to) {
    if (!allow_loops_ && (h.end == 0 ? e.v : e.u) == to)
      throw PreconditionError("loop", "reattaching would create a loop");
  }
  erase_one(adjacency_[slot], h.edge);
  slot = to;
  insert_sorted(adjacency_[to], h.edge);
  edges_[h.edge] = e;
}

void Multigraph::remove_vertex(VertexId v) {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end()) throw PreconditionError("unknown_vertex", "unknown vertex " + std::to_string(v));
  if (!it->second.empty())
    throw PreconditionError("vertex_not_isolated", "vertex " + std::to_string(v) + " still has edges");
  adjacency_.erase(it);
}

const Edge& Multigraph::edge(EdgeId e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw PreconditionError("unknown_edge", "unknown edge " + std::to_string(e));
  return it->second;
}

std::vector<VertexId> Multigraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(adjacency_.size());
  for (const auto& [v, _] : adjacency_) out.push_back(v);
  return out;
}

std::vector<Edge> Multigraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [_, e] : edges_) out.push_back(e);
  return out;
}

std::vector<HalfEdge> Multigraph::half_edges(VertexId v) const {
  std::vector<HalfEdge> out;
  const auto& inc = incident_edges(v);
  for (std::size_t i = 0; i < inc.size(); ++i) {
    const Edge& e = edges_.at(inc[i]);
    if (e.is_loop()) {
      // Loops appear twice in a row in the incidence list.
      out.push_back({e.id, 0});
      out.push_back({e.id, 1});
      ++i;
    } else {
      out.push_back({e.id, e.u == v ? 0 : 1});
    }
  }
  return out;
}

const std::vector<EdgeId>& Multigraph::incident_edges(VertexId v) const {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end()) throw PreconditionError("unknown_vertex", "unknown vertex " + std::to_string(v));
  return it->second;
}

int Multigraph::degree(VertexId v) const { return static_cast<int>(incident_edges(v).size()); }

VertexId Multigraph::opposite(EdgeId id, VertexId v) const {
  const Edge& e = edge(id);
  if (e.u == v) return e.v;
  if (e.v == v) return e.u;
  throw PreconditionError("not_incident", "edge " + std::to_string(id) + " is not incident to " + std::to_string(v));
}

VertexId Multigraph::endpoint(HalfEdge h) const {
  const Edge& e = edge(h.edge);
  return h.end == 0 ? e.u : e.v;
}

VertexId Multigraph::next_vertex_id() const { return adjacency_.empty() ? 0 : adjacency_.rbegin()->first + 1; }

EdgeId Multigraph::next_edge_id() const { return edges_.empty() ? 0 : edges_.rbegin()->first + 1; }

// ---------------------------------------------------------------------------
// Orientation

Orientation Orientation::from_graph(const Multigraph& g) {
  Orientation o;
  for (const auto& [id, e] : g.edge_map()) o.arrows_[id] = {e.u, e.v};
  return o;
}

const Arrow& Orientation::at(EdgeId e) const {
  auto it = arrows_.find(e);
  if (it == arrows_.end()) throw PreconditionError("unoriented_edge", "edge " + std::to_string(e) + " has no orientation");
  return it->second;
}

void Orientation::reverse(EdgeId e) {
  Arrow& a = arrows_.at(e);
  std::swap(a.init, a.ter);
}

int Orientation::direction_at(EdgeId e, VertexId v) const {
  const Arrow& a = at(e);
  if (a.init == a.ter) return 0;
  if (a.init == v) return 1;
  if (a.ter == v) return -1;
  throw PreconditionError("not_incident", "edge " + std::to_string(e) + " is not incident to " + std::to_string(v));
}

void check_orientation(const Multigraph& g, const Orientation& o) {
  if (o.arrows().size() != g.num_edges())
    throw PreconditionError("orientation_mismatch", "orientation does not cover exactly the edge set");
  for (const auto& [id, e] : g.edge_map()) {
    if (!o.contains(id)) throw PreconditionError("orientation_mismatch", "edge " + std::to_string(id) + " unoriented");
    const Arrow& a = o.at(id);
    const bool same = (a.init == e.u && a.ter == e.v) || (a.init == e.v && a.ter == e.u);
    if (!same) throw PreconditionError("orientation_mismatch", "edge " + std::to_string(id) + " oriented between wrong endpoints");
  }
}

// ---------------------------------------------------------------------------
// Structural queries

CutSets cut(const Multigraph& g, const Orientation& o, const std::set<VertexId>& x) {
  for (VertexId v : x)
    if (!g.has_vertex(v)) throw PreconditionError("unknown_vertex", "unknown vertex " + std::to_string(v) + " in cut");
  CutSets out;
  for (const auto& [id, e] : g.edge_map()) {
    if (e.is_loop()) continue;
    const Arrow& a = o.at(id);
    const bool init_in = x.contains(a.init), ter_in = x.contains(a.ter);
    if (init_in && !ter_in) out.plus.push_back(id);
    if (!init_in && ter_in) out.minus.push_back(id);
  }
  return out;
}

std::map<VertexId, int> degrees(const Multigraph& g) {
  std::map<VertexId, int> out;
  for (VertexId v : g.vertices()) out[v] = g.degree(v);
  return out;
}

bool is_cubic(const Multigraph& g) {
  for (VertexId v : g.vertices())
    if (g.degree(v) != 3) return false;
  return true;
}

BipartiteCheck is_bipartite(const Multigraph& g) {
  std::map<VertexId, int> colour, depth;
  std::map<VertexId, VertexId> parent;
  for (VertexId root : g.vertices()) {
    if (colour.contains(root)) continue;
    colour[root] = 0;
    depth[root] = 0;
    parent[root] = root;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      VertexId x = queue.front();
      queue.pop_front();
      for (EdgeId id : g.incident_edges(x)) {
        VertexId y = g.opposite(id, x);
        if (!colour.contains(y)) {
          colour[y] = 1 - colour[x];
          depth[y] = depth[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (colour[y] == colour[x]) {
          BipartiteCheck fail;
          if (x == y) {
            fail.odd_cycle = {x, x};
            return fail;
          }
          // Climb to the lowest common ancestor in the BFS tree.
          std::vector<VertexId> left{x}, right{y};
          VertexId a = x, b = y;
          while (depth[a] > depth[b]) left.push_back(a = parent[a]);
          while (depth[b] > depth[a]) right.push_back(b = parent[b]);
          while (a != b) {
            left.push_back(a = parent[a]);
            right.push_back(b = parent[b]);
          }
          right.pop_back();
          std::reverse(right.begin(), right.end());
          fail.odd_cycle = left;
          fail.odd_cycle.insert(fail.odd_cycle.end(), right.begin(), right.end());
          fail.odd_cycle.push_back(x);
          return fail;
        }
      }
    }
  }
  Bipartition parts;
  for (const auto& [v, c] : colour) (c == 0 ? parts.a : parts.b).push_back(v);
  return BipartiteCheck{std::move(parts), {}};
}

std::vector<EdgeId> find_bridges(const Multigraph& g) {
  std::map<VertexId, int> disc, low;
  std::vector<EdgeId> bridges;
  int timer = 0;
  std::function<void(VertexId, EdgeId)> dfs = [&](VertexId x, EdgeId via) {
    disc[x] = low[x] = timer++;
    for (EdgeId id : g.incident_edges(x)) {
      if (id == via) continue;
      VertexId y = g.opposite(id, x);
      if (y == x) continue;
      if (!disc.contains(y)) {
        dfs(y, id);
        low[x] = std::min(low[x], low[y]);
        if (low[y] > disc[x]) bridges.push_back(id);
      } else {
        low[x] = std::min(low[x], disc[y]);
      }
    }
  };
  for (VertexId v : g.vertices())
    if (!disc.contains(v)) dfs(v, -1);
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

bool is_connected(const Multigraph& g) {
  if (g.num_vertices() == 0) return true;
  std::set<VertexId> seen;
  std::vector<VertexId> stack{g.vertices().front()};
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    for (EdgeId id : g.incident_edges(x)) stack.push_back(g.opposite(id, x));
  }
  return seen.size() == g.num_vertices();
}

std::array<std::vector<EdgeId>, 3> three_edge_coloring_bipartite_cubic(const Multigraph& g) {
  if (!is_cubic(g)) throw PreconditionError("not_cubic", "edge colouring needs a cubic graph");
  for (const auto& [id, e] : g.edge_map())
    if (e.is_loop()) throw PreconditionError("loop", "edge colouring needs a loopless graph");
  auto bip = is_bipartite(g);
  if (!bip) throw PreconditionError("not_bipartite", "edge colouring needs a bipartite graph");
  const auto& side_a = bip.parts->a;
  const std::set<VertexId> in_a(side_a.begin(), side_a.end());

  std::set<EdgeId> remaining;
  for (const auto& [id, _] : g.edge_map()) remaining.insert(id);

  std::array<std::vector<EdgeId>, 3> colours;
  for (int round = 0; round < 3; ++round) {
    // Kuhn's augmenting paths on the remaining (3 - round)-regular graph.
    std::map<VertexId, EdgeId> mate_of_b;  // b vertex -> matched edge
    std::map<VertexId, EdgeId> mate_of_a;
    std::set<VertexId> visited;
    std::function<bool(VertexId)> augment = [&](VertexId a) -> bool {
      for (EdgeId id : g.incident_edges(a)) {
        if (!remaining.contains(id)) continue;
        VertexId b = g.opposite(id, a);
        if (!visited.insert(b).second) continue;
        auto it = mate_of_b.find(b);
        if (it == mate_of_b.end() || augment(g.opposite(it->second, b))) {
          mate_of_b[b] = id;
          mate_of_a[a] = id;
          return true;
        }
      }
      return false;
    };
    for (VertexId a : side_a) {
      visited.clear();
      if (!augment(a)) throw TheoremViolation("regular bipartite graph without a perfect matching");
    }
    for (const auto& [a, id] : mate_of_a) {
      colours[round].push_back(id);
      remaining.erase(id);
    }
    std::sort(colours[round].begin(), colours[round].end());
  }
  return colours;
}

Multigraph subgraph(const Multigraph& g, const std::set<EdgeId>& edges) {
  Multigraph out(g.allows_loops());
  for (VertexId v : g.vertices()) out.add_vertex(v);
  for (EdgeId id : edges) {
    const Edge& e = g.edge(id);
    out.add_edge(id, e.u, e.v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transformations

Reduction reduce_to_cubic(const Multigraph& g) {
  for (VertexId v : g.vertices())
    if (g.degree(v) <= 1)
      throw PreconditionError("low_degree", "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)));

  Multigraph work(true);
  EdgeTrace trace;
  for (VertexId v : g.vertices()) {
    work.add_vertex(v);
    trace.vertices[v] = v;
  }
  for (const auto& [id, e] : g.edge_map()) {
    work.add_edge(id, e.u, e.v);
    trace.edges[id] = {{id, +1}};
  }
  VertexId fresh_vertex = g.next_vertex_id();
  EdgeId fresh_edge = g.next_edge_id();

  // R1 / R2: split high-degree vertices into pairs, plus a triple when odd.
  for (VertexId v : g.vertices()) {
    const int d = work.degree(v);
    if (d < 4) continue;
    const auto halves = work.half_edges(v);
    const int pairs = d % 2 == 0 ? d / 2 : (d - 3) / 2;
    std::size_t next = 0;
    auto take_group = [&](int size) {
      VertexId part = fresh_vertex++;
      work.add_vertex(part);
      trace.vertices[part] = trace.vertices[v];
      for (int k = 0; k < size; ++k) work.reattach(halves[next++], part);
    };
    for (int i = 0; i < pairs; ++i) take_group(2);
    if (d % 2 == 1) take_group(3);
    work.remove_vertex(v);
    trace.vertices.erase(v);
  }

  // R3: suppress degree-2 vertices, smallest id first.
  for (;;) {
    std::optional<VertexId> target;
    for (VertexId x : work.vertices()) {
      if (work.degree(x) != 2) continue;
      const auto& inc = work.incident_edges(x);
      if (inc[0] == inc[1]) continue;  // lone loop
      target = x;
      break;
    }
    if (!target) break;
    const VertexId x = *target;
    const auto halves = work.half_edges(x);
    const HalfEdge h1 = halves[0], h2 = halves[1];
    const VertexId a = work.endpoint({h1.edge, 1 - h1.end});
    const VertexId b = work.endpoint({h2.edge, 1 - h2.end});
    // Path a -> x -> b; e1 runs forward iff x is its v end, e2 iff x is its u end.
    std::vector<TraceStep> path = h1.end == 1 ? trace.edges[h1.edge] : reversed_path(trace.edges[h1.edge]);
    const auto second = h2.end == 0 ? trace.edges[h2.edge] : reversed_path(trace.edges[h2.edge]);
    path.insert(path.end(), second.begin(), second.end());

    work.remove_edge(h1.edge);
    work.remove_edge(h2.edge);
    trace.edges.erase(h1.edge);
    trace.edges.erase(h2.edge);
    work.remove_vertex(x);
    trace.vertices.erase(x);
    const EdgeId f = fresh_edge++;
    work.add_edge(f, a, b);
    trace.edges[f] = std::move(path);
  }
  return {std::move(work), std::move(trace)};
}

VertexSplit vertex_split(const Multigraph& g, VertexId v) {
  VertexSplit out{g, {}, g.half_edges(v)};
  VertexId fresh = g.next_vertex_id();
  for (const HalfEdge& h : out.half_edges) {
    VertexId leaf = fresh++;
    out.graph.add_vertex(leaf);
    out.graph.reattach(h, leaf);
    out.leaves.push_back(leaf);
  }
  out.graph.remove_vertex(v);
  return out;
}

Injection inject(const Multigraph& guest, VertexId w, const Multigraph& host, VertexId v, std::vector<int> pairing) {
  const int k = host.degree(v);
  if (guest.degree(w) != k)
    throw PreconditionError("degree_mismatch", "cannot inject: deg(v) = " + std::to_string(k) +
                                                   " but deg(w) = " + std::to_string(guest.degree(w)));
  auto no_loop_at = [](const Multigraph& g, VertexId x) {
    for (EdgeId id : g.incident_edges(x))
      if (g.edge(id).is_loop()) throw PreconditionError("loop", "injection vertex carries a loop");
  };
  no_loop_at(host, v);
  no_loop_at(guest, w);
  if (pairing.empty()) {
    pairing.resize(k);
    std::iota(pairing.begin(), pairing.end(), 0);
  }
  {
    auto sorted = pairing;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> ident(k);
    std::iota(ident.begin(), ident.end(), 0);
    if (sorted != ident) throw PreconditionError("bad_pairing", "pairing is not a permutation of the incident edges");
  }

  const auto& host_inc = host.incident_edges(v);
  const auto& guest_inc = guest.incident_edges(w);

  Injection out;
  out.graph = Multigraph(host.allows_loops() || guest.allows_loops());
  for (VertexId x : host.vertices())
    if (x != v) out.graph.add_vertex(x);
  for (const auto& [id, e] : host.edge_map())
    if (e.u != v && e.v != v) out.graph.add_edge(id, e.u, e.v);

  VertexId next_vertex = host.next_vertex_id();
  for (VertexId y : guest.vertices()) {
    if (y == w) continue;
    out.guest_vertices[y] = next_vertex;
    out.graph.add_vertex(next_vertex++);
  }
  EdgeId next_edge = host.next_edge_id();
  for (const auto& [id, e] : guest.edge_map()) {
    if (e.u == w || e.v == w) continue;
    out.guest_edges[id] = next_edge;
    out.graph.add_edge(next_edge++, out.guest_vertices.at(e.u), out.guest_vertices.at(e.v));
  }
  for (int i = 0; i < k; ++i) {
    const EdgeId he = host_inc[i];
    const EdgeId ge = guest_inc[pairing[i]];
    const VertexId x = host.opposite(he, v);
    const VertexId y = out.guest_vertices.at(guest.opposite(ge, w));
    out.graph.add_edge(next_edge, x, y);
    out.bridges.push_back({next_edge++, he, ge});
  }
  return out;
}

BlowUp blow_up_triangle(const Multigraph& g, VertexId v) {
  if (!is_cubic(g)) throw PreconditionError("not_cubic", "blow-up needs a cubic graph");
  const auto halves = g.half_edges(v);
  for (const auto& h : halves)
    if (g.edge(h.edge).is_loop()) throw PreconditionError("loop", "blow-up vertex carries a loop");

  BlowUp out;
  out.graph = g;
  VertexId fresh = g.next_vertex_id();
  for (int i = 0; i < 3; ++i) {
    out.triangle[i] = fresh++;
    out.graph.add_vertex(out.triangle[i]);
    out.graph.reattach(halves[i], out.triangle[i]);
    out.spokes[i] = halves[i].edge;
  }
  out.graph.remove_vertex(v);
  EdgeId next_edge = g.next_edge_id();
  const std::array<std::pair<int, int>, 3> sides{{{0, 1}, {0, 2}, {1, 2}}};
  for (int i = 0; i < 3; ++i) {
    out.triangle_edges[i] = next_edge;
    out.graph.add_edge(next_edge++, out.triangle[sides[i].first], out.triangle[sides[i].second]);
  }
  return out;
}

}  // namespace vecflow
