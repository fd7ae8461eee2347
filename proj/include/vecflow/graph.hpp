#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace vecflow {

using VertexId = int;
using EdgeId = int;

struct Edge {
  EdgeId id;
  VertexId u;
  VertexId v;
  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One end of an edge. `end == 0` is the `u` side, `end == 1` the `v` side.
struct HalfEdge {
  EdgeId edge;
  int end;
  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// Finite multigraph with stable integer ids. Parallel edges are always
/// allowed; loops only when the graph was built with `allow_loops`.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(bool allow_loops) : allow_loops_(allow_loops) {}

  bool allows_loops() const { return allow_loops_; }
  void set_allow_loops(bool allow);

  void add_vertex(VertexId v);
  VertexId add_vertex();
  EdgeId add_edge(VertexId u, VertexId v);
  void add_edge(EdgeId id, VertexId u, VertexId v);
  void remove_edge(EdgeId id);
  /// Moves one end of an edge to another existing vertex, keeping the id.
  void reattach(HalfEdge h, VertexId to);
  /// Only isolated vertices can be removed.
  void remove_vertex(VertexId v);

  bool has_vertex(VertexId v) const { return adjacency_.contains(v); }
  bool has_edge(EdgeId e) const { return edges_.contains(e); }
  const Edge& edge(EdgeId e) const;

  std::vector<VertexId> vertices() const;
  std::vector<Edge> edges() const;
  const std::map<EdgeId, Edge>& edge_map() const { return edges_; }
  std::size_t num_vertices() const { return adjacency_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  /// Half-edges at `v` ordered by (edge id, end); a loop contributes two.
  std::vector<HalfEdge> half_edges(VertexId v) const;
  /// Incident edge ids in id order; a loop is listed twice.
  const std::vector<EdgeId>& incident_edges(VertexId v) const;
  int degree(VertexId v) const;
  VertexId opposite(EdgeId e, VertexId v) const;
  VertexId endpoint(HalfEdge h) const;

  VertexId next_vertex_id() const;
  EdgeId next_edge_id() const;

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  bool allow_loops_ = false;
  std::map<VertexId, std::vector<EdgeId>> adjacency_;
  std::map<EdgeId, Edge> edges_;
};

struct Arrow {
  VertexId init;
  VertexId ter;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Per-edge choice of initial and terminal vertex.
class Orientation {
 public:
  Orientation() = default;
  /// init = u, ter = v for every edge.
  static Orientation from_graph(const Multigraph& g);

  const Arrow& at(EdgeId e) const;
  VertexId init(EdgeId e) const { return at(e).init; }
  VertexId ter(EdgeId e) const { return at(e).ter; }
  void set(EdgeId e, Arrow a) { arrows_[e] = a; }
  void reverse(EdgeId e);
  bool contains(EdgeId e) const { return arrows_.contains(e); }
  /// +1 if `e` leaves `v`, -1 if it enters `v`, 0 for a loop at `v`.
  int direction_at(EdgeId e, VertexId v) const;
  const std::map<EdgeId, Arrow>& arrows() const { return arrows_; }

  friend bool operator==(const Orientation&, const Orientation&) = default;

 private:
  std::map<EdgeId, Arrow> arrows_;
};

/// Throws PreconditionError unless `o` orients exactly the edges of `g`
/// and agrees with every edge's endpoint set.
void check_orientation(const Multigraph& g, const Orientation& o);

struct CutSets {
  std::vector<EdgeId> plus;   // init in X, ter outside
  std::vector<EdgeId> minus;  // init outside, ter in X
};

CutSets cut(const Multigraph& g, const Orientation& o, const std::set<VertexId>& x);

/// Loops count twice.
std::map<VertexId, int> degrees(const Multigraph& g);
bool is_cubic(const Multigraph& g);

struct Bipartition {
  std::vector<VertexId> a;
  std::vector<VertexId> b;
};

struct BipartiteCheck {
  std::optional<Bipartition> parts;
  /// Closed walk of odd length (first vertex repeated at the end) when
  /// `parts` is empty.
  std::vector<VertexId> odd_cycle;
  explicit operator bool() const { return parts.has_value(); }
};

/// Two-colouring by BFS from the smallest uncoloured vertex, which goes to `a`.
BipartiteCheck is_bipartite(const Multigraph& g);

std::vector<EdgeId> find_bridges(const Multigraph& g);

/// Partition of a bipartite cubic multigraph's edges into three perfect
/// matchings (each sorted by id).
std::array<std::vector<EdgeId>, 3> three_edge_coloring_bipartite_cubic(const Multigraph& g);

/// Spanning subgraph on all of g's vertices with the listed edges.
Multigraph subgraph(const Multigraph& g, const std::set<EdgeId>& edges);

bool is_connected(const Multigraph& g);

// ---------------------------------------------------------------------------
// Transformations

struct TraceStep {
  EdgeId source;
  /// +1 when walking the derived edge from u to v walks `source` from its u
  /// to its v, -1 otherwise.
  int sign;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// Provenance of a transformed graph: every derived edge maps to the ordered
/// source path it replaces, every derived vertex to the source vertex it came
/// from (vertices created by splitting map to the split vertex).
struct EdgeTrace {
  std::map<EdgeId, std::vector<TraceStep>> edges;
  std::map<VertexId, VertexId> vertices;
};

struct Reduction {
  Multigraph graph;
  EdgeTrace trace;
};

/// Splits every vertex of degree >= 4 into pairs (plus one triple when the
/// degree is odd), then suppresses degree-2 vertices until none remain. A
/// vertex whose only edge is a loop is kept since it cannot be suppressed.
Reduction reduce_to_cubic(const Multigraph& g);

struct VertexSplit {
  Multigraph graph;
  /// leaves[i] hangs off the i-th half-edge of the split vertex.
  std::vector<VertexId> leaves;
  std::vector<HalfEdge> half_edges;
};

VertexSplit vertex_split(const Multigraph& g, VertexId v);

struct BridgeEdge {
  EdgeId id;
  EdgeId host_edge;
  EdgeId guest_edge;
};

/// Result of injecting a guest graph H at w into a host graph G at v.
/// Host vertex and edge ids are kept; guest ids are relabelled.
struct Injection {
  Multigraph graph;
  std::map<VertexId, VertexId> guest_vertices;
  std::map<EdgeId, EdgeId> guest_edges;
  std::vector<BridgeEdge> bridges;
};

/// `pairing[i] = j` joins the host's i-th incident edge at v with the
/// guest's j-th incident edge at w (both in id order). Empty means identity.
Injection inject(const Multigraph& guest, VertexId w, const Multigraph& host, VertexId v,
                 std::vector<int> pairing = {});

struct BlowUp {
  Multigraph graph;
  /// triangle[i] adopts the neighbour reached by the i-th incident edge of v.
  std::array<VertexId, 3> triangle;
  /// Original edges at v (same ids), now ending at triangle[i].
  std::array<EdgeId, 3> spokes;
  /// Edges triangle[0]triangle[1], triangle[0]triangle[2], triangle[1]triangle[2].
  std::array<EdgeId, 3> triangle_edges;
};

BlowUp blow_up_triangle(const Multigraph& g, VertexId v);

}  // namespace vecflow
