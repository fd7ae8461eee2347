#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "vecflow/errors.hpp"
#include "vecflow/generators.hpp"
#include "vecflow/graph.hpp"

using namespace vecflow;

namespace {

Multigraph petersen() { return quasi_petersen(1, 2, 5); }

int components(const Multigraph& g) {
  std::set<VertexId> seen;
  int count = 0;
  for (VertexId s : g.vertices()) {
    if (seen.contains(s)) continue;
    ++count;
    std::vector<VertexId> stack{s};
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      if (!seen.insert(x).second) continue;
      for (EdgeId id : g.incident_edges(x)) stack.push_back(g.opposite(id, x));
    }
  }
  return count;
}

Multigraph random_graph(int n, int m, std::mt19937_64& rng) {
  Multigraph g;
  for (int v = 0; v < n; ++v) g.add_vertex(v);
  std::uniform_int_distribution<int> pick(0, n - 1);
  while (static_cast<int>(g.num_edges()) < m) {
    int u = pick(rng), v = pick(rng);
    if (u != v) g.add_edge(u, v);
  }
  return g;
}

}  // namespace

TEST_CASE("multigraph bookkeeping") {
  Multigraph g;
  g.add_vertex(0);
  g.add_vertex(1);
  EdgeId e = g.add_edge(0, 1);
  EdgeId f = g.add_edge(0, 1);
  CHECK(e != f);
  CHECK(g.degree(0) == 2);
  CHECK_THROWS_AS(g.add_edge(0, 7), PreconditionError);
  CHECK_THROWS_AS(g.add_edge(0, 0), PreconditionError);
  CHECK_THROWS_AS(g.add_edge(e, 0, 1), PreconditionError);
  CHECK_THROWS_AS(g.remove_vertex(0), PreconditionError);
  g.remove_edge(e);
  CHECK(g.degree(1) == 1);
}

TEST_CASE("cut: definition cases") {
  Multigraph g;
  g.add_vertex(0);
  g.add_vertex(1);
  g.add_edge(0, 1);
  const Orientation o = Orientation::from_graph(g);
  auto cs = cut(g, o, {0});
  CHECK(cs.plus == std::vector<EdgeId>{0});
  CHECK(cs.minus.empty());
  cs = cut(g, o, {0, 1});
  CHECK(cs.plus.empty());
  CHECK(cs.minus.empty());
  CHECK_THROWS_AS(cut(g, o, {5}), PreconditionError);
}

TEST_CASE("cut: Petersen inner vertices cut exactly the matching") {
  const Multigraph g = petersen();
  std::set<VertexId> w{5, 6, 7, 8, 9};
  const auto cs = cut(g, Orientation::from_graph(g), w);
  int crossing = 0;  // oracle: count edges with exactly one end in W
  for (const Edge& e : g.edges()) crossing += w.contains(e.u) != w.contains(e.v);
  CHECK(crossing == 5);
  CHECK(cs.plus.size() + cs.minus.size() == 5u);
}

TEST_CASE("cut: size matches one-endpoint edges for every subset") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    Multigraph g = random_graph(8, 14, rng);
    g.set_allow_loops(true);
    g.add_edge(3, 3);
    Orientation o = Orientation::from_graph(g);
    for (const Edge& e : g.edges())
      if (rng() & 1) o.reverse(e.id);
    const auto vs = g.vertices();
    for (unsigned mask = 0; mask < (1u << vs.size()); ++mask) {
      std::set<VertexId> x;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (mask >> i & 1) x.insert(vs[i]);
      const auto cs = cut(g, o, x);
      std::size_t expect = 0;
      for (const Edge& e : g.edges()) expect += !e.is_loop() && x.contains(e.u) != x.contains(e.v);
      REQUIRE(cs.plus.size() + cs.minus.size() == expect);
      for (EdgeId id : cs.plus) CHECK(x.contains(o.init(id)));
      for (EdgeId id : cs.minus) CHECK(x.contains(o.ter(id)));
    }
  }
}

TEST_CASE("degrees and cubicity") {
  const Multigraph k4 = complete_graph(4);
  for (auto [v, d] : degrees(k4)) CHECK(d == 3);
  CHECK(is_cubic(k4));
  CHECK(is_cubic(petersen()));
  Multigraph loop(true);
  loop.add_vertex(0);
  loop.add_edge(0, 0);
  CHECK(degrees(loop).at(0) == 2);
  CHECK_FALSE(is_cubic(cycle_graph(4)));
}

TEST_CASE("bipartiteness") {
  auto k33 = is_bipartite(complete_bipartite(3, 3));
  REQUIRE(k33);
  CHECK(k33.parts->a.size() == 3);
  CHECK(k33.parts->b.size() == 3);
  auto q3 = is_bipartite(cube_graph());
  REQUIRE(q3);
  CHECK(q3.parts->a.size() == 4);
  const Multigraph cube = cube_graph();
  const std::set<VertexId> a(q3.parts->a.begin(), q3.parts->a.end());
  for (const Edge& e : cube.edges()) CHECK(a.contains(e.u) != a.contains(e.v));

  const Multigraph p = petersen();
  auto bp = is_bipartite(p);
  REQUIRE_FALSE(bp);
  const auto& walk = bp.odd_cycle;
  REQUIRE(walk.size() >= 2);
  CHECK(walk.front() == walk.back());
  CHECK((walk.size() - 1) % 2 == 1);
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    bool adjacent = false;
    for (EdgeId id : p.incident_edges(walk[i])) adjacent |= p.opposite(id, walk[i]) == walk[i + 1];
    CHECK(adjacent);
  }
}

TEST_CASE("bridges") {
  CHECK(find_bridges(bridged_triangles()) == std::vector<EdgeId>{6});
  CHECK(find_bridges(petersen()).empty());
  Multigraph p3;
  for (int v = 0; v < 3; ++v) p3.add_vertex(v);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  CHECK(find_bridges(p3) == std::vector<EdgeId>{0, 1});
  Multigraph doubled;  // parallel edges are never bridges
  doubled.add_vertex(0);
  doubled.add_vertex(1);
  doubled.add_edge(0, 1);
  doubled.add_edge(0, 1);
  CHECK(find_bridges(doubled).empty());
}

TEST_CASE("bridges agree with the delete-and-count oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Multigraph g = random_graph(7, 6 + trial % 8, rng);
    std::vector<EdgeId> expect;
    const int base = components(g);
    for (const Edge& e : g.edges()) {
      Multigraph h = g;
      h.remove_edge(e.id);
      if (components(h) > base) expect.push_back(e.id);
    }
    CHECK(find_bridges(g) == expect);
  }
}

TEST_CASE("three edge colouring of bipartite cubic graphs") {
  for (const Multigraph& g : {complete_bipartite(3, 3), cube_graph()}) {
    const auto colours = three_edge_coloring_bipartite_cubic(g);
    std::multiset<EdgeId> all;
    for (const auto& m : colours) {
      CHECK(m.size() * 2 == g.num_vertices());
      std::set<VertexId> covered;
      for (EdgeId id : m) {
        all.insert(id);
        covered.insert(g.edge(id).u);
        covered.insert(g.edge(id).v);
      }
      CHECK(covered.size() == g.num_vertices());
    }
    CHECK(all.size() == g.num_edges());
    CHECK(std::set<EdgeId>(all.begin(), all.end()).size() == g.num_edges());
  }
  CHECK_THROWS_AS(three_edge_coloring_bipartite_cubic(petersen()), PreconditionError);
}

TEST_CASE("reduce_to_cubic: degree-4 vertex splits into pairs") {
  Multigraph g;
  for (int v = 0; v < 5; ++v) g.add_vertex(v);
  for (int w = 1; w <= 4; ++w) g.add_edge(0, w);  // edges 0..3
  g.add_edge(1, 3);
  g.add_edge(1, 4);
  g.add_edge(2, 3);
  g.add_edge(2, 4);
  const Reduction r = reduce_to_cubic(g);
  CHECK(r.graph.vertices() == std::vector<VertexId>{1, 2, 3, 4});
  CHECK(is_cubic(r.graph));
  int w12 = 0, w34 = 0;
  for (const auto& [id, path] : r.trace.edges) {
    const Edge& e = r.graph.edge(id);
    if (path.size() != 2) continue;
    std::set<EdgeId> src{path[0].source, path[1].source};
    if (std::set<VertexId>{e.u, e.v} == std::set<VertexId>{1, 2}) w12 += src == std::set<EdgeId>{0, 1};
    if (std::set<VertexId>{e.u, e.v} == std::set<VertexId>{3, 4}) w34 += src == std::set<EdgeId>{2, 3};
  }
  CHECK(w12 == 1);
  CHECK(w34 == 1);
  CHECK(oracle::isomorphic(r.graph, complete_graph(4)));
}

TEST_CASE("reduce_to_cubic: degree-5 vertex leaves one cubic piece") {
  Multigraph g;
  for (int v = 0; v < 6; ++v) g.add_vertex(v);
  for (int w = 1; w <= 5; ++w) g.add_edge(0, w);
  for (int w = 1; w <= 5; ++w) g.add_edge(w, w % 5 + 1);
  const Reduction r = reduce_to_cubic(g);
  CHECK(is_cubic(r.graph));
  int from_v = 0;
  for (auto [x, src] : r.trace.vertices) from_v += src == 0;
  CHECK(from_v == 1);  // the pair piece was suppressed, the triple survives
  CHECK(r.graph.num_vertices() == 6u);
}

TEST_CASE("reduce_to_cubic: cubic input has identity trace") {
  const Multigraph g = petersen();
  const Reduction r = reduce_to_cubic(g);
  CHECK(r.graph.edge_map() == g.edge_map());
  for (const auto& [id, path] : r.trace.edges) CHECK(path == std::vector<TraceStep>{{id, +1}});
}

TEST_CASE("reduce_to_cubic: errors and degenerate cycles") {
  Multigraph leaf;
  leaf.add_vertex(0);
  leaf.add_vertex(1);
  leaf.add_edge(0, 1);
  CHECK_THROWS_AS(reduce_to_cubic(leaf), PreconditionError);
  const Reduction r = reduce_to_cubic(cycle_graph(5));
  CHECK(r.graph.num_vertices() == 1u);
  CHECK(r.graph.num_edges() == 1u);
  CHECK(r.trace.edges.begin()->second.size() == 5u);
}

static bool settled(const Multigraph& g, VertexId v, int d) {
  if (d == 3) return true;
  const auto& inc = g.incident_edges(v);
  return d == 2 && inc[0] == inc[1];
}

TEST_CASE("reduce_to_cubic: every source edge traced once, degrees settle at 3") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Multigraph g = oracle::random_4_regular(6 + trial % 3, rng);
    const Reduction r = reduce_to_cubic(g);
    std::multiset<EdgeId> seen;
    for (const auto& [id, path] : r.trace.edges)
      for (const auto& step : path) seen.insert(step.source);
    CHECK(seen.size() == g.num_edges());
    CHECK(std::set<EdgeId>(seen.begin(), seen.end()).size() == g.num_edges());
    // Every R1 piece has degree 2 and is suppressed, shrinking total degree by 2 each time.
    int total = 0;
    for (auto [v, d] : degrees(r.graph)) total += d;
    CHECK(total == 2 * static_cast<int>(r.graph.num_edges()));
    // Pair splits turn even-degree parts into cycles, which collapse to a lone loop.
    for (auto [v, d] : degrees(r.graph)) CHECK(settled(r.graph, v, d));
  }
  const Reduction k5 = reduce_to_cubic(complete_graph(5));
  for (auto [v, d] : degrees(k5.graph)) CHECK(settled(k5.graph, v, d));
  const Reduction mixed = reduce_to_cubic(quasi_petersen(2, 3, 7));
  CHECK(is_cubic(mixed.graph));
}

TEST_CASE("vertex_split leaves one leaf per incident edge") {
  for (auto [g, v] : {std::pair{complete_graph(4), 0}, std::pair{petersen(), 3}, std::pair{complete_graph(5), 2}}) {
    const VertexSplit s = vertex_split(g, v);
    CHECK(s.leaves.size() == static_cast<std::size_t>(g.degree(v)));
    CHECK(s.graph.num_vertices() == g.num_vertices() - 1 + s.leaves.size());
    CHECK(s.graph.num_edges() == g.num_edges());
    for (VertexId leaf : s.leaves) CHECK(s.graph.degree(leaf) == 1);
  }
}

TEST_CASE("inject: counts, prism and degree mismatch") {
  const Injection kp = inject(complete_graph(4), 0, petersen(), 0);
  CHECK(kp.graph.num_vertices() == 12u);
  CHECK(kp.graph.num_edges() == 18u);
  CHECK(is_cubic(kp.graph));

  const Injection kk = inject(complete_graph(4), 1, complete_graph(4), 2);
  CHECK(kk.graph.num_vertices() == 6u);
  CHECK(is_cubic(kk.graph));
  CHECK(oracle::isomorphic(kk.graph, prism_graph()));
  // Two vertex-disjoint triangles: the host remainder and the guest remainder.
  std::set<EdgeId> tri_edges;
  for (const Edge& e : kk.graph.edges()) {
    const bool gu = e.u > 3, gv = e.v > 3;
    if (gu == gv) tri_edges.insert(e.id);
  }
  CHECK(tri_edges.size() == 6u);

  Multigraph four = complete_graph(5);
  CHECK_THROWS_AS(inject(complete_graph(4), 0, four, 0), PreconditionError);
  CHECK_THROWS_AS(inject(complete_graph(4), 0, petersen(), 0, {0, 0, 1}), PreconditionError);
}

TEST_CASE("blow_up_triangle") {
  const BlowUp k4 = blow_up_triangle(complete_graph(4), 0);
  CHECK(k4.graph.num_vertices() == 6u);
  CHECK(k4.graph.num_edges() == 9u);
  CHECK(oracle::isomorphic(k4.graph, prism_graph()));
  const BlowUp p = blow_up_triangle(petersen(), 4);
  CHECK(p.graph.num_vertices() == 12u);
  CHECK(is_cubic(p.graph));
  CHECK_THROWS_AS(blow_up_triangle(complete_graph(5), 0), PreconditionError);
}

TEST_CASE("blow-up is injection of K4") {
  for (const Multigraph& g : {petersen(), complete_bipartite(3, 3), cube_graph(), prism_graph()}) {
    for (VertexId v : g.vertices()) {
      const BlowUp b = blow_up_triangle(g, v);
      const Injection i = inject(complete_graph(4), v % 4, g, v);
      CHECK(oracle::isomorphic(b.graph, i.graph));
      CHECK(is_cubic(i.graph));
    }
  }
}

TEST_CASE("quasi-Petersen family") {
  CHECK(oracle::isomorphic(quasi_petersen(1, 2, 5), generalized_petersen(5, 2)));

  const Multigraph g7 = quasi_petersen(2, 3, 7);
  std::set<EdgeId> cv;
  for (int i = 0; i < 7; ++i) cv.insert(i);
  Multigraph layer = subgraph(g7, cv);
  for (int i = 7; i < 14; ++i) layer.remove_vertex(i);
  CHECK(is_connected(layer));  // a single 7-cycle
  for (int i = 0; i < 7; ++i) CHECK(layer.degree(i) == 2);

  const Multigraph g4 = quasi_petersen(2, 2, 4);
  CHECK(is_cubic(g4));
  std::map<std::pair<int, int>, int> pairs;
  for (int i = 0; i < 4; ++i) ++pairs[std::minmax(g4.edge(i).u, g4.edge(i).v)];
  CHECK(pairs.size() == 2u);
  for (auto [pair, count] : pairs) CHECK(count == 2);

  CHECK_THROWS_AS(quasi_petersen(0, 2, 5), PreconditionError);
  CHECK_THROWS_AS(quasi_petersen(1, 3, 5), PreconditionError);
  CHECK_THROWS_AS(generalized_petersen(4, 2), PreconditionError);
}

TEST_CASE("quasi-Petersen distinct edges = 3p exactly when a, b != p/2") {
  for (int p = 3; p <= 14; ++p)
    for (int a = (p + 5) / 6; 2 * a <= p; ++a)
      for (int b = (p + 5) / 6; 2 * b <= p; ++b) {
        const Multigraph g = quasi_petersen(a, b, p);
        CHECK(g.num_edges() == static_cast<std::size_t>(3 * p));
        CHECK(is_cubic(g));
        std::set<std::pair<int, int>> distinct;
        for (const Edge& e : g.edges()) distinct.insert(std::minmax(e.u, e.v));
        const bool halves = 2 * a == p || 2 * b == p;
        CHECK((distinct.size() == static_cast<std::size_t>(3 * p)) == !halves);
      }
}
