#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "oracles.hpp"
#include "vecflow/cotree.hpp"
#include "vecflow/errors.hpp"
#include "vecflow/generators.hpp"
#include "vecflow/group_flow.hpp"

using namespace vecflow;

namespace {

Multigraph petersen() { return quasi_petersen(1, 2, 5); }

// Plain KCL in the test's own terms: sum of values leaving minus entering.
bool kcl_holds(const Multigraph& g, const GroupFlow& f) {
  for (VertexId v : g.vertices()) {
    GroupElement total = f.group.zero();
    for (const auto& [id, arrow] : f.orientation.arrows()) {
      if (arrow.init == arrow.ter) continue;
      if (arrow.init == v) total = f.group.add(total, f.values.at(id));
      if (arrow.ter == v) total = f.group.add(total, f.group.neg(f.values.at(id)));
    }
    if (!f.group.is_zero(total)) return false;
  }
  return true;
}

bool nowhere_zero_oracle(const Multigraph& g, const GroupFlow& f) {
  if (f.values.size() != g.num_edges()) return false;
  for (const auto& [id, x] : f.values)
    if (f.group.is_zero(x)) return false;
  return kcl_holds(g, f);
}

GroupFlow constant_flow(const Multigraph& g, const Orientation& o, const AbelianGroup& grp, GroupElement x) {
  GroupFlow f{grp, o, {}};
  for (const auto& [id, _] : g.edge_map()) f.values[id] = x;
  return f;
}

Orientation a_to_b(const Multigraph& g) {
  const auto parts = is_bipartite(g).parts.value();
  const std::set<VertexId> a(parts.a.begin(), parts.a.end());
  Orientation o;
  for (const auto& [id, e] : g.edge_map()) o.set(id, a.contains(e.u) ? Arrow{e.u, e.v} : Arrow{e.v, e.u});
  return o;
}

// 3-edge-colouring by backtracking over edges; independent of any flow code.
bool three_edge_colourable(const Multigraph& g) {
  const auto edges = g.edges();
  std::map<EdgeId, int> colour;
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == edges.size()) return true;
    for (int c = 0; c < 3; ++c) {
      bool ok = true;
      for (VertexId x : {edges[i].u, edges[i].v})
        for (EdgeId other : g.incident_edges(x))
          if (colour.contains(other) && colour[other] == c) ok = false;
      if (!ok) continue;
      colour[edges[i].id] = c;
      if (go(i + 1)) return true;
      colour.erase(edges[i].id);
    }
    return false;
  };
  return go(0);
}

}  // namespace

TEST_CASE("abelian group arithmetic") {
  const AbelianGroup z6 = AbelianGroup::parse("z6");
  CHECK(z6.order() == 6);
  CHECK(z6.add({4}, {5}) == GroupElement{3});
  CHECK(z6.neg({2}) == GroupElement{4});
  CHECK(z6.is_zero(z6.add({2}, z6.neg({2}))));
  const AbelianGroup k = AbelianGroup::parse("z2xz2");
  CHECK(k.moduli == std::vector<int>{2, 2});
  CHECK(k.name() == "z2xz2");
  CHECK(k.order() == 4);
  for (std::int64_t i = 0; i < k.order(); ++i) {
    CHECK(k.index(k.element(i)) == i);
    CHECK(k.is_zero(k.add(k.element(i), k.element(i))));
  }
  CHECK(k.element(1) == GroupElement{0, 1});
  CHECK(k.element(2) == GroupElement{1, 0});
  CHECK_THROWS_AS(AbelianGroup::parse("z1"), PreconditionError);
  CHECK_THROWS_AS(AbelianGroup::parse("q7"), PreconditionError);
  CHECK_THROWS_AS(k.check({0, 2}), PreconditionError);
  CHECK_THROWS_AS(k.check({0}), PreconditionError);
}

TEST_CASE("verify_circulation examples") {
  const Multigraph tri = cycle_graph(3);
  const AbelianGroup z3 = AbelianGroup::parse("z3");
  const auto r = verify_circulation(tri, constant_flow(tri, Orientation::from_graph(tri), z3, {1}));
  CHECK(r.nowhere_zero());

  const Multigraph k33 = complete_bipartite(3, 3);
  CHECK(verify_circulation(k33, constant_flow(k33, a_to_b(k33), z3, {1})).nowhere_zero());
  const auto bad = verify_circulation(k33, constant_flow(k33, a_to_b(k33), AbelianGroup::parse("z4"), {1}));
  CHECK(bad.kcl_violations.size() == 6u);
  CHECK(bad.zeros.empty());

  auto zero = constant_flow(tri, Orientation::from_graph(tri), z3, {1});
  zero.values[0] = {0};
  const auto zr = verify_circulation(tri, zero);
  CHECK(zr.zeros == std::vector<EdgeId>{0});

  auto wrong = constant_flow(tri, Orientation::from_graph(tri), z3, {1});
  wrong.values[0] = {1, 0};
  CHECK_THROWS_AS(verify_circulation(tri, wrong), PreconditionError);
  wrong.values.erase(0);
  CHECK_THROWS_AS(verify_circulation(tri, wrong), PreconditionError);
}

TEST_CASE("cut balance holds for every vertex subset of random circulations") {
  std::mt19937_64 rng(11);
  const std::vector<Multigraph> graphs{petersen(), complete_graph(4), complete_bipartite(3, 3), cube_graph(),
                                       prism_graph(), complete_graph(5)};
  for (const auto& grp : {AbelianGroup::parse("z6"), AbelianGroup::parse("z2xz2"), AbelianGroup::parse("z5")}) {
    for (const Multigraph& g : graphs) {
      const GroupFlow f = oracle::random_circulation(g, grp, rng);
      REQUIRE(kcl_holds(g, f));
      const auto vs = g.vertices();
      for (std::uint32_t mask = 0; mask < (1u << vs.size()); ++mask) {
        std::set<VertexId> x;
        for (std::size_t i = 0; i < vs.size(); ++i)
          if (mask >> i & 1) x.insert(vs[i]);
        CHECK(verify_cut_balance(g, f, x));
      }
    }
  }
}

TEST_CASE("cut balance: singleton equals KCL, full set vacuous, bridge forced to zero") {
  const Multigraph tri = cycle_graph(3);
  const AbelianGroup z5 = AbelianGroup::parse("z5");
  auto broken = constant_flow(tri, Orientation::from_graph(tri), z5, {1});
  broken.values[2] = {3};
  const auto report = verify_circulation(tri, broken);
  CHECK(report.kcl_violations == std::vector<VertexId>{0, 2});
  for (VertexId v : tri.vertices()) {
    const bool kcl_ok = std::find(report.kcl_violations.begin(), report.kcl_violations.end(), v) ==
                        report.kcl_violations.end();
    CHECK(verify_cut_balance(tri, broken, {v}) == kcl_ok);
  }
  CHECK(verify_cut_balance(tri, broken, {0, 1, 2}));

  const Multigraph bt = bridged_triangles();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const GroupFlow f = oracle::random_circulation(bt, z5, rng);
    CHECK(verify_cut_balance(bt, f, {0, 1, 2}));
    CHECK(z5.is_zero(f.values.at(6)));
  }
}

TEST_CASE("reverse_edge_normalize") {
  std::mt19937_64 rng(2);
  const Multigraph g = petersen();
  const AbelianGroup z6 = AbelianGroup::parse("z6");
  const GroupFlow f = oracle::random_circulation(g, z6, rng);
  const GroupFlow same = reverse_edge_normalize(f, [](EdgeId, const GroupElement&) { return true; });
  CHECK(same.values == f.values);
  CHECK(same.orientation == f.orientation);

  const GroupFlow all = reverse_edge_normalize(f, [](EdgeId, const GroupElement&) { return false; });
  for (const auto& [id, x] : f.values) {
    CHECK(all.values.at(id) == z6.neg(x));
    CHECK(all.orientation.init(id) == f.orientation.ter(id));
  }
  CHECK(kcl_holds(g, all));

  // Normalising commutes with verification, valid or not.
  for (int trial = 0; trial < 30; ++trial) {
    GroupFlow h = oracle::random_circulation(g, z6, rng);
    if (trial % 2) h.values[trial % 15] = z6.add(h.values[trial % 15], {1});
    const int pick = trial % 15;
    const GroupFlow n = reverse_edge_normalize(h, [&](EdgeId id, const GroupElement& x) { return id != pick && x[0] < 3; });
    const auto before = verify_circulation(g, h), after = verify_circulation(g, n);
    CHECK(before.kcl_violations == after.kcl_violations);
    CHECK(before.zeros == after.zeros);
  }
}

TEST_CASE("solve_flow_exhaustive examples") {
  const auto z4 = solve_flow_exhaustive(petersen(), AbelianGroup::parse("z4"));
  CHECK(z4.verdict == Verdict::none);
  CHECK_FALSE(z4.flow);
  CHECK_FALSE(three_edge_colourable(petersen()));

  const auto z5 = solve_flow_exhaustive(petersen(), AbelianGroup::parse("z5"));
  REQUIRE(z5.verdict == Verdict::found);
  CHECK(nowhere_zero_oracle(petersen(), *z5.flow));

  for (const char* name : {"z2", "z3", "z6", "z2xz2"}) {
    const auto r = solve_flow_exhaustive(bridged_triangles(), AbelianGroup::parse(name));
    CHECK(r.verdict == Verdict::none);
    CHECK(r.nodes <= 1);
  }

  CHECK(to_string(Verdict::found) == "found");
  CHECK(to_string(Verdict::none) == "none");
  CHECK(to_string(Verdict::budget) == "budget");
}

TEST_CASE("solver witness is the lexicographically first cotree assignment") {
  // Brute force over every edge assignment of K4 in Z5 and Z3xZ2.
  const Multigraph g = complete_graph(4);
  const Orientation o = Orientation::from_graph(g);
  const CycleBasis basis = cycle_basis(g, o);
  for (const char* name : {"z5", "z3", "z2xz2"}) {
    const AbelianGroup grp = AbelianGroup::parse(name);
    std::optional<std::vector<std::int64_t>> best;
    const auto edges = g.edges();
    std::vector<std::int64_t> idx(edges.size(), 0);
    for (;;) {
      GroupFlow f{grp, o, {}};
      for (std::size_t i = 0; i < edges.size(); ++i) f.values[edges[i].id] = grp.element(idx[i]);
      if (nowhere_zero_oracle(g, f)) {
        std::vector<std::int64_t> key;
        for (EdgeId c : basis.cotree) key.push_back(grp.index(f.values.at(c)));
        if (!best || key < *best) best = key;
      }
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == grp.order()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
    const auto r = solve_flow_exhaustive(g, grp);
    CHECK(r.verdict == (best ? Verdict::found : Verdict::none));
    if (best) {
      std::vector<std::int64_t> key;
      for (EdgeId c : basis.cotree) key.push_back(grp.index(r.flow->values.at(c)));
      CHECK(key == *best);
    }
  }
}

TEST_CASE("solver reports budget exhaustion separately") {
  // A colourable component followed by Petersen: every colouring of the first
  // part is retried against the second, far beyond 1024 nodes.
  Multigraph g = generalized_petersen(10, 3);
  const Multigraph p = petersen();
  for (VertexId v : p.vertices()) g.add_vertex(20 + v);
  for (const Edge& e : p.edges()) g.add_edge(20 + e.u, 20 + e.v);
  const auto r = solve_flow_exhaustive(g, AbelianGroup::parse("z2xz2"), std::chrono::milliseconds{0});
  CHECK(r.verdict == Verdict::budget);
  CHECK_FALSE(r.flow);
}

TEST_CASE("Z4 and Z2xZ2 flows exist together on small cubic multigraphs") {
  const AbelianGroup z4 = AbelianGroup::parse("z4"), k = AbelianGroup::parse("z2xz2");
  int graphs = 0, with_flow = 0;
  for (int n = 2; n <= 8; n += 2) {
    for (const Multigraph& g : oracle::cubic_multigraphs(n)) {
      const auto a = solve_flow_exhaustive(g, z4), b = solve_flow_exhaustive(g, k);
      REQUIRE(a.verdict != Verdict::budget);
      REQUIRE(b.verdict != Verdict::budget);
      CHECK(a.verdict == b.verdict);
      if (a.flow) CHECK(nowhere_zero_oracle(g, *a.flow));
      if (b.flow) CHECK(nowhere_zero_oracle(g, *b.flow));
      ++graphs;
      with_flow += a.verdict == Verdict::found;
    }
  }
  CHECK(graphs > 20);
  CHECK(with_flow > 0);
  CHECK(with_flow < graphs);
}

TEST_CASE("z3_flow_bipartite_cubic") {
  for (const Multigraph& g : {complete_bipartite(3, 3), cube_graph()}) {
    const GroupFlow f = z3_flow_bipartite_cubic(g);
    CHECK(nowhere_zero_oracle(g, f));
    CHECK(f.orientation == a_to_b(g));
  }
  CHECK_THROWS_AS(z3_flow_bipartite_cubic(petersen()), PreconditionError);
  CHECK_THROWS_AS(z3_flow_bipartite_cubic(cycle_graph(4)), PreconditionError);
}

TEST_CASE("lift_flow") {
  SUBCASE("identity trace") {
    const Multigraph g = petersen();
    const Reduction r = reduce_to_cubic(g);
    const auto s = solve_flow_exhaustive(r.graph, AbelianGroup::parse("z5"));
    const GroupFlow lifted = lift_flow(g, r, *s.flow);
    CHECK(lifted.values == s.flow->values);
  }
  SUBCASE("suppressed path carries its value forward") {
    // Theta graph with one side subdivided: 0-1 (e0), 0-1 (e1), 0-2 (e2), 2-1 (e3).
    Multigraph g;
    for (int v = 0; v < 3; ++v) g.add_vertex(v);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    const Reduction r = reduce_to_cubic(g);
    REQUIRE(r.graph.num_vertices() == 2u);
    const AbelianGroup z3 = AbelianGroup::parse("z3");
    const auto s = solve_flow_exhaustive(r.graph, z3);
    REQUIRE(s.flow);
    const GroupFlow lifted = lift_flow(g, r, *s.flow);
    CHECK(nowhere_zero_oracle(g, lifted));
    // 0 -> 2 -> 1 runs e2 forward and e3 backward.
    CHECK(lifted.values.at(2) == z3.neg(lifted.values.at(3)));
  }
  SUBCASE("K5 over Z5") {
    const Multigraph g = complete_graph(5);
    const Reduction r = reduce_to_cubic(g);
    const auto s = solve_flow_exhaustive(r.graph, AbelianGroup::parse("z5"));
    REQUIRE(s.verdict == Verdict::found);
    CHECK(nowhere_zero_oracle(g, lift_flow(g, r, *s.flow)));
  }
  SUBCASE("random 4-regular and mixed-degree graphs") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 8; ++trial) {
      Multigraph g = oracle::random_4_regular(6 + trial % 4, rng);
      if (trial % 2) g.add_edge(0, 1);  // two odd vertices become degree 5
      const Reduction r = reduce_to_cubic(g);
      for (const char* name : {"z5", "z6", "z3"}) {
        const auto s = solve_flow_exhaustive(r.graph, AbelianGroup::parse(name));
        if (!s.flow) continue;
        CHECK(nowhere_zero_oracle(g, lift_flow(g, r, *s.flow)));
      }
      // Arbitrary circulations lift to circulations too.
      const GroupFlow c = oracle::random_circulation(r.graph, AbelianGroup::parse("z6"), rng);
      CHECK(kcl_holds(g, lift_flow(g, r, c)));
    }
  }
  SUBCASE("mismatched flow") {
    const Multigraph g = complete_graph(5);
    const Reduction r = reduce_to_cubic(g);
    GroupFlow bad{AbelianGroup::parse("z5"), Orientation::from_graph(r.graph), {}};
    CHECK_THROWS_AS(lift_flow(g, r, bad), PreconditionError);
  }
}
