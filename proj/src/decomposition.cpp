#include "vecflow/decomposition.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "vecflow/cotree.hpp"
#include "vecflow/errors.hpp"

namespace vecflow {

VectorFlow compose_decomposition(const Multigraph& g, const std::vector<DecompositionPart>& parts, int l) {
  if (l < 1) throw PreconditionError("bad_multiplicity", "l must be positive");
  std::map<EdgeId, int> coverage;
  int dim = 0;
  for (const auto& part : parts) {
    const Multigraph h = subgraph(g, part.edges);
    if (!verify_vector_flow(h, part.flow).ok(part.flow.tol))
      throw PreconditionError("unverified_part", "a decomposition part does not verify on its subgraph");
    for (EdgeId id : part.edges) ++coverage[id];
    dim += part.flow.dim;
  }
  for (const auto& [id, _] : g.edge_map())
    if (coverage[id] != l)
      throw PreconditionError("coverage", "edge " + std::to_string(id) + " lies in " + std::to_string(coverage[id]) +
                                              " parts, expected " + std::to_string(l));

  VectorFlow out;
  out.dim = dim;
  out.orientation = Orientation::from_graph(g);
  const double scale = 1.0 / std::sqrt(static_cast<double>(l));
  for (const auto& [id, e] : g.edge_map()) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    int offset = 0;
    for (const auto& part : parts) {
      if (part.edges.contains(id)) {
        const double sign = part.flow.orientation.init(id) == e.u ? 1.0 : -1.0;
        x.segment(offset, part.flow.dim) = sign * scale * part.flow.values.at(id);
      }
      offset += part.flow.dim;
    }
    out.values[id] = x;
  }
  return out;
}

VectorFlow s1_from_integer_3flow(const Multigraph& g, const std::map<EdgeId, int>& f) {
  // Reorient so f > 0, then split f = x + y along an Euler orientation of the
  // odd edges: x = (f + g)/2 with g = +-1 on odd edges, 0 elsewhere.
  std::set<EdgeId> support, odd;
  Orientation o;
  for (const auto& [id, value] : f) {
    if (value == 0) continue;
    if (std::abs(value) > 2) throw PreconditionError("bad_3flow", "integer 3-flow value out of range");
    support.insert(id);
    const Edge& e = g.edge(id);
    o.set(id, value > 0 ? Arrow{e.u, e.v} : Arrow{e.v, e.u});
    if (std::abs(value) == 1) odd.insert(id);
  }
  const Orientation euler = euler_orientation(subgraph(g, odd));
  const Eigen::Vector2d r0(1, 0), r1(std::cos(2 * std::numbers::pi / 3), std::sin(2 * std::numbers::pi / 3));
  VectorFlow out;
  out.dim = 2;
  out.orientation = o;
  for (EdgeId id : support) {
    const int mag = std::abs(f.at(id));
    const int gsign = odd.contains(id) ? (euler.init(id) == o.init(id) ? 1 : -1) : 0;
    const int x = (mag + gsign) / 2, y = mag - x;
    out.values[id] = x * r0 + y * r1;
  }
  return out;
}

namespace {

using Mask = std::uint64_t;

struct SearchSpace {
  std::vector<EdgeId> edges;  // bit i <-> edges[i]
  std::map<EdgeId, int> bit;
  std::vector<Mask> even;                        // cycle space over Z2
  std::unordered_map<Mask, std::vector<int>> flows;  // support -> integer 3-flow (by bit)
  std::vector<Mask> supports;                    // insertion order
};

}  // namespace

S6Result s6_pipeline(const Multigraph& g, std::chrono::milliseconds budget) {
  if (!find_bridges(g).empty()) throw PreconditionError("bridge", "graph has a bridge; no nowhere-zero flow exists");
  if (g.num_edges() > 64) throw PreconditionError("too_large", "s6 search is limited to 64 edges");
  const auto deadline = std::chrono::steady_clock::now() + budget;
  auto check_time = [&] {
    if (std::chrono::steady_clock::now() > deadline) throw BudgetExhausted("s6 decomposition search exceeded its budget");
  };

  SearchSpace s;
  for (const auto& [id, _] : g.edge_map()) {
    s.bit[id] = static_cast<int>(s.edges.size());
    s.edges.push_back(id);
  }
  const Mask all = s.edges.size() == 64 ? ~Mask{0} : (Mask{1} << s.edges.size()) - 1;
  const Orientation o = Orientation::from_graph(g);
  const CycleBasis basis = cycle_basis(g, o);
  const int c = static_cast<int>(basis.cotree.size());
  if (c > 20) throw PreconditionError("too_large", "cycle space too large for the s6 search");

  // Fundamental cycles as masks, then all even subgraphs.
  std::vector<Mask> fundamental(c);
  for (int k = 0; k < c; ++k) fundamental[k] = Mask{1} << s.bit[basis.cotree[k]];
  for (const auto& [t, coeffs] : basis.coefficients)
    for (const auto& [k, _] : coeffs) fundamental[k] |= Mask{1} << s.bit[t];
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << c); ++code) {
    Mask m = 0;
    for (int k = 0; k < c; ++k)
      if (code >> k & 1) m ^= fundamental[k];
    s.even.push_back(m);
  }

  // Supports of integer circulations with |f| <= 2.
  std::vector<int> x(c, -2);
  std::int64_t steps = 0;
  for (;;) {
    if ((++steps & 0xfff) == 0) check_time();
    std::vector<int> f(s.edges.size(), 0);
    for (int k = 0; k < c; ++k) f[s.bit[basis.cotree[k]]] = x[k];
    bool ok = true;
    for (const auto& [t, coeffs] : basis.coefficients) {
      int v = 0;
      for (const auto& [k, sign] : coeffs) v += sign * x[k];
      if (std::abs(v) > 2) {
        ok = false;
        break;
      }
      f[s.bit[t]] = v;
    }
    if (ok) {
      Mask m = 0;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i]) m |= Mask{1} << i;
      if (s.flows.emplace(m, f).second) s.supports.push_back(m);
    }
    int k = 0;
    while (k < c && x[k] == 2) x[k++] = -2;
    if (k == c) break;
    ++x[k];
  }

  // Every edge outside H1 lies in H2, H3 and H4; an edge of H1 misses exactly one.
  for (Mask h1 : s.even) {
    check_time();
    const Mask outside = all & ~h1;
    std::vector<Mask> cand;
    for (Mask m : s.supports)
      if ((m & outside) == outside) cand.push_back(m);
    for (std::size_t i = 0; i < cand.size(); ++i) {
      for (std::size_t j = 0; j < cand.size(); ++j) {
        const Mask h2 = cand[i], h3 = cand[j];
        if (((h2 | h3) & h1) != h1) continue;
        const Mask h4 = outside | (h1 & (h2 ^ h3));
        if (!s.flows.contains(h4)) continue;

        S6Result result;
        const std::array<Mask, 4> masks{h1, h2, h3, h4};
        for (int p = 0; p < 4; ++p)
          for (std::size_t b = 0; b < s.edges.size(); ++b)
            if (masks[p] >> b & 1) result.parts[p].insert(s.edges[b]);

        std::vector<DecompositionPart> parts;
        parts.push_back({result.parts[0], s0_flow_even_graph(subgraph(g, result.parts[0]))});
        for (int p = 1; p < 4; ++p) {
          std::map<EdgeId, int> f;
          const auto& values = s.flows.at(masks[p]);
          for (std::size_t b = 0; b < s.edges.size(); ++b) f[s.edges[b]] = values[b];
          parts.push_back({result.parts[p], s1_from_integer_3flow(g, f)});
        }
        result.flow = compose_decomposition(g, parts, 3);
        if (!verify_vector_flow(g, result.flow).ok(result.flow.tol))
          throw TheoremViolation("composed S6-flow does not verify");
        return result;
      }
    }
  }
  throw TheoremViolation("no H1..H4 decomposition found on a bridgeless graph");
}

}  // namespace vecflow
