#include "vecflow/group_flow.hpp"

#include <algorithm>
#include <cctype>

#include "vecflow/cotree.hpp"
#include "vecflow/errors.hpp"

namespace vecflow {

AbelianGroup::AbelianGroup(std::vector<int> k) : moduli(std::move(k)) {
  if (moduli.empty()) throw PreconditionError("bad_group", "group needs at least one cyclic factor");
  for (int m : moduli)
    if (m < 2) throw PreconditionError("bad_group", "cyclic factor modulus must be >= 2");
}

AbelianGroup AbelianGroup::parse(const std::string& name) {
  std::vector<int> k;
  std::size_t i = 0;
  auto fail = [&] { throw PreconditionError("bad_group", "cannot parse group '" + name + "'"); };
  while (i < name.size()) {
    if (std::tolower(static_cast<unsigned char>(name[i])) != 'z') fail();
    ++i;
    std::size_t j = i;
    while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j]))) ++j;
    if (j == i || j - i > 6) fail();
    k.push_back(std::stoi(name.substr(i, j - i)));
    i = j;
    if (i < name.size()) {
      if (name[i] != 'x') fail();
      ++i;
      if (i == name.size()) fail();
    }
  }
  if (k.empty()) fail();
  return AbelianGroup(k);
}

std::string AbelianGroup::name() const {
  std::string out;
  for (std::size_t i = 0; i < moduli.size(); ++i) out += (i ? "xz" : "z") + std::to_string(moduli[i]);
  return out;
}

std::int64_t AbelianGroup::order() const {
  std::int64_t n = 1;
  for (int m : moduli) n *= m;
  return n;
}

bool AbelianGroup::is_zero(const GroupElement& x) const {
  return std::all_of(x.begin(), x.end(), [](int r) { return r == 0; });
}

GroupElement AbelianGroup::add(const GroupElement& x, const GroupElement& y) const {
  GroupElement out(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) out[i] = (x[i] + y[i]) % moduli[i];
  return out;
}

GroupElement AbelianGroup::neg(const GroupElement& x) const {
  GroupElement out(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) out[i] = (moduli[i] - x[i]) % moduli[i];
  return out;
}

GroupElement AbelianGroup::scale(const GroupElement& x, int k) const {
  GroupElement out(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::int64_t r = (static_cast<std::int64_t>(x[i]) * k) % moduli[i];
    out[i] = static_cast<int>(r < 0 ? r + moduli[i] : r);
  }
  return out;
}

void AbelianGroup::check(const GroupElement& x) const {
  if (x.size() != moduli.size())
    throw PreconditionError("group_mismatch", "element arity " + std::to_string(x.size()) + " does not match group " + name());
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (x[i] < 0 || x[i] >= moduli[i])
      throw PreconditionError("group_mismatch", "residue " + std::to_string(x[i]) + " out of range for " + name());
}

std::int64_t AbelianGroup::index(const GroupElement& x) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) idx = idx * moduli[i] + x[i];
  return idx;
}

GroupElement AbelianGroup::element(std::int64_t index) const {
  GroupElement out(moduli.size());
  for (std::size_t i = moduli.size(); i-- > 0;) {
    out[i] = static_cast<int>(index % moduli[i]);
    index /= moduli[i];
  }
  return out;
}

namespace {

void check_flow_domain(const Multigraph& g, const GroupFlow& flow) {
  check_orientation(g, flow.orientation);
  if (flow.values.size() != g.num_edges())
    throw PreconditionError("domain_mismatch", "flow domain does not match the edge set");
  for (const auto& [id, _] : g.edge_map()) {
    auto it = flow.values.find(id);
    if (it == flow.values.end()) throw PreconditionError("domain_mismatch", "no value on edge " + std::to_string(id));
    flow.group.check(it->second);
  }
}

}  // namespace

CirculationReport verify_circulation(const Multigraph& g, const GroupFlow& flow) {
  check_flow_domain(g, flow);
  const AbelianGroup& grp = flow.group;
  CirculationReport report;
  for (VertexId v : g.vertices()) {
    GroupElement net = grp.zero();
    for (EdgeId id : g.incident_edges(v)) {
      const int dir = flow.orientation.direction_at(id, v);
      if (dir == 0) continue;
      const GroupElement& x = flow.values.at(id);
      net = grp.add(net, dir > 0 ? x : grp.neg(x));
    }
    if (!grp.is_zero(net)) report.kcl_violations.push_back(v);
  }
  for (const auto& [id, x] : flow.values)
    if (grp.is_zero(x)) report.zeros.push_back(id);
  return report;
}

bool verify_cut_balance(const Multigraph& g, const GroupFlow& flow, const std::set<VertexId>& x) {
  check_flow_domain(g, flow);
  const CutSets cs = cut(g, flow.orientation, x);
  const AbelianGroup& grp = flow.group;
  GroupElement net = grp.zero();
  for (EdgeId id : cs.plus) net = grp.add(net, flow.values.at(id));
  for (EdgeId id : cs.minus) net = grp.add(net, grp.neg(flow.values.at(id)));
  return grp.is_zero(net);
}

GroupFlow reverse_edge_normalize(const GroupFlow& flow,
                                 const std::function<bool(EdgeId, const GroupElement&)>& keep) {
  GroupFlow out = flow;
  for (auto& [id, x] : out.values) {
    if (keep(id, x)) continue;
    out.orientation.reverse(id);
    x = out.group.neg(x);
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::found: return "found";
    case Verdict::none: return "none";
    case Verdict::budget: return "budget";
  }
  return "?";
}

GroupSolve solve_flow_exhaustive(const Multigraph& g, const AbelianGroup& group, std::chrono::milliseconds budget) {
  const auto deadline = std::chrono::steady_clock::now() + budget;
  const Orientation o = Orientation::from_graph(g);
  const CycleBasis basis = cycle_basis(g, o);
  const int n = static_cast<int>(basis.cotree.size());
  const std::int64_t order = group.order();

  GroupSolve result;
  // A bridge is forced to zero whatever the cotree values are.
  for (const auto& [t, coeffs] : basis.coefficients)
    if (coeffs.empty()) return result;

  // Tree edges become determined once their last cotree coordinate is set.
  std::vector<std::vector<EdgeId>> ready(n);
  for (const auto& [t, coeffs] : basis.coefficients) {
    int last = 0;
    for (const auto& [c, _] : coeffs) last = std::max(last, c);
    ready[last].push_back(t);
  }

  std::vector<GroupElement> x(n);
  auto tree_value = [&](EdgeId t) {
    GroupElement v = group.zero();
    for (const auto& [c, sign] : basis.coefficients.at(t)) v = group.add(v, sign > 0 ? x[c] : group.neg(x[c]));
    return v;
  };

  bool out_of_time = false;
  std::function<bool(int)> search = [&](int depth) -> bool {
    if (depth == n) return true;
    for (std::int64_t idx = 1; idx < order; ++idx) {
      if ((++result.nodes & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline) {
        out_of_time = true;
        return false;
      }
      x[depth] = group.element(idx);
      bool ok = true;
      for (EdgeId t : ready[depth])
        if (group.is_zero(tree_value(t))) {
          ok = false;
          break;
        }
      if (ok && search(depth + 1)) return true;
      if (out_of_time) return false;
    }
    return false;
  };

  // With no cotree edges only a graph without edges can carry a flow.
  const bool found = n == 0 ? basis.tree.empty() : search(0);
  if (out_of_time) {
    result.verdict = Verdict::budget;
    return result;
  }
  if (!found) return result;

  GroupFlow flow{group, o, {}};
  for (int c = 0; c < n; ++c) flow.values[basis.cotree[c]] = x[c];
  for (EdgeId t : basis.tree) flow.values[t] = tree_value(t);
  if (!verify_circulation(g, flow).nowhere_zero()) throw TheoremViolation("solver produced an invalid flow");
  result.verdict = Verdict::found;
  result.flow = std::move(flow);
  return result;
}

GroupFlow z3_flow_bipartite_cubic(const Multigraph& g) {
  if (!is_cubic(g)) throw PreconditionError("not_cubic", "Z3 construction needs a cubic graph");
  for (const auto& [id, e] : g.edge_map())
    if (e.is_loop()) throw PreconditionError("loop", "Z3 construction needs a loopless graph");
  const auto bip = is_bipartite(g);
  if (!bip) throw PreconditionError("not_bipartite", "Z3 construction needs a bipartite graph");
  const std::set<VertexId> a(bip.parts->a.begin(), bip.parts->a.end());
  GroupFlow flow{AbelianGroup({3}), {}, {}};
  for (const auto& [id, e] : g.edge_map()) {
    flow.orientation.set(id, a.contains(e.u) ? Arrow{e.u, e.v} : Arrow{e.v, e.u});
    flow.values[id] = {1};
  }
  if (!verify_circulation(g, flow).nowhere_zero()) throw TheoremViolation("bipartite Z3 flow failed to verify");
  return flow;
}

GroupFlow lift_flow(const Multigraph& original, const Reduction& reduction, const GroupFlow& reduced) {
  const AbelianGroup& grp = reduced.group;
  GroupFlow out{grp, Orientation::from_graph(original), {}};
  for (const auto& [f, path] : reduction.trace.edges) {
    auto it = reduced.values.find(f);
    if (it == reduced.values.end()) throw PreconditionError("trace_mismatch", "no flow value on traced edge " + std::to_string(f));
    // Value in f's own u -> v direction.
    const bool forward = reduced.orientation.init(f) == reduction.graph.edge(f).u;
    const GroupElement along = forward ? it->second : grp.neg(it->second);
    for (const TraceStep& step : path) {
      if (!original.has_edge(step.source))
        throw PreconditionError("trace_mismatch", "trace names unknown edge " + std::to_string(step.source));
      if (out.values.contains(step.source))
        throw PreconditionError("trace_mismatch", "edge " + std::to_string(step.source) + " traced twice");
      out.values[step.source] = step.sign > 0 ? along : grp.neg(along);
    }
  }
  if (out.values.size() != original.num_edges())
    throw PreconditionError("trace_mismatch", "trace does not cover every original edge");
  return out;
}

}  // namespace vecflow
