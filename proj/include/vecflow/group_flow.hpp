#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vecflow/graph.hpp"

namespace vecflow {

using GroupElement = std::vector<int>;

/// Finite abelian group Z_{k1} x ... x Z_{km}.
struct AbelianGroup {
  std::vector<int> moduli;

  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<int> k);

  /// "z6", "z4", "z2xz2", "z3xz3", ...
  static AbelianGroup parse(const std::string& name);
  std::string name() const;

  std::int64_t order() const;
  GroupElement zero() const { return GroupElement(moduli.size(), 0); }
  bool is_zero(const GroupElement& x) const;
  GroupElement add(const GroupElement& x, const GroupElement& y) const;
  GroupElement neg(const GroupElement& x) const;
  GroupElement scale(const GroupElement& x, int k) const;
  /// Throws PreconditionError unless x has the right arity and residues.
  void check(const GroupElement& x) const;

  /// Mixed-radix index, first factor most significant (so index order is
  /// lexicographic order).
  std::int64_t index(const GroupElement& x) const;
  GroupElement element(std::int64_t index) const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

struct GroupFlow {
  AbelianGroup group;
  Orientation orientation;
  std::map<EdgeId, GroupElement> values;
};

struct CirculationReport {
  std::vector<VertexId> kcl_violations;
  std::vector<EdgeId> zeros;
  bool is_circulation() const { return kcl_violations.empty(); }
  bool nowhere_zero() const { return kcl_violations.empty() && zeros.empty(); }
};

CirculationReport verify_circulation(const Multigraph& g, const GroupFlow& flow);

/// Sum over E+(X) equals sum over E-(X).
bool verify_cut_balance(const Multigraph& g, const GroupFlow& flow, const std::set<VertexId>& x);

/// Edges failing `keep` get their orientation reversed and value negated.
GroupFlow reverse_edge_normalize(const GroupFlow& flow,
                                 const std::function<bool(EdgeId, const GroupElement&)>& keep);

enum class Verdict { found, none, budget };
std::string to_string(Verdict v);

struct GroupSolve {
  Verdict verdict = Verdict::none;
  std::optional<GroupFlow> flow;
  std::int64_t nodes = 0;
};

/// Exhaustive search over cotree assignments (default orientation), in
/// lexicographic order, pruning when a tree edge is forced to zero. The
/// witness returned is the lexicographically first one.
GroupSolve solve_flow_exhaustive(const Multigraph& g, const AbelianGroup& group,
                                 std::chrono::milliseconds budget = std::chrono::milliseconds{10000});

/// Orientation A -> B, every value 1 in Z3.
GroupFlow z3_flow_bipartite_cubic(const Multigraph& g);

/// Pulls a flow on reduce_to_cubic(original).graph back to `original`. The
/// result uses the original graph's default orientation.
GroupFlow lift_flow(const Multigraph& original, const Reduction& reduction, const GroupFlow& reduced);

}  // namespace vecflow
