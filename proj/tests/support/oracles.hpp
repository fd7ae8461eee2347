#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vecflow/gf2.hpp"
#include "vecflow/graph.hpp"
#include "vecflow/group_flow.hpp"
#include "vecflow/rank_algebra.hpp"

// Independent reference implementations used only by the tests.
namespace oracle {

using namespace vecflow;

/// Backtracking isomorphism test on the edge-multiplicity matrix.
bool isomorphic(const Multigraph& a, const Multigraph& b);

/// Connected cubic multigraphs (loops allowed) on `n` vertices, one per
/// isomorphism class.
std::vector<Multigraph> cubic_multigraphs(int n);

/// Simple 4-regular graph from the pairing model, retried until simple.
Multigraph random_4_regular(int n, std::mt19937_64& rng);

/// Random element of the circulation space (random cotree values).
GroupFlow random_circulation(const Multigraph& g, const AbelianGroup& group, std::mt19937_64& rng);

/// Searches integer combinations of rows (coefficients in [-3, 3]) divided
/// by d = 1..8 for an integer vector with exactly one odd coordinate.
bool brute_odd_coordinate_free(const IntMatrix& m);

/// Every subspace of Z2^n, n <= 5.
std::vector<GF2Subspace> all_subspaces(int n);

/// Plain Gaussian elimination in doubles, for rank cross-checks.
int float_rank(const IntMatrix& m);

}  // namespace oracle
