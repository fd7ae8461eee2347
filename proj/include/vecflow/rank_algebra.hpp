#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "vecflow/gf2.hpp"
#include "vecflow/group_flow.hpp"
#include "vecflow/vector_flow.hpp"

namespace vecflow {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// One row eps(v) per vertex (sorted by id), one column per value class.
struct BalancedMatrix {
  std::vector<VertexId> vertices;
  IntMatrix rows;
  int b() const { return static_cast<int>(rows.cols()); }
};

BalancedMatrix balanced_matrix(const Multigraph& g, const FlowValueIndex& index);

/// Exact rank over Q (fraction-free elimination; throws std::overflow_error
/// if an intermediate leaves int64).
int rank_Q(const IntMatrix& m);

/// Rows form a Z-basis of (row space over Q) intersected with Z^b.
IntMatrix saturation_basis(const IntMatrix& m);

struct OddCoordinateCheck {
  bool free = true;
  /// Integer vector of the rational row space with exactly one odd coordinate.
  std::optional<IntVector> witness;
  int coordinate = -1;
};

/// Decides odd-coordinate-freeness of the rational row space exactly, on
/// the saturated lattice.
OddCoordinateCheck odd_coordinate_free(const IntMatrix& m);

/// Weaker test over integer combinations of the rows only (e_j in the mod-2
/// row space). Free here does not imply free above.
OddCoordinateCheck odd_coordinate_free_rows(const IntMatrix& m);

GF2Subspace mod2_rowspace(const IntMatrix& m);

struct KleinFlowCertificate {
  GroupFlow flow;  // Z2 x Z2
  CoveringPair pair;
  FlowValueIndex index;
  BalancedMatrix matrix;
  int rank = 0;
  GF2Subspace s_prime;
  GF2Subspace w;
};

/// Rank <= 2, odd-coordinate-free S2-flow -> nowhere-zero Z2 x Z2 flow.
KleinFlowCertificate synthesize_4flow(const Multigraph& g, const VectorFlow& flow);

}  // namespace vecflow
