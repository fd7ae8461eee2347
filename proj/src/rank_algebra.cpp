#include "vecflow/rank_algebra.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <tuple>

#include "vecflow/errors.hpp"

namespace vecflow {

namespace {

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in exact elimination");
  return r;
}

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in exact elimination");
  return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in exact elimination");
  return r;
}

// g = s*a + t*b with g >= 0.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, sub(r0, mul(q, r1)));
    std::tie(s0, s1) = std::make_pair(s1, sub(s0, mul(q, s1)));
    std::tie(t0, t1) = std::make_pair(t1, sub(t0, mul(q, t1)));
  }
  if (r0 < 0) r0 = -r0, s0 = -s0, t0 = -t0;
  s = s0;
  t = t0;
  return r0;
}

std::string render(const IntVector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Looks for e_j in the mod-2 span of the generator rows; the witness is the
// integer sum of the generators used.
OddCoordinateCheck odd_check(const IntMatrix& gens, int b) {
  if (b > 64) throw PreconditionError("too_large", "odd-coordinate test is limited to 64 value classes");
  struct Row {
    BitVector bits;
    std::vector<char> used;
  };
  const auto n = gens.rows();
  std::vector<Row> basis;
  for (Eigen::Index k = 0; k < n; ++k) {
    Row r{0, std::vector<char>(n, 0)};
    r.used[k] = 1;
    for (int j = 0; j < b; ++j)
      if (gens(k, j) & 1) r.bits |= BitVector{1} << j;
    for (const Row& p : basis)
      if (r.bits >> std::countr_zero(p.bits) & 1) {
        r.bits ^= p.bits;
        for (Eigen::Index i = 0; i < n; ++i) r.used[i] ^= p.used[i];
      }
    if (r.bits) basis.push_back(std::move(r));
  }
  for (int j = 0; j < b; ++j) {
    Row target{BitVector{1} << j, std::vector<char>(n, 0)};
    // Reduce e_j; a zero remainder means the used generators sum to e_j mod 2.
    for (const Row& p : basis)
      if (target.bits >> std::countr_zero(p.bits) & 1) {
        target.bits ^= p.bits;
        for (Eigen::Index i = 0; i < n; ++i) target.used[i] ^= p.used[i];
      }
    if (target.bits) continue;
    IntVector w = IntVector::Zero(b);
    for (Eigen::Index i = 0; i < n; ++i)
      if (target.used[i])
        for (int c = 0; c < b; ++c) w[c] = add(w[c], gens(i, c));
    int odd = 0;
    for (int c = 0; c < b; ++c) odd += (w[c] & 1) != 0;
    if (odd != 1 || !(w[j] & 1)) throw TheoremViolation("odd-coordinate witness reconstruction failed");
    return {false, w, j};
  }
  return {};
}

}  // namespace

BalancedMatrix balanced_matrix(const Multigraph& g, const FlowValueIndex& index) {
  BalancedMatrix m;
  m.vertices = g.vertices();
  m.rows = IntMatrix::Zero(static_cast<Eigen::Index>(m.vertices.size()), index.b());
  for (std::size_t r = 0; r < m.vertices.size(); ++r) {
    const VertexId v = m.vertices[r];
    for (EdgeId id : g.incident_edges(v)) {
      const int dir = index.orientation.direction_at(id, v);
      if (dir != 0) m.rows(static_cast<Eigen::Index>(r), index.class_of.at(id)) += dir;
    }
  }
  return m;
}

int rank_Q(const IntMatrix& m) {
  IntMatrix a = m;
  const auto rows = a.rows(), cols = a.cols();
  std::int64_t prev = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.row(r).swap(a.row(p));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) a(i, j) = sub(mul(a(r, c), a(i, j)), mul(a(i, c), a(r, j))) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return static_cast<int>(r);
}

IntMatrix saturation_basis(const IntMatrix& m) {
  // Unimodular column reduction M Q = [H | 0], tracking U = Q^-1. The first
  // r rows of U span the saturated lattice.
  IntMatrix a = m;
  const Eigen::Index b = a.cols();
  IntMatrix u = IntMatrix::Identity(b, b);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < a.rows() && r < b; ++i) {
    for (Eigen::Index j = r + 1; j < b; ++j) {
      if (a(i, j) == 0) continue;
      const std::int64_t x = a(i, r), y = a(i, j);
      std::int64_t s, t;
      const std::int64_t g = ext_gcd(x, y, s, t);
      const std::int64_t xg = x / g, yg = y / g;
      for (Eigen::Index k = 0; k < a.rows(); ++k) {
        const std::int64_t cr = a(k, r), cj = a(k, j);
        a(k, r) = add(mul(s, cr), mul(t, cj));
        a(k, j) = sub(mul(xg, cj), mul(yg, cr));
      }
      for (Eigen::Index k = 0; k < b; ++k) {
        const std::int64_t ur = u(r, k), uj = u(j, k);
        u(r, k) = add(mul(xg, ur), mul(yg, uj));
        u(j, k) = sub(mul(s, uj), mul(t, ur));
      }
    }
    if (a(i, r) != 0) ++r;
  }
  return u.topRows(r);
}

OddCoordinateCheck odd_coordinate_free(const IntMatrix& m) {
  return odd_check(saturation_basis(m), static_cast<int>(m.cols()));
}

OddCoordinateCheck odd_coordinate_free_rows(const IntMatrix& m) { return odd_check(m, static_cast<int>(m.cols())); }

GF2Subspace mod2_rowspace(const IntMatrix& m) {
  if (m.cols() > 64) throw PreconditionError("too_large", "GF(2) row space is limited to 64 columns");
  std::vector<BitVector> rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    BitVector x = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) & 1) x |= BitVector{1} << j;
    rows.push_back(x);
  }
  return GF2Subspace::span(static_cast<int>(m.cols()), rows);
}

KleinFlowCertificate synthesize_4flow(const Multigraph& g, const VectorFlow& flow) {
  const auto report = verify_vector_flow(g, flow);
  if (!report.ok(flow.tol))
    throw PreconditionError("unverified_flow", "flow residual " + std::to_string(report.max_kcl_residual) +
                                                   " exceeds tolerance");
  KleinFlowCertificate cert;
  cert.index = build_value_index(flow);
  cert.matrix = balanced_matrix(g, cert.index);
  const int b = cert.matrix.b();
  cert.rank = rank_Q(cert.matrix.rows);
  if (cert.rank > 2) throw PreconditionError("rank", "balanced vectors have rank " + std::to_string(cert.rank) + " > 2");
  const auto odd = odd_coordinate_free(cert.matrix.rows);
  if (!odd.free)
    throw PreconditionError("odd_coordinate", "rational span contains " + render(*odd.witness) +
                                                  " with exactly one odd coordinate");

  cert.s_prime = mod2_rowspace(cert.matrix.rows);
  if (cert.s_prime.dim() > cert.rank) throw TheoremViolation("dim of S' exceeds the rational rank");
  cert.w = orthogonal_complement(cert.s_prime);
  if (cert.w.dim() < b - 2) throw TheoremViolation("dim W < b - 2");
  BitVector seen = 0;
  for (BitVector r : cert.w.basis) seen |= r;
  if (seen != cert.w.mask())
    throw TheoremViolation("theorem falsified: a coordinate projection of W is not surjective on an odd-free flow");

  cert.pair = covering_pair(cert.w);
  cert.flow = GroupFlow{AbelianGroup({2, 2}), cert.index.orientation, {}};
  for (const auto& [id, cls] : cert.index.class_of)
    cert.flow.values[id] = {static_cast<int>(cert.pair.x >> cls & 1), static_cast<int>(cert.pair.y >> cls & 1)};
  if (!verify_circulation(g, cert.flow).nowhere_zero())
    throw TheoremViolation("theorem falsified: Z2 x Z2 certificate does not verify");
  return cert;
}

}  // namespace vecflow
