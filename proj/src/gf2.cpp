#include "vecflow/gf2.hpp"

#include <algorithm>
#include <bit>

#include "vecflow/errors.hpp"

namespace vecflow {

namespace {

int pivot(BitVector x) { return std::countr_zero(x); }

}  // namespace

GF2Subspace GF2Subspace::span(int length, const std::vector<BitVector>& vectors) {
  if (length < 0 || length > 64) throw PreconditionError("too_large", "GF(2) vectors are limited to 64 coordinates");
  GF2Subspace s;
  s.length = length;
  for (BitVector x : vectors) {
    x &= s.mask();
    for (BitVector r : s.basis)
      if (x >> pivot(r) & 1) x ^= r;
    if (!x) continue;
    const int p = pivot(x);
    for (BitVector& r : s.basis)
      if (r >> p & 1) r ^= x;
    s.basis.push_back(x);
  }
  std::sort(s.basis.begin(), s.basis.end(), [](BitVector a, BitVector b) { return pivot(a) < pivot(b); });
  return s;
}

GF2Subspace GF2Subspace::full(int length) {
  std::vector<BitVector> unit;
  for (int i = 0; i < length; ++i) unit.push_back(BitVector{1} << i);
  return span(length, unit);
}

bool GF2Subspace::contains(BitVector x) const {
  if (x & ~mask()) return false;
  for (BitVector r : basis)
    if (x >> pivot(r) & 1) x ^= r;
  return x == 0;
}

BitVector GF2Subspace::combine(std::uint64_t coefficients) const {
  BitVector x = 0;
  const int d = dim();
  for (int k = 0; k < d; ++k)
    if (coefficients >> (d - 1 - k) & 1) x ^= basis[k];
  return x;
}

std::vector<BitVector> GF2Subspace::elements() const {
  if (dim() > 30) throw PreconditionError("too_large", "refusing to enumerate more than 2^30 elements");
  std::vector<BitVector> out;
  out.reserve(std::size_t{1} << dim());
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << dim()); ++c) out.push_back(combine(c));
  return out;
}

std::string bits_to_string(BitVector x, int length) {
  std::string s(length, '0');
  for (int i = 0; i < length; ++i)
    if (x >> i & 1) s[i] = '1';
  return s;
}

BitVector bits_from_string(const std::string& s) {
  BitVector x = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') x |= BitVector{1} << i;
    else if (s[i] != '0') throw PreconditionError("bad_bits", "bit string may only contain 0 and 1");
  }
  return x;
}

bool lex_less(BitVector x, BitVector y, int length) {
  const BitVector diff = (x ^ y) & (length == 64 ? ~BitVector{0} : (BitVector{1} << length) - 1);
  if (!diff) return false;
  return !(x >> pivot(diff) & 1);
}

GF2Subspace orthogonal_complement(const GF2Subspace& s) {
  BitVector pivots = 0;
  for (BitVector r : s.basis) pivots |= BitVector{1} << pivot(r);
  std::vector<BitVector> out;
  for (int f = 0; f < s.length; ++f) {
    if (pivots >> f & 1) continue;
    BitVector v = BitVector{1} << f;
    for (BitVector r : s.basis)
      if (r >> f & 1) v |= BitVector{1} << pivot(r);
    out.push_back(v);
  }
  return GF2Subspace::span(s.length, out);
}

namespace {

// Lexicographically smallest coefficient word c (first variable most
// significant) whose combination is 1 on every coordinate of `ones`.
bool lex_min_solution(const GF2Subspace& w, BitVector ones, std::uint64_t& out) {
  const int d = w.dim();
  struct Row {
    std::uint64_t vars;  // bit k <-> basis row k
    int rhs;
  };
  std::vector<Row> rows;
  for (int j = 0; j < w.length; ++j) {
    if (!(ones >> j & 1)) continue;
    Row r{0, 1};
    for (int k = 0; k < d; ++k)
      if (w.basis[k] >> j & 1) r.vars |= std::uint64_t{1} << k;
    rows.push_back(r);
  }
  // Pivot on the least significant variables first so the free ones are the
  // most significant; setting every free variable to 0 is then lex-minimal.
  std::vector<int> pivot_row(d, -1);
  std::size_t next = 0;
  for (int k = d - 1; k >= 0; --k) {
    std::size_t i = next;
    while (i < rows.size() && !(rows[i].vars >> k & 1)) ++i;
    if (i == rows.size()) continue;
    std::swap(rows[i], rows[next]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != next && (rows[r].vars >> k & 1)) {
        rows[r].vars ^= rows[next].vars;
        rows[r].rhs ^= rows[next].rhs;
      }
    pivot_row[k] = static_cast<int>(next++);
  }
  for (std::size_t r = next; r < rows.size(); ++r)
    if (rows[r].rhs) return false;
  std::uint64_t c = 0;
  for (int k = 0; k < d; ++k)
    if (pivot_row[k] >= 0 && rows[pivot_row[k]].rhs) c |= std::uint64_t{1} << (d - 1 - k);
  out = c;
  return true;
}

}  // namespace

CoveringPair covering_pair(const GF2Subspace& w) {
  if (w.dim() < w.length - 2)
    throw PreconditionError("dimension_deficit", "covering_pair needs dim W >= b - 2, got dim " + std::to_string(w.dim()) +
                                                     " with b = " + std::to_string(w.length));
  BitVector seen = 0;
  for (BitVector r : w.basis) seen |= r;
  if (seen != w.mask())
    throw PreconditionError("zero_column", "coordinate " + std::to_string(pivot(~seen & w.mask())) +
                                               " vanishes on W (projection not surjective)");
  if (w.dim() > 40) throw PreconditionError("too_large", "covering_pair is limited to dim W <= 40");
  const std::uint64_t limit = std::uint64_t{1} << std::min(w.dim(), 24);
  for (std::uint64_t cx = 0; cx < limit; ++cx) {
    const BitVector x = w.combine(cx);
    std::uint64_t cy = 0;
    if (lex_min_solution(w, w.mask() & ~x, cy)) return {x, w.combine(cy)};
  }
  if (w.dim() > 24) throw BudgetExhausted("covering_pair search cap reached");
  throw TheoremViolation("no covering pair in a subspace meeting the lemma's hypotheses");
}

std::int64_t num_odd_support(const GF2Subspace& v) {
  std::int64_t n = 0;
  for (BitVector x : v.elements()) n += std::popcount(x) & 1;
  return n;
}

}  // namespace vecflow
