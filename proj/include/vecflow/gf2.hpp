#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vecflow {

/// Vectors in Z2^n, n <= 64; coordinate i is bit i.
using BitVector = std::uint64_t;

/// Subspace of Z2^length with a basis in reduced row-echelon form. A row's
/// pivot is its lowest set coordinate; rows are sorted by pivot.
struct GF2Subspace {
  int length = 0;
  std::vector<BitVector> basis;

  static GF2Subspace span(int length, const std::vector<BitVector>& vectors);
  static GF2Subspace full(int length);

  int dim() const { return static_cast<int>(basis.size()); }
  BitVector mask() const { return length == 64 ? ~BitVector{0} : (BitVector{1} << length) - 1; }
  bool contains(BitVector x) const;
  /// All 2^dim elements in lexicographic order (coordinate 0 most significant).
  std::vector<BitVector> elements() const;
  /// Element with the given coefficient word; the first basis row is the most
  /// significant coefficient, so counting upward walks elements in lex order.
  BitVector combine(std::uint64_t coefficients) const;

  friend bool operator==(const GF2Subspace&, const GF2Subspace&) = default;
};

/// "0110" style rendering, coordinate 0 first.
std::string bits_to_string(BitVector x, int length);
BitVector bits_from_string(const std::string& s);

/// True when x precedes y lexicographically (coordinate 0 most significant).
bool lex_less(BitVector x, BitVector y, int length);

GF2Subspace orthogonal_complement(const GF2Subspace& s);

struct CoveringPair {
  BitVector x = 0;
  BitVector y = 0;
};

/// Lexicographically smallest (x, y) in W with supp(x) | supp(y) = all
/// coordinates. Requires dim W >= length - 2 and no all-zero coordinate.
CoveringPair covering_pair(const GF2Subspace& w);

/// Number of elements with odd support, by enumeration.
std::int64_t num_odd_support(const GF2Subspace& v);

}  // namespace vecflow
