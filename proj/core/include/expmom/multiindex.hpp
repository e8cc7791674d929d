#pragma once

#include <compare>
#include <vector>

namespace expmom {

// Bivariate multi-index (i, j) for the monomial x^i y^j. The enumeration
// used everywhere in this library is graded lexicographic:
//   (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), (3,0), ...
// i.e. ascending total degree, and within a degree descending power of x.
struct MultiIndex {
  int i = 0;
  int j = 0;

  int total() const { return i + j; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  // Graded-lex order, so MultiIndex can key ordered containers directly.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = (a.i + a.j) <=> (b.i + b.j); c != 0) return c;
    return b.i <=> a.i;  // larger x-power first within a degree
  }
};

// Number of multi-indices with total degree <= order, i.e. (N+1)(N+2)/2.
// Throws std::invalid_argument for negative orders.
int moment_dimension(int order);

// All multi-indices with total degree <= order, in graded-lex order.
std::vector<MultiIndex> multi_indices(int order);

// Position of a multi-index in the graded-lex enumeration.
int multi_index_position(const MultiIndex& a);

}  // namespace expmom
