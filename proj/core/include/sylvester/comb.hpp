#pragma once

#include <compare>
#include <span>
#include <vector>

#include "sylvester/multipoly.hpp"
#include "sylvester/rational.hpp"

namespace sylvester {

/// Orthogonal comb: teeth x_j + i[0, l_j] for j = 1..m, with the shaft
/// endpoints (0,0) and (1,0) acting as two zero-length teeth.
struct Comb {
  std::vector<Rational> x;
  std::vector<Rational> l;

  std::size_t teeth() const { return x.size(); }
  /// Throws PreconditionError unless 0 < x_1 < ... < x_m < 1 and l_j >= 0.
  void validate() const;
};

/// Triangle (first, middle, last) on the index set 0..m+1.
struct Triangle {
  int first = 0;
  int middle = 0;
  int last = 0;
  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

/// A triangulation in the comb sense: m pairwise non-crossing triangles whose
/// middle indices are exactly 1..m. Triangles are kept sorted.
using Triangulation = std::vector<Triangle>;

/// All triangulations of m + 2 points, lexicographically ordered. There are
/// Catalan(m) of them.
std::vector<Triangulation> enumerate_triangulations(int m);

/// K through the pivot recurrence K = (1/m) sum_j l_j K[left] K[right], where
/// the left block is rescaled by x_k / x_j and the right block by
/// (x_k - x_j) / (1 - x_j). Sub-results are memoized per index interval.
/// x holds the m interior abscissas, l the m tooth lengths.
template <typename T>
T k_rec(std::span<const Rational> x, std::span<const T> l);

/// K as a sum over triangulations of the products of triangle weights
/// q_t = (vertical gap from the middle point to the outer chord) / (n3 - n1 - 1).
/// x and gamma carry all m + 2 points; x_0 must be 0 and x_{m+1} must be 1,
/// while gamma_0 and gamma_{m+1} are free.
template <typename T>
T k_star(std::span<const Rational> x, std::span<const T> gamma);

/// K as (1/m!) times a sum over insertion orders of the product of each
/// inserted point's height above the chord joining its current neighbours.
/// Cost grows as m!, so m above max_teeth is rejected.
template <typename T>
T k_perm(std::span<const Rational> x, std::span<const T> gamma, int max_teeth = 7);

/// Probability that one uniform point per tooth, together with (0,0) and
/// (1,0), is in convex position: K / prod l_j. The tooth tops together with
/// (0,0) and (1,0) must form a concave chain, otherwise PreconditionError.
Rational comb_probability(const Comb& comb);

// Convenience overloads for vectors.
inline Rational k_rec(const std::vector<Rational>& x, const std::vector<Rational>& l) {
  return k_rec<Rational>(std::span<const Rational>(x), std::span<const Rational>(l));
}
inline MultiPoly k_rec(const std::vector<Rational>& x, const std::vector<MultiPoly>& l) {
  return k_rec<MultiPoly>(std::span<const Rational>(x), std::span<const MultiPoly>(l));
}

}  // namespace sylvester
