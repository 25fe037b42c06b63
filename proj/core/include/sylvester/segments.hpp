#pragma once

#include <span>
#include <vector>

#include "sylvester/multipoly.hpp"
#include "sylvester/rational.hpp"

namespace sylvester {

/// x + i[y_low, y_high].
struct VerticalSegment {
  Rational x;
  Rational y_low;
  Rational y_high;

  Rational width() const { return y_high - y_low; }
  Rational middle() const { return (y_low + y_high) / Rational(2); }
  friend bool operator==(const VerticalSegment&, const VerticalSegment&) = default;
};

/// A family of N + 2 vertical segments after the verticality-preserving
/// normalization: segment j is xbar_j + i[-L_j - lambda_j + beta_j,
/// L_j + lambda_j + beta_j] with L_j = L0 + (L1 - L0) xbar_j.
///
/// Index 0 and N + 1 are the extreme segments; lambda and beta vanish there.
struct NormalizedFamily {
  std::vector<Rational> xbar;
  Rational L0;
  Rational L1;
  std::vector<Rational> lambda;
  std::vector<Rational> beta;

  int interior_count() const { return static_cast<int>(xbar.size()) - 2; }
  Rational trapezoid(std::size_t j) const { return L0 + (L1 - L0) * xbar[j]; }
  Rational upper(std::size_t j) const { return trapezoid(j) + lambda[j] + beta[j]; }
  Rational lower(std::size_t j) const { return trapezoid(j) + lambda[j] - beta[j]; }
  Rational width(std::size_t j) const { return upper(j) + lower(j); }

  /// Shape checks only: sizes, xbar_0 = 0 < ... < xbar_{N+1} = 1, zero
  /// boundary defects, L0, L1 >= 0.
  void validate_structure() const;
  /// Shape checks plus lambda_j >= 0 and nonnegative l+, l-, w.
  bool is_valid() const;

  friend bool operator==(const NormalizedFamily&, const NormalizedFamily&) = default;
};

NormalizedFamily normalize(std::span<const VerticalSegment> segments);
std::vector<VerticalSegment> family_segments(const NormalizedFamily& family);

/// Slope differences dv_j/dx_j - dv_{j+1}/dx_{j+1} for j = 1..N. Boundary
/// values are used as given; profiles of defects assume v_0 = v_{N+1} = 0.
template <typename T>
std::vector<T> slope_profile(std::span<const T> values, std::span<const Rational> xbar);

/// Inverse of slope_profile on sequences vanishing at both ends: returns the
/// N + 2 offsets whose slope differences are the given N values.
template <typename T>
std::vector<T> profile_to_offsets(std::span<const T> profile, std::span<const Rational> xbar);

inline std::vector<Rational> slope_profile(const std::vector<Rational>& v, const std::vector<Rational>& xbar) {
  return slope_profile<Rational>(std::span<const Rational>(v), std::span<const Rational>(xbar));
}
inline std::vector<Rational> profile_to_offsets(const std::vector<Rational>& p, const std::vector<Rational>& xbar) {
  return profile_to_offsets<Rational>(std::span<const Rational>(p), std::span<const Rational>(xbar));
}

/// beta in Compa(lambda): beta_0 = beta_{N+1} = 0, |beta_j| <= lambda_j and
/// |q_j(beta)| <= p_j(lambda).
bool in_compa(std::span<const Rational> lambda, std::span<const Rational> beta, std::span<const Rational> xbar);

/// sum over A in subsets of 1..N of K[x_j, l+_j - u_j]_{j in A} K[x_j, l-_j + u_j]_{j not in A},
/// with u_j = u_first + x_j (u_last - u_first). xbar holds the N interior abscissas.
MultiPoly g_polynomial(std::span<const Rational> xbar, std::span<const MultiPoly> upper,
                       std::span<const MultiPoly> lower, const MultiPoly& u_first, const MultiPoly& u_last);

/// g summed over the four sign choices (u_first, u_last) -> (+-u_first, +-u_last).
MultiPoly sign_symmetrized_g(std::span<const Rational> xbar, std::span<const MultiPoly> upper,
                             std::span<const MultiPoly> lower, const MultiPoly& u_first, const MultiPoly& u_last);

/// Exact probability that N + 2 independent uniform points, one per segment,
/// are in convex position. Requires beta in Compa(lambda) and positive
/// interior widths. A zero-width extreme segment is handled as the limit of
/// the averaged integrand, i.e. by evaluating at u = 0.
Rational family_probability(const NormalizedFamily& family);

/// Same quantity for families derived from floating-point slices: beta is
/// clamped into [-lambda, lambda] and slightly negative lambda to 0 when the
/// violation is at most `tolerance`; larger violations throw. The slope
/// conditions are not enforced: for slices of a convex body they hold up to
/// rounding, and the polynomial value moves continuously with such errors.
Rational family_probability_lenient(NormalizedFamily family, const Rational& tolerance);

}  // namespace sylvester
