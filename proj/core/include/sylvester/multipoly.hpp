#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sylvester/rational.hpp"

namespace sylvester {

using Assignment = std::map<std::string, Rational>;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are keyed by exponent vectors whose arity equals the number of
/// variables. Zero coefficients are never stored. Binary operations between
/// polynomials over different variable lists work over the union of the lists
/// (left operand's order first).
class MultiPoly {
 public:
  using Exponents = std::vector<std::uint16_t>;
  using TermMap = std::map<Exponents, Rational>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  explicit MultiPoly(std::vector<std::string> variables);

  static MultiPoly variable(const std::string& name);
  static MultiPoly from_terms(std::vector<std::string> variables, const TermMap& terms);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;

  /// Variables with a nonzero exponent in at least one term.
  std::vector<std::string> occurring_variables() const;
  bool depends_on(const std::string& var) const;

  int degree(const std::string& var) const;
  int total_degree() const;
  /// Total degree counting only the listed variables.
  int total_degree(const std::vector<std::string>& subset) const;

  /// Throws MissingVariableError listing every occurring variable that is unbound.
  Rational evaluate(const Assignment& assignment) const;

  MultiPoly substitute(const std::string& var, const Rational& value) const;
  MultiPoly substitute(const std::string& var, const MultiPoly& value) const;
  /// Simultaneous substitution.
  MultiPoly substitute(const std::map<std::string, MultiPoly>& values) const;
  /// Partial evaluation at every bound variable.
  MultiPoly partial_evaluate(const Assignment& assignment) const;

  /// Coefficient of var^k, as a polynomial without var.
  MultiPoly coefficient(const std::string& var, int k) const;
  /// Coefficient of a monomial in the listed variables (others kept symbolic).
  MultiPoly coefficient(const std::map<std::string, int>& monomial) const;

  /// Definite integral over var on [lo, hi]; var need not occur.
  MultiPoly integrate(const std::string& var, const Rational& lo, const Rational& hi) const;

  /// Exact quotient by (var - shift), shift free of var; nullopt if the
  /// remainder is nonzero.
  std::optional<MultiPoly> divide_linear(const std::string& var, const MultiPoly& shift) const;

  MultiPoly pow(unsigned k) const;
  MultiPoly with_variables(const std::vector<std::string>& variables) const;
  /// Drops variables that do not occur.
  MultiPoly compact() const;

  std::string to_string() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly& operator/=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator/(MultiPoly a, const Rational& c) { return a /= c; }
  friend MultiPoly operator-(const MultiPoly& a);

  /// Equality as polynomials, independent of variable-list order.
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

 private:
  void add_term(const Exponents& e, const Rational& c);
  std::optional<std::size_t> index_of(const std::string& var) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

inline Rational poly_eval(const MultiPoly& p, const Assignment& assignment) { return p.evaluate(assignment); }
inline MultiPoly poly_integrate_box(const MultiPoly& p, const std::string& var, const Rational& lo,
                                    const Rational& hi) {
  return p.integrate(var, lo, hi);
}

enum class IdentityVerdict { identical, different, inconclusive };

struct IdentityCheck {
  IdentityVerdict verdict = IdentityVerdict::inconclusive;
  std::size_t grid_points = 0;
  bool identical() const { return verdict == IdentityVerdict::identical; }
};

/// Deterministic identity test: lhs - rhs is evaluated on a product grid with
/// (bound + 1) distinct points per variable, then at one off-grid probe. A
/// difference that vanishes on the grid but not at the probe means a declared
/// bound was too small and the result is inconclusive.
IdentityCheck grid_identity_check(const MultiPoly& lhs, const MultiPoly& rhs,
                                  const std::map<std::string, int>& degree_bounds);

}  // namespace sylvester
