#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sylvester/multipoly.hpp"
#include "sylvester/rational.hpp"

namespace sylvester {

enum class DifferenceKind { minoration, majoration };

/// D for N interior abscissas as a polynomial in l0, l1, a, b, lambda1..lambdaN,
/// beta1..betaN, with L_j = l0 + (l1 - l0) x_j.
///   minoration: G(lambda+L+beta, lambda-beta+L) - G(2 lambda+L, L)
///   majoration: G(lambda+L, lambda+L) - G(lambda+L+beta, lambda+L-beta)
MultiPoly symbolic_difference(int n_interior, std::span<const Rational> x, DifferenceKind kind);

/// Rewrites lambda_j, beta_j in terms of slope differences p_j, q_j.
MultiPoly to_slope_variables(const MultiPoly& d, std::span<const Rational> x);

/// Point of the order simplex 0 < x1 < x2 < x3 < 1 (trailing entries unused for N = 2).
using XPoint = std::array<Rational, 3>;

/// Nested grid: x3 = s_i, x2 = x3 s_j, x1 = x2 s_k over `per_level` distinct
/// s values in (0,1); per_level^dims points.
std::vector<XPoint> nested_simplex_grid(int per_level, int dims = 3);

enum class PositivityMethod { monomial_certificate, endpoint_linear, sampled_only };
std::string to_string(PositivityMethod m);

struct PositivityVerdict {
  enum class Status { certified, sampled_only, refuted };
  Status status = Status::sampled_only;
  PositivityMethod method = PositivityMethod::sampled_only;
  std::optional<Assignment> witness;

  bool certified() const { return status == Status::certified; }
};

struct PositivityOptions {
  int max_elevation = 8;
  int samples = 10000;
  std::uint64_t seed = 1;
  int max_endpoint_depth = 3;
};

/// Strict positivity of a polynomial in x1, x2, x3 on the open order simplex.
/// Tries the monomial certificate (simplex substitution followed by a Bernstein
/// test on the unit cube, with degree elevation), then endpoint recursion for
/// expressions linear in one of the x_j, then dense rational sampling.
PositivityVerdict positivity_check(const MultiPoly& expr, const PositivityOptions& options = {});

/// Unique polynomial linear in var through (a, pa) and (b, pb). Throws
/// PreconditionError when a == b or when the interpolant is not a polynomial.
MultiPoly linear_reconstruct(const std::string& var, const MultiPoly& a, const MultiPoly& pa, const MultiPoly& b,
                             const MultiPoly& pb);

struct IdentityEntry {
  std::string name;
  std::size_t grid_points = 0;
  bool pass = false;
  /// Informational entries document printed variants that are known to differ.
  bool gating = true;
  std::string detail;
};

struct PositivityEntry {
  std::string name;
  PositivityMethod method = PositivityMethod::sampled_only;
  bool pass = false;
  bool gating = true;
  std::string detail;
};

struct CertificateReport {
  std::string name;
  std::vector<IdentityEntry> identity_checks;
  std::vector<PositivityEntry> positivity_checks;
  /// Names of positivity claims allowed to pass as sampled_only.
  std::vector<std::string> waivers;

  bool pass() const;
  std::size_t sampled_only_count() const;
  void append(const CertificateReport& other);
};

/// Optional perturbation of one named claimed object, used to sanity-check the checker.
struct Mutation {
  std::string target;
  Rational delta;
};

CertificateReport verify_n4(int grid_size, const std::optional<Mutation>& mutation = std::nullopt);
CertificateReport verify_n5_cone(std::span<const XPoint> points, const std::optional<Mutation>& mutation = std::nullopt);
CertificateReport verify_n5_quadratic(std::span<const XPoint> points,
                                      const std::optional<Mutation>& mutation = std::nullopt);

using Matrix = std::vector<std::vector<Rational>>;
/// det(M[k]) for k = 1..n by exact elimination.
std::vector<Rational> leading_principal_minors(const Matrix& m);
bool is_positive_definite(const Matrix& m);

struct FalsificationResult {
  std::size_t trials = 0;
  bool found_negative = false;
  std::vector<Rational> x;
  std::vector<Rational> lambda;
  std::vector<Rational> beta;
  Rational value;
};

/// Random search for beta with |beta_j| <= lambda_j but outside Compa where the
/// difference D, at random l0, l1 >= 0, becomes negative.
FalsificationResult search_outside_compa(DifferenceKind kind, int trials, std::uint64_t seed);

}  // namespace sylvester
