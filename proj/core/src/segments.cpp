#include "sylvester/segments.hpp"

#include <string>

#include "sylvester/comb.hpp"

namespace sylvester {

namespace {

void check_profile_sizes(std::size_t n_values, std::size_t n_xbar) {
  if (n_values != n_xbar) throw PreconditionError("profile and abscissa counts differ");
  if (n_xbar < 2) throw PreconditionError("need at least the two extreme abscissas");
}

void check_containment(const NormalizedFamily& f) {
  const int n = f.interior_count();
  for (int j = 1; j <= n; ++j) {
    if (f.beta[j].abs() > f.lambda[j]) {
      throw PreconditionError("segment " + std::to_string(j) + " does not contain the trapezoid slice: |beta| = " +
                              f.beta[j].abs().to_string() + " > lambda = " + f.lambda[j].to_string());
    }
    if (f.width(j).sign() <= 0) throw PreconditionError("interior segment " + std::to_string(j) + " has zero width");
  }
}

Rational probability_unchecked(const NormalizedFamily& f) {
  const int n = f.interior_count();
  if (n <= 1) return Rational(1);

  std::vector<Rational> x(f.xbar.begin() + 1, f.xbar.end() - 1);
  std::vector<MultiPoly> upper;
  std::vector<MultiPoly> lower;
  Rational widths(1);
  for (int j = 1; j <= n; ++j) {
    upper.emplace_back(f.upper(j));
    lower.emplace_back(f.lower(j));
    widths *= f.width(j);
  }
  const bool first_is_point = f.L0.is_zero();
  const bool last_is_point = f.L1.is_zero();
  const MultiPoly u_first = first_is_point ? MultiPoly(Rational(0)) : MultiPoly::variable("u0");
  const MultiPoly u_last = last_is_point ? MultiPoly(Rational(0)) : MultiPoly::variable("u1");

  MultiPoly g = g_polynomial(x, upper, lower, u_first, u_last);
  if (!first_is_point) g = g.integrate("u0", -f.L0, f.L0) / (Rational(2) * f.L0);
  if (!last_is_point) g = g.integrate("u1", -f.L1, f.L1) / (Rational(2) * f.L1);
  return g.constant_term() / widths;
}

}  // namespace

void NormalizedFamily::validate_structure() const {
  const std::size_t size = xbar.size();
  if (size < 2) throw PreconditionError("normalized family needs at least two segments");
  if (lambda.size() != size || beta.size() != size) {
    throw PreconditionError("normalized family has mismatched xbar/lambda/beta lengths");
  }
  if (xbar.front() != Rational(0) || xbar.back() != Rational(1)) {
    throw PreconditionError("normalized abscissas must start at 0 and end at 1");
  }
  for (std::size_t j = 1; j < size; ++j) {
    if (xbar[j] <= xbar[j - 1]) throw PreconditionError("normalized abscissas are not strictly increasing");
  }
  if (!lambda.front().is_zero() || !lambda.back().is_zero() || !beta.front().is_zero() || !beta.back().is_zero()) {
    throw PreconditionError("lambda and beta must vanish on the extreme segments");
  }
  if (L0.sign() < 0 || L1.sign() < 0) throw PreconditionError("trapezoid half-widths must be nonnegative");
}

bool NormalizedFamily::is_valid() const {
  try {
    validate_structure();
  } catch (const PreconditionError&) {
    return false;
  }
  for (std::size_t j = 0; j < xbar.size(); ++j) {
    if (lambda[j].sign() < 0 || upper(j).sign() < 0 || lower(j).sign() < 0) return false;
  }
  return true;
}

NormalizedFamily normalize(std::span<const VerticalSegment> segments) {
  if (segments.size() < 2) throw PreconditionError("normalize needs at least two segments");
  for (std::size_t j = 0; j < segments.size(); ++j) {
    if (segments[j].y_low > segments[j].y_high) {
      throw PreconditionError("segment " + std::to_string(j) + " has y_low > y_high");
    }
    if (j > 0 && segments[j].x <= segments[j - 1].x) {
      throw PreconditionError("segment abscissas must be strictly increasing (duplicate or unordered at index " +
                              std::to_string(j) + ")");
    }
  }
  const auto& first = segments.front();
  const auto& last = segments.back();
  const Rational span = last.x - first.x;
  const Rational m0 = first.middle();
  const Rational m1 = last.middle();

  NormalizedFamily f;
  f.L0 = first.width() / Rational(2);
  f.L1 = last.width() / Rational(2);
  for (const auto& s : segments) {
    Rational h = (s.x - first.x) / span;
    Rational trapezoid = f.L0 + (f.L1 - f.L0) * h;
    f.xbar.push_back(h);
    f.lambda.push_back(s.width() / Rational(2) - trapezoid);
    f.beta.push_back(s.middle() - m0 - (m1 - m0) * h);
  }
  // Exact zeros at the extremes by construction; written explicitly.
  f.lambda.front() = f.lambda.back() = Rational(0);
  f.beta.front() = f.beta.back() = Rational(0);
  return f;
}

std::vector<VerticalSegment> family_segments(const NormalizedFamily& family) {
  family.validate_structure();
  std::vector<VerticalSegment> out;
  for (std::size_t j = 0; j < family.xbar.size(); ++j) {
    const Rational half = family.trapezoid(j) + family.lambda[j];
    out.push_back({family.xbar[j], family.beta[j] - half, family.beta[j] + half});
  }
  return out;
}

template <typename T>
std::vector<T> slope_profile(std::span<const T> values, std::span<const Rational> xbar) {
  check_profile_sizes(values.size(), xbar.size());
  const std::size_t n = xbar.size() - 2;
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) {
    T left = (values[j] - values[j - 1]) / (xbar[j] - xbar[j - 1]);
    T right = (values[j + 1] - values[j]) / (xbar[j + 1] - xbar[j]);
    out.push_back(left - right);
  }
  return out;
}

template <typename T>
std::vector<T> profile_to_offsets(std::span<const T> profile, std::span<const Rational> xbar) {
  if (xbar.size() != profile.size() + 2) throw PreconditionError("profile needs N values for N + 2 abscissas");
  const std::size_t n = profile.size();
  const Rational& x0 = xbar.front();
  const Rational& x1 = xbar.back();
  const Rational span = x1 - x0;
  std::vector<T> out(n + 2, T(Rational(0)));
  for (std::size_t m = 1; m <= n; ++m) {
    T acc = T(Rational(0));
    for (std::size_t j = 1; j <= n; ++j) {
      // Green's function of the discrete second difference with zero ends.
      const Rational coeff = j >= m ? (xbar[j] - x1) * (x0 - xbar[m]) : (xbar[m] - x1) * (x0 - xbar[j]);
      acc = acc + profile[j - 1] * (coeff / span);
    }
    out[m] = acc;
  }
  return out;
}

bool in_compa(std::span<const Rational> lambda, std::span<const Rational> beta, std::span<const Rational> xbar) {
  if (lambda.size() != beta.size() || beta.size() != xbar.size() || xbar.size() < 2) {
    throw PreconditionError("in_compa: mismatched lengths");
  }
  if (!beta.front().is_zero() || !beta.back().is_zero()) return false;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    if (beta[j].abs() > lambda[j]) return false;
  }
  const auto p = slope_profile<Rational>(lambda, xbar);
  const auto q = slope_profile<Rational>(beta, xbar);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (q[j].abs() > p[j]) return false;
  }
  return true;
}

MultiPoly g_polynomial(std::span<const Rational> xbar, std::span<const MultiPoly> upper,
                       std::span<const MultiPoly> lower, const MultiPoly& u_first, const MultiPoly& u_last) {
  const std::size_t n = xbar.size();
  if (upper.size() != n || lower.size() != n) throw PreconditionError("g_polynomial: mismatched lengths");
  if (n > 20) throw PreconditionError("g_polynomial: too many segments");

  std::vector<MultiPoly> chord;
  for (std::size_t j = 0; j < n; ++j) chord.push_back(u_first + (u_last - u_first) * xbar[j]);

  MultiPoly total;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Rational> above_x;
    std::vector<MultiPoly> above_l;
    std::vector<Rational> below_x;
    std::vector<MultiPoly> below_l;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) {
        above_x.push_back(xbar[j]);
        above_l.push_back(upper[j] - chord[j]);
      } else {
        below_x.push_back(xbar[j]);
        below_l.push_back(lower[j] + chord[j]);
      }
    }
    total += k_rec(above_x, above_l) * k_rec(below_x, below_l);
  }
  return total;
}

MultiPoly sign_symmetrized_g(std::span<const Rational> xbar, std::span<const MultiPoly> upper,
                             std::span<const MultiPoly> lower, const MultiPoly& u_first, const MultiPoly& u_last) {
  MultiPoly total;
  for (int s0 : {1, -1}) {
    for (int s1 : {1, -1}) {
      total += g_polynomial(xbar, upper, lower, u_first * Rational(s0), u_last * Rational(s1));
    }
  }
  return total;
}

Rational family_probability(const NormalizedFamily& family) {
  family.validate_structure();
  if (!in_compa(family.lambda, family.beta, family.xbar)) {
    throw PreconditionError("family_probability: symmetry defect beta is not in Compa(lambda)");
  }
  check_containment(family);
  return probability_unchecked(family);
}

Rational family_probability_lenient(NormalizedFamily family, const Rational& tolerance) {
  family.validate_structure();
  const int n = family.interior_count();
  for (int j = 1; j <= n; ++j) {
    Rational& lam = family.lambda[j];
    Rational& bet = family.beta[j];
    if (lam.sign() < 0) {
      if (-lam > tolerance) {
        throw PreconditionError("segment " + std::to_string(j) + " lies inside the trapezoid by " +
                                (-lam).to_string() + ", beyond tolerance");
      }
      lam = Rational(0);
    }
    if (bet.abs() > lam) {
      if (bet.abs() - lam > tolerance) {
        throw PreconditionError("segment " + std::to_string(j) + " violates |beta| <= lambda by " +
                                (bet.abs() - lam).to_string() + ", beyond tolerance");
      }
      bet = bet.sign() < 0 ? -lam : lam;
    }
  }
  check_containment(family);
  return probability_unchecked(family);
}

template std::vector<Rational> slope_profile<Rational>(std::span<const Rational>, std::span<const Rational>);
template std::vector<MultiPoly> slope_profile<MultiPoly>(std::span<const MultiPoly>, std::span<const Rational>);
template std::vector<Rational> profile_to_offsets<Rational>(std::span<const Rational>, std::span<const Rational>);
template std::vector<MultiPoly> profile_to_offsets<MultiPoly>(std::span<const MultiPoly>, std::span<const Rational>);

}  // namespace sylvester
