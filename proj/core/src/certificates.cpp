#include "sylvester/certificates.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "sylvester/random.hpp"
#include "sylvester/segments.hpp"
#include "certificate_support.hpp"

namespace sylvester {

namespace {

MultiPoly var(const std::string& name) { return MultiPoly::variable(name); }
std::string idx(int j) { return std::to_string(j); }

const std::vector<std::string>& simplex_vars() {
  static const std::vector<std::string> v{"x1", "x2", "x3"};
  return v;
}

void require_simplex_polynomial(const MultiPoly& p) {
  for (const auto& v : p.occurring_variables()) {
    if (v != "x1" && v != "x2" && v != "x3") {
      throw PreconditionError("positivity_check: unexpected variable '" + v + "'; only x1, x2, x3 are allowed");
    }
  }
}

/// Replaces v by V/(1+V) and multiplies by (1+V)^deg_v.
MultiPoly bernstein_transform(const MultiPoly& p, const std::string& v) {
  const int d = p.degree(v);
  if (d <= 0) return p;
  const MultiPoly t = var(v);
  const MultiPoly one_plus = MultiPoly(Rational(1)) + t;
  MultiPoly out;
  for (int k = 0; k <= d; ++k) {
    MultiPoly c = p.coefficient(v, k);
    if (c.is_zero()) continue;
    out += c * t.pow(static_cast<unsigned>(k)) * one_plus.pow(static_cast<unsigned>(d - k));
  }
  return out;
}

enum class CoefficientSigns { nonnegative_nonzero, has_negative, zero };

CoefficientSigns coefficient_signs(const MultiPoly& p) {
  if (p.is_zero()) return CoefficientSigns::zero;
  for (const auto& [e, c] : p.terms()) {
    if (c.sign() < 0) return CoefficientSigns::has_negative;
  }
  return CoefficientSigns::nonnegative_nonzero;
}

bool monomial_certificate(const MultiPoly& expr, int max_elevation) {
  // 0 < x1 < x2 < x3 < 1  <->  (sa, sb, sc) in (0,1)^3.
  const MultiPoly one(Rational(1));
  const MultiPoly sa = var("sa");
  const MultiPoly sb = var("sb");
  const MultiPoly sc = var("sc");
  const MultiPoly x3 = one - sc;
  const MultiPoly x2 = x3 * sb;
  const MultiPoly x1 = x2 * sa;
  MultiPoly q = expr.substitute(std::map<std::string, MultiPoly>{{"x1", x1}, {"x2", x2}, {"x3", x3}});
  for (const char* v : {"sa", "sb", "sc"}) q = bernstein_transform(q, v);
  const MultiPoly lift = (one + sa) * (one + sb) * (one + sc);
  for (int e = 0; e <= max_elevation; ++e) {
    switch (coefficient_signs(q)) {
      case CoefficientSigns::nonnegative_nonzero:
        return true;
      case CoefficientSigns::zero:
        return false;
      case CoefficientSigns::has_negative:
        break;
    }
    q = q * lift;
  }
  return false;
}

/// Interval of x_j given the other coordinates, as (lower, upper) expressions.
std::pair<MultiPoly, MultiPoly> simplex_interval(const std::string& v) {
  if (v == "x1") return {MultiPoly(Rational(0)), var("x2")};
  if (v == "x2") return {var("x1"), var("x3")};
  return {var("x2"), MultiPoly(Rational(1))};
}

std::optional<PositivityMethod> certify(const MultiPoly& expr, const PositivityOptions& options, int depth) {
  if (monomial_certificate(expr, options.max_elevation)) return PositivityMethod::monomial_certificate;
  if (depth >= options.max_endpoint_depth) return std::nullopt;
  for (const auto& v : simplex_vars()) {
    if (expr.degree(v) != 1) continue;
    const auto [lo, hi] = simplex_interval(v);
    const auto left = certify(expr.substitute(v, lo), options, depth + 1);
    if (!left) continue;
    const auto right = certify(expr.substitute(v, hi), options, depth + 1);
    if (right) return PositivityMethod::endpoint_linear;
  }
  return std::nullopt;
}

Assignment random_simplex_point(Pcg32& rng) {
  constexpr long kScale = 1L << 20;
  std::vector<long> v;
  std::set<long> seen{0, kScale};
  while (v.size() < 3) {
    long k = static_cast<long>(rng.below(static_cast<std::uint32_t>(kScale)));
    if (seen.insert(k).second) v.push_back(k);
  }
  std::sort(v.begin(), v.end());
  return {{"x1", Rational(v[0], kScale)}, {"x2", Rational(v[1], kScale)}, {"x3", Rational(v[2], kScale)}};
}

}  // namespace

namespace detail {

Rational Lin::evaluate(const Assignment& x) const {
  const Rational lo = lower.evaluate(x);
  const Rational hi = upper.evaluate(x);
  const Rational p_lo = at_lower.evaluate(x);
  const Rational p_hi = at_upper.evaluate(x);
  return p_lo + (x.at(var) - lo) * (p_hi - p_lo) / (hi - lo);
}

Lin lin_x1(const std::string& name, const MultiPoly& at_zero, const MultiPoly& at_x2) {
  return Lin{name, "x1", MultiPoly(Rational(0)), var("x2"), at_zero, at_x2, "0", "x2"};
}

Lin lin_x3(const std::string& name, const MultiPoly& at_x2, const MultiPoly& at_one) {
  return Lin{name, "x3", var("x2"), MultiPoly(Rational(1)), at_x2, at_one, "x2", "1"};
}

XRat::XRat(const MultiPoly& p, int power) {
  if (p.is_constant()) {
    scale_ = p.constant_term().pow(static_cast<unsigned>(power));
  } else {
    scale_ = Rational(1);
    num_.emplace_back(p, power);
  }
}

Rational XRat::evaluate(const Assignment& x) const {
  Rational v = scale_;
  for (const auto& [p, k] : num_) v *= p.evaluate(x).pow(static_cast<unsigned>(k));
  for (const auto& lin : lins_) v *= lin.evaluate(x);
  for (const auto& [p, k] : den_) v /= p.evaluate(x).pow(static_cast<unsigned>(k));
  return v;
}

XRat& XRat::operator*=(const XRat& o) {
  scale_ *= o.scale_;
  num_.insert(num_.end(), o.num_.begin(), o.num_.end());
  den_.insert(den_.end(), o.den_.begin(), o.den_.end());
  lins_.insert(lins_.end(), o.lins_.begin(), o.lins_.end());
  return *this;
}

XRat& XRat::operator/=(const XRat& o) {
  if (!o.lins_.empty()) throw PreconditionError("XRat: Lin factors are only allowed in numerators");
  scale_ /= o.scale_;
  num_.insert(num_.end(), o.den_.begin(), o.den_.end());
  den_.insert(den_.end(), o.num_.begin(), o.num_.end());
  return *this;
}

std::string point_string(const XPoint& x, int dims) {
  std::string s = "(";
  for (int i = 0; i < dims; ++i) s += (i ? ", " : "") + x[static_cast<std::size_t>(i)].to_string();
  return s + ")";
}

Assignment assignment_of(const XPoint& x) { return {{"x1", x[0]}, {"x2", x[1]}, {"x3", x[2]}}; }

XPoint mirror(const XPoint& x) { return {Rational(1) - x[2], Rational(1) - x[1], Rational(1) - x[0]}; }

void check_points(std::span<const XPoint> points) {
  if (points.empty()) throw PreconditionError("certificate verification needs at least one x-point");
  for (const auto& x : points) {
    if (!(Rational(0) < x[0] && x[0] < x[1] && x[1] < x[2] && x[2] < Rational(1))) {
      throw PreconditionError("x-point " + point_string(x, 3) + " is not in 0 < x1 < x2 < x3 < 1");
    }
  }
}

Rational mutated(const std::optional<Mutation>& mutation, const std::string& name, const Rational& value) {
  if (mutation && mutation->target == name) return value + mutation->delta;
  return value;
}

PositivityOptions certificate_positivity_options() {
  PositivityOptions o;
  o.samples = 2000;
  return o;
}

}  // namespace detail

MultiPoly symbolic_difference(int n_interior, std::span<const Rational> x, DifferenceKind kind) {
  if (n_interior < 1) throw PreconditionError("symbolic_difference: N must be >= 1");
  if (static_cast<int>(x.size()) != n_interior) throw PreconditionError("symbolic_difference: need N abscissas");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= Rational(0) || x[i] >= Rational(1) || (i > 0 && x[i] <= x[i - 1])) {
      throw PreconditionError("symbolic_difference: abscissas must satisfy 0 < x_1 < ... < x_N < 1");
    }
  }
  const MultiPoly l0 = var("l0");
  const MultiPoly l1 = var("l1");
  std::vector<MultiPoly> first_upper, first_lower, second_upper, second_lower;
  for (int j = 0; j < n_interior; ++j) {
    const MultiPoly trapezoid = l0 + (l1 - l0) * x[static_cast<std::size_t>(j)];
    const MultiPoly lam = var("lambda" + idx(j + 1));
    const MultiPoly bet = var("beta" + idx(j + 1));
    if (kind == DifferenceKind::minoration) {
      first_upper.push_back(lam + trapezoid + bet);
      first_lower.push_back(lam - bet + trapezoid);
      second_upper.push_back(lam * Rational(2) + trapezoid);
      second_lower.push_back(trapezoid);
    } else {
      first_upper.push_back(lam + trapezoid);
      first_lower.push_back(lam + trapezoid);
      second_upper.push_back(lam + trapezoid + bet);
      second_lower.push_back(lam + trapezoid - bet);
    }
  }
  const MultiPoly a = var("a");
  const MultiPoly b = var("b");
  return sign_symmetrized_g(x, first_upper, first_lower, a, b) - sign_symmetrized_g(x, second_upper, second_lower, a, b);
}

MultiPoly to_slope_variables(const MultiPoly& d, std::span<const Rational> x) {
  std::vector<Rational> xbar{Rational(0)};
  xbar.insert(xbar.end(), x.begin(), x.end());
  xbar.push_back(Rational(1));
  const int n = static_cast<int>(x.size());
  std::vector<MultiPoly> p, q;
  for (int j = 1; j <= n; ++j) {
    p.push_back(var("p" + idx(j)));
    q.push_back(var("q" + idx(j)));
  }
  const auto lam = profile_to_offsets<MultiPoly>(p, xbar);
  const auto bet = profile_to_offsets<MultiPoly>(q, xbar);
  std::map<std::string, MultiPoly> s;
  for (int j = 1; j <= n; ++j) {
    s["lambda" + idx(j)] = lam[static_cast<std::size_t>(j)];
    s["beta" + idx(j)] = bet[static_cast<std::size_t>(j)];
  }
  return d.substitute(s);
}

std::vector<XPoint> nested_simplex_grid(int per_level, int dims) {
  if (per_level < 1) throw PreconditionError("nested_simplex_grid: per_level must be >= 1");
  if (dims != 2 && dims != 3) throw PreconditionError("nested_simplex_grid: dims must be 2 or 3");
  std::vector<Rational> s;
  for (int i = 1; i <= per_level; ++i) {
    // Slightly off the uniform mesh so that no coordinate lands on 1/2.
    s.push_back(Rational(7 * i - 1, 7 * (per_level + 1)));
  }
  std::vector<XPoint> out;
  for (const auto& s_top : s) {
    for (const auto& s_mid : s) {
      if (dims == 2) {
        out.push_back({s_top * s_mid, s_top, Rational(0)});
        continue;
      }
      for (const auto& s_low : s) {
        const Rational x3 = s_top;
        const Rational x2 = x3 * s_mid;
        out.push_back({x2 * s_low, x2, x3});
      }
    }
  }
  return out;
}

std::string to_string(PositivityMethod m) {
  switch (m) {
    case PositivityMethod::monomial_certificate:
      return "monomial-certificate";
    case PositivityMethod::endpoint_linear:
      return "endpoint-linear";
    case PositivityMethod::sampled_only:
      return "sampled-only";
  }
  return "sampled-only";
}

PositivityVerdict positivity_check(const MultiPoly& expr, const PositivityOptions& options) {
  require_simplex_polynomial(expr);
  PositivityVerdict verdict;
  if (auto method = certify(expr, options, 0)) {
    verdict.status = PositivityVerdict::Status::certified;
    verdict.method = *method;
    return verdict;
  }
  Pcg32 rng(options.seed, 0x5eed);
  for (int i = 0; i < options.samples; ++i) {
    Assignment pt = random_simplex_point(rng);
    if (expr.evaluate(pt).sign() <= 0) {
      verdict.status = PositivityVerdict::Status::refuted;
      verdict.witness = std::move(pt);
      return verdict;
    }
  }
  verdict.status = PositivityVerdict::Status::sampled_only;
  verdict.method = PositivityMethod::sampled_only;
  return verdict;
}

MultiPoly linear_reconstruct(const std::string& v, const MultiPoly& a, const MultiPoly& pa, const MultiPoly& b,
                             const MultiPoly& pb) {
  const MultiPoly gap = b - a;
  if (gap.is_zero()) throw PreconditionError("linear_reconstruct: coincident endpoints");
  if (gap.depends_on(v) || pa.depends_on(v) || pb.depends_on(v)) {
    throw PreconditionError("linear_reconstruct: endpoints and values must not involve " + v);
  }
  MultiPoly slope;
  if (gap.is_constant()) {
    slope = (pb - pa) / gap.constant_term();
  } else {
    // gap = c (w - s) for some variable w of degree 1 with constant coefficient c.
    std::optional<MultiPoly> q;
    for (const auto& w : gap.occurring_variables()) {
      if (gap.degree(w) != 1) continue;
      const MultiPoly c = gap.coefficient(w, 1);
      if (!c.is_constant()) continue;
      const Rational lead = c.constant_term();
      const MultiPoly shift = -(gap.coefficient(w, 0) / lead);
      if (auto quotient = (pb - pa).divide_linear(w, shift)) {
        q = *quotient / lead;
        break;
      }
      throw PreconditionError("linear_reconstruct: interpolant is not a polynomial (endpoint gap does not divide)");
    }
    if (!q) throw PreconditionError("linear_reconstruct: endpoint gap is not linear in a single variable");
    slope = *q;
  }
  return pa + (var(v) - a) * slope;
}

bool CertificateReport::pass() const {
  for (const auto& c : identity_checks) {
    if (c.gating && !c.pass) return false;
  }
  for (const auto& c : positivity_checks) {
    if (!c.gating) continue;
    if (!c.pass) {
      const bool waived = c.method == PositivityMethod::sampled_only &&
                          std::find(waivers.begin(), waivers.end(), c.name) != waivers.end();
      if (!waived) return false;
    }
  }
  return true;
}

std::size_t CertificateReport::sampled_only_count() const {
  return static_cast<std::size_t>(std::count_if(positivity_checks.begin(), positivity_checks.end(), [](const auto& c) {
    return c.gating && c.method == PositivityMethod::sampled_only;
  }));
}

void CertificateReport::append(const CertificateReport& other) {
  identity_checks.insert(identity_checks.end(), other.identity_checks.begin(), other.identity_checks.end());
  positivity_checks.insert(positivity_checks.end(), other.positivity_checks.begin(), other.positivity_checks.end());
  waivers.insert(waivers.end(), other.waivers.begin(), other.waivers.end());
}

std::vector<Rational> leading_principal_minors(const Matrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw PreconditionError("leading_principal_minors: matrix is not square");
  }
  std::vector<Rational> out;
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix a(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a[i][j] = m[i][j];
    }
    Rational det(1);
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t pivot = col;
      while (pivot < k && a[pivot][col].is_zero()) ++pivot;
      if (pivot == k) {
        det = Rational(0);
        break;
      }
      if (pivot != col) {
        std::swap(a[pivot], a[col]);
        det = -det;
      }
      det *= a[col][col];
      for (std::size_t r = col + 1; r < k; ++r) {
        const Rational f = a[r][col] / a[col][col];
        for (std::size_t c = col; c < k; ++c) a[r][c] -= f * a[col][c];
      }
    }
    out.push_back(det);
  }
  return out;
}

bool is_positive_definite(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (m[i][j] != m[j][i]) return false;
    }
  }
  const auto minors = leading_principal_minors(m);
  return std::all_of(minors.begin(), minors.end(), [](const Rational& d) { return d.sign() > 0; });
}

FalsificationResult search_outside_compa(DifferenceKind kind, int trials, std::uint64_t seed) {
  if (trials < 0) throw PreconditionError("search_outside_compa: trials must be >= 0");
  constexpr long kScale = 1024;
  constexpr int kPerAbscissa = 25;
  Pcg32 rng(seed, 0xfa15);
  auto draw = [&] { return Rational(static_cast<long>(rng.below(kScale + 1)), kScale); };
  FalsificationResult result;
  std::vector<Rational> x;
  MultiPoly d;
  for (int t = 0; t < trials; ++t) {
    if (t % kPerAbscissa == 0) {
      Assignment pt = random_simplex_point(rng);
      x = {pt["x1"], pt["x2"], pt["x3"]};
      d = symbolic_difference(3, x, kind);
    }
    std::vector<Rational> xbar{Rational(0), x[0], x[1], x[2], Rational(1)};
    std::vector<Rational> lam(5), bet(5);
    for (std::size_t j = 1; j <= 3; ++j) {
      lam[j] = draw();
      bet[j] = lam[j] * (Rational(2) * draw() - Rational(1));
    }
    ++result.trials;
    if (in_compa(lam, bet, xbar)) continue;
    Assignment at{{"l0", draw()}, {"l1", draw()}, {"a", Rational(0)}, {"b", Rational(0)}};
    for (std::size_t j = 1; j <= 3; ++j) {
      at["lambda" + idx(static_cast<int>(j))] = lam[j];
      at["beta" + idx(static_cast<int>(j))] = bet[j];
    }
    const Rational value = d.evaluate(at);
    if (value.sign() < 0) {
      result.found_negative = true;
      result.x = x;
      result.lambda = {lam[1], lam[2], lam[3]};
      result.beta = {bet[1], bet[2], bet[3]};
      result.value = value;
      return result;
    }
  }
  return result;
}

}  // namespace sylvester
