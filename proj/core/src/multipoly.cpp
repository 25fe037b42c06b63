#include "sylvester/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sylvester {

namespace {

std::vector<std::string> union_variables(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace

MultiPoly::MultiPoly(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

MultiPoly::MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p(std::vector<std::string>{name});
  p.terms_.emplace(Exponents{1}, Rational(1));
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<std::string> variables, const TermMap& terms) {
  MultiPoly p(std::move(variables));
  for (const auto& [e, c] : terms) {
    if (e.size() != p.vars_.size()) throw PreconditionError("exponent vector arity does not match variable count");
    p.add_term(e, c);
  }
  return p;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<std::size_t> MultiPoly::index_of(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](auto k) { return k == 0; });
}

Rational MultiPoly::constant_term() const {
  Exponents zero(vars_.size(), 0);
  auto it = terms_.find(zero);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::string> MultiPoly::occurring_variables() const {
  std::vector<bool> seen(vars_.size(), false);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) seen[i] = seen[i] || e[i] > 0;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (seen[i]) out.push_back(vars_[i]);
  }
  return out;
}

bool MultiPoly::depends_on(const std::string& var) const { return degree(var) > 0; }

int MultiPoly::degree(const std::string& var) const {
  auto idx = index_of(var);
  if (!idx) return terms_.empty() ? -1 : 0;
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[*idx]));
  return d;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

int MultiPoly::total_degree(const std::vector<std::string>& subset) const {
  std::vector<std::size_t> idx;
  for (const auto& v : subset) {
    if (auto i = index_of(v)) idx.push_back(*i);
  }
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto i : idx) s += e[i];
    d = std::max(d, s);
  }
  return d;
}

Rational MultiPoly::evaluate(const Assignment& assignment) const {
  std::vector<std::string> missing;
  std::vector<const Rational*> values(vars_.size(), nullptr);
  const auto occurring = occurring_variables();
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = assignment.find(vars_[i]);
    if (it != assignment.end()) {
      values[i] = &it->second;
    } else if (std::find(occurring.begin(), occurring.end(), vars_[i]) != occurring.end()) {
      missing.push_back(vars_[i]);
    }
  }
  if (!missing.empty()) {
    std::string msg = "unbound variables in polynomial evaluation:";
    for (const auto& m : missing) msg += " " + m;
    throw MissingVariableError(msg);
  }
  // Powers are cached per variable; exponents in this pipeline are small.
  std::vector<std::vector<Rational>> powers(vars_.size());
  Rational sum;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Rational(1));
      while (cache.size() <= e[i]) cache.push_back(cache.back() * *values[i]);
      t *= cache[e[i]];
    }
    sum += t;
  }
  return sum;
}

MultiPoly MultiPoly::substitute(const std::string& var, const Rational& value) const {
  return partial_evaluate(Assignment{{var, value}});
}

MultiPoly MultiPoly::partial_evaluate(const Assignment& assignment) const {
  std::vector<std::string> kept;
  std::vector<std::size_t> kept_idx;
  std::vector<const Rational*> values(vars_.size(), nullptr);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = assignment.find(vars_[i]);
    if (it != assignment.end()) {
      values[i] = &it->second;
    } else {
      kept.push_back(vars_[i]);
      kept_idx.push_back(i);
    }
  }
  MultiPoly out(kept);
  std::vector<std::vector<Rational>> powers(vars_.size());
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    Exponents reduced(kept.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (values[i] == nullptr || e[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Rational(1));
      while (cache.size() <= e[i]) cache.push_back(cache.back() * *values[i]);
      t *= cache[e[i]];
    }
    for (std::size_t k = 0; k < kept_idx.size(); ++k) reduced[k] = e[kept_idx[k]];
    out.add_term(reduced, t);
  }
  return out;
}

MultiPoly MultiPoly::substitute(const std::string& var, const MultiPoly& value) const {
  return substitute(std::map<std::string, MultiPoly>{{var, value}});
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& values) const {
  std::vector<std::string> kept;
  std::vector<std::size_t> kept_idx;
  std::vector<const MultiPoly*> subs(vars_.size(), nullptr);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = values.find(vars_[i]);
    if (it != values.end()) {
      subs[i] = &it->second;
    } else {
      kept.push_back(vars_[i]);
      kept_idx.push_back(i);
    }
  }
  std::vector<std::vector<MultiPoly>> powers(vars_.size());
  MultiPoly out(kept);
  for (const auto& [e, c] : terms_) {
    Exponents reduced(kept.size());
    for (std::size_t k = 0; k < kept_idx.size(); ++k) reduced[k] = e[kept_idx[k]];
    MultiPoly term(kept);
    term.add_term(reduced, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (subs[i] == nullptr || e[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(MultiPoly(Rational(1)));
      while (cache.size() <= e[i]) cache.push_back(cache.back() * *subs[i]);
      term *= cache[e[i]];
    }
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::coefficient(const std::string& var, int k) const {
  return coefficient(std::map<std::string, int>{{var, k}});
}

MultiPoly MultiPoly::coefficient(const std::map<std::string, int>& monomial) const {
  std::vector<int> wanted(vars_.size(), -1);
  for (const auto& [v, k] : monomial) {
    if (auto i = index_of(v)) {
      wanted[*i] = k;
    } else if (k != 0) {
      return MultiPoly();
    }
  }
  std::vector<std::string> kept;
  std::vector<std::size_t> kept_idx;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (wanted[i] < 0) {
      kept.push_back(vars_[i]);
      kept_idx.push_back(i);
    }
  }
  MultiPoly out(kept);
  for (const auto& [e, c] : terms_) {
    bool match = true;
    for (std::size_t i = 0; i < e.size() && match; ++i) {
      if (wanted[i] >= 0 && e[i] != wanted[i]) match = false;
    }
    if (!match) continue;
    Exponents reduced(kept.size());
    for (std::size_t k = 0; k < kept_idx.size(); ++k) reduced[k] = e[kept_idx[k]];
    out.add_term(reduced, c);
  }
  return out;
}

MultiPoly MultiPoly::integrate(const std::string& var, const Rational& lo, const Rational& hi) const {
  auto idx = index_of(var);
  if (!idx) return *this * (hi - lo);
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i != *idx) kept.push_back(vars_[i]);
  }
  MultiPoly out(kept);
  for (const auto& [e, c] : terms_) {
    const unsigned k = e[*idx] + 1u;
    Rational factor = (hi.pow(k) - lo.pow(k)) / Rational(static_cast<long>(k));
    Exponents reduced;
    reduced.reserve(kept.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != *idx) reduced.push_back(e[i]);
    }
    out.add_term(reduced, c * factor);
  }
  return out;
}

std::optional<MultiPoly> MultiPoly::divide_linear(const std::string& var, const MultiPoly& shift) const {
  if (shift.depends_on(var)) throw PreconditionError("divide_linear: shift must not contain " + var);
  const int d = degree(var);
  if (d <= 0) {
    if (is_zero()) return MultiPoly();
    return std::nullopt;
  }
  // Synthetic division in var with polynomial coefficients.
  std::vector<MultiPoly> coeffs;
  for (int k = 0; k <= d; ++k) coeffs.push_back(coefficient(var, k));
  std::vector<MultiPoly> quotient(static_cast<std::size_t>(d));
  quotient[d - 1] = coeffs[d];
  for (int k = d - 1; k >= 1; --k) quotient[k - 1] = coeffs[k] + shift * quotient[k];
  MultiPoly remainder = coeffs[0] + shift * quotient[0];
  if (!remainder.is_zero()) return std::nullopt;
  MultiPoly x = variable(var);
  MultiPoly out;
  MultiPoly xp(Rational(1));
  for (int k = 0; k < d; ++k) {
    out += quotient[k] * xp;
    xp *= x;
  }
  return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result(Rational(1));
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::with_variables(const std::vector<std::string>& variables) const {
  std::vector<std::size_t> target(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(variables.begin(), variables.end(), vars_[i]);
    if (it == variables.end()) {
      bool used = std::any_of(terms_.begin(), terms_.end(), [i](const auto& t) { return t.first[i] > 0; });
      if (used) throw PreconditionError("with_variables: target list lacks occurring variable " + vars_[i]);
      target[i] = variables.size();
    } else {
      target[i] = static_cast<std::size_t>(it - variables.begin());
    }
  }
  MultiPoly out(variables);
  for (const auto& [e, c] : terms_) {
    Exponents mapped(variables.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (target[i] < variables.size()) mapped[target[i]] = e[i];
    }
    out.add_term(mapped, c);
  }
  return out;
}

MultiPoly MultiPoly::compact() const { return with_variables(occurring_variables()); }

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.vars_ != vars_) {
    auto vars = union_variables(vars_, o.vars_);
    if (vars != vars_) *this = with_variables(vars);
    if (o.vars_ != vars_) {
      MultiPoly aligned = o.with_variables(vars_);
      for (const auto& [e, c] : aligned.terms_) add_term(e, c);
      return *this;
    }
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly(union_variables(a.vars_, b.vars_));
  const MultiPoly* lhs = &a;
  const MultiPoly* rhs = &b;
  MultiPoly la;
  MultiPoly rb;
  if (a.vars_ != b.vars_) {
    auto vars = union_variables(a.vars_, b.vars_);
    la = a.with_variables(vars);
    rb = b.with_variables(vars);
    lhs = &la;
    rhs = &rb;
  }
  MultiPoly out(lhs->vars_);
  MultiPoly::Exponents e(lhs->vars_.size());
  for (const auto& [ea, ca] : lhs->terms_) {
    for (const auto& [eb, cb] : rhs->terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly& MultiPoly::operator/=(const Rational& c) {
  if (c.is_zero()) throw PreconditionError("polynomial division by zero");
  for (auto& [e, v] : terms_) v /= c;
  return *this;
}

MultiPoly operator-(const MultiPoly& a) {
  MultiPoly out = a;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  return (a - b).is_zero();
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  // Highest total degree first, then reverse-lexicographic exponents.
  std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
    const int dl = std::accumulate(l.first.begin(), l.first.end(), 0);
    const int dr = std::accumulate(r.first.begin(), r.first.end(), 0);
    if (dl != dr) return dl > dr;
    return l.first > r.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    const bool unit_monomial = std::all_of(e.begin(), e.end(), [](auto k) { return k == 0; });
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (unit_monomial || mag != Rational(1)) {
      os << mag;
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

IdentityCheck grid_identity_check(const MultiPoly& lhs, const MultiPoly& rhs,
                                  const std::map<std::string, int>& degree_bounds) {
  const MultiPoly diff = lhs - rhs;
  std::vector<std::string> vars;
  std::vector<int> bounds;
  for (const auto& [v, d] : degree_bounds) {
    if (d < 0) throw PreconditionError("negative degree bound for " + v);
    vars.push_back(v);
    bounds.push_back(d);
  }
  IdentityCheck result;
  // A variable without a declared bound cannot be certified.
  for (const auto& v : diff.occurring_variables()) {
    if (degree_bounds.find(v) == degree_bounds.end()) return result;
  }
  // Grid nodes k + 1/(k+2), k = 0..d: distinct, non-integral.
  auto node = [](int k) { return Rational(k) + Rational(1L, static_cast<long>(k + 2)); };

  std::vector<int> idx(vars.size(), 0);
  Assignment point;
  for (;;) {
    for (std::size_t i = 0; i < vars.size(); ++i) point[vars[i]] = node(idx[i]);
    ++result.grid_points;
    if (!diff.evaluate(point).is_zero()) {
      result.verdict = IdentityVerdict::different;
      return result;
    }
    std::size_t i = 0;
    while (i < vars.size() && ++idx[i] > bounds[i]) idx[i++] = 0;
    if (i == vars.size()) break;
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    point[vars[i]] = Rational(-1L, static_cast<long>(3 + i)) - Rational(bounds[i] + 2);
  }
  result.verdict = diff.evaluate(point).is_zero() ? IdentityVerdict::identical : IdentityVerdict::inconclusive;
  return result;
}

}  // namespace sylvester
