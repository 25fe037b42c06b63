#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sylvester/certificates.hpp"

namespace sylvester::detail {

/// A polynomial P linear in `var`, given by its values at the two ends of the
/// admissible interval of `var`.
struct Lin {
  std::string name;
  std::string var;
  MultiPoly lower;
  MultiPoly upper;
  MultiPoly at_lower;
  MultiPoly at_upper;
  std::string lower_label;
  std::string upper_label;

  Rational evaluate(const Assignment& x) const;
};

/// P in Lin(x1) on [0, x2].
Lin lin_x1(const std::string& name, const MultiPoly& at_zero, const MultiPoly& at_x2);
/// P in Lin(x3) on [x2, 1].
Lin lin_x3(const std::string& name, const MultiPoly& at_x2, const MultiPoly& at_one);

/// scale * prod num_i^k_i * prod lins / prod den_i^k_i, with each factor
/// expected to be positive on the order simplex.
class XRat {
 public:
  XRat(const Rational& c = Rational(1)) : scale_(c) {}  // NOLINT(google-explicit-constructor)
  XRat(const MultiPoly& p, int power = 1);             // NOLINT(google-explicit-constructor)
  XRat(const Lin& lin) { lins_.push_back(lin); }        // NOLINT(google-explicit-constructor)

  const Rational& scale() const { return scale_; }
  const std::vector<std::pair<MultiPoly, int>>& numerator() const { return num_; }
  const std::vector<std::pair<MultiPoly, int>>& denominator() const { return den_; }
  const std::vector<Lin>& lins() const { return lins_; }

  Rational evaluate(const Assignment& x) const;

  XRat& operator*=(const XRat& o);
  XRat& operator/=(const XRat& o);
  friend XRat operator*(XRat a, const XRat& b) { return a *= b; }
  friend XRat operator/(XRat a, const XRat& b) { return a /= b; }

 private:
  Rational scale_{1};
  std::vector<std::pair<MultiPoly, int>> num_;
  std::vector<std::pair<MultiPoly, int>> den_;
  std::vector<Lin> lins_;
};

std::string point_string(const XPoint& x, int dims);
Assignment assignment_of(const XPoint& x);
/// x_j -> 1 - x_{4-j}.
XPoint mirror(const XPoint& x);
void check_points(std::span<const XPoint> points);
Rational mutated(const std::optional<Mutation>& mutation, const std::string& name, const Rational& value);
PositivityOptions certificate_positivity_options();

/// Collects per-name pass/fail across grid points, keeping first-seen order.
class Accumulator {
 public:
  void record(const std::string& name, bool ok, const std::string& where, bool gating = true) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, entries_.size()).first;
      IdentityEntry e;
      e.name = name;
      e.pass = true;
      e.gating = gating;
      entries_.push_back(e);
    }
    IdentityEntry& e = entries_[it->second];
    ++e.grid_points;
    if (!ok && e.pass) {
      e.pass = false;
      e.detail = "first mismatch at x = " + where;
    }
  }

  std::vector<IdentityEntry> take() { return std::move(entries_); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<IdentityEntry> entries_;
};

/// Positivity of all factors of a table expression, cached by factor text.
class PositivityLedger {
 public:
  explicit PositivityLedger(PositivityOptions options) : options_(options) {}

  PositivityEntry claim(const std::string& name, const XRat& expr) {
    PositivityEntry entry;
    entry.name = name;
    entry.pass = true;
    entry.method = PositivityMethod::monomial_certificate;
    if (expr.scale().sign() <= 0) {
      entry.pass = false;
      entry.detail = "nonpositive constant factor";
    }
    auto absorb = [&](const MultiPoly& p, const std::string& label, bool via_endpoints) {
      const PositivityVerdict& v = verdict(p);
      if (!v.certified()) {
        entry.pass = false;
        entry.method = PositivityMethod::sampled_only;
        entry.detail += (entry.detail.empty() ? "" : "; ") + label + " not certified: " + p.to_string();
        return;
      }
      if ((v.method == PositivityMethod::endpoint_linear || via_endpoints) &&
          entry.method == PositivityMethod::monomial_certificate) {
        entry.method = PositivityMethod::endpoint_linear;
      }
    };
    for (const auto& [p, k] : expr.numerator()) absorb(p, "factor", false);
    for (const auto& [p, k] : expr.denominator()) absorb(p, "denominator factor", false);
    for (const auto& lin : expr.lins()) {
      absorb(lin.at_lower, lin.name + " lower endpoint", true);
      absorb(lin.at_upper, lin.name + " upper endpoint", true);
    }
    return entry;
  }

  PositivityEntry lin_claim(const Lin& lin, bool gating = true) {
    PositivityEntry entry;
    entry.name = lin.name + " endpoints";
    entry.gating = gating;
    const auto& lo = verdict(lin.at_lower);
    const auto& hi = verdict(lin.at_upper);
    entry.pass = lo.certified() && hi.certified();
    entry.method = entry.pass ? PositivityMethod::endpoint_linear : PositivityMethod::sampled_only;
    if (!lo.certified()) entry.detail += lin.name + "(" + lin.lower_label + ") not certified. ";
    if (!hi.certified()) entry.detail += lin.name + "(" + lin.upper_label + ") not certified.";
    return entry;
  }

  const PositivityVerdict& verdict(const MultiPoly& p) {
    const std::string key = p.to_string();
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, positivity_check(p, options_)).first;
    return it->second;
  }

 private:
  PositivityOptions options_;
  std::map<std::string, PositivityVerdict> cache_;
};


}  // namespace sylvester::detail
