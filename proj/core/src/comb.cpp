#include "sylvester/comb.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace sylvester {

namespace {

void check_interior_abscissas(std::span<const Rational> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= Rational(0) || x[i] >= Rational(1)) {
      throw PreconditionError("comb abscissa x_" + std::to_string(i + 1) + " = " + x[i].to_string() +
                              " is not in the open interval (0,1)");
    }
    if (i > 0 && x[i] <= x[i - 1]) {
      throw PreconditionError("comb abscissas are not strictly increasing at index " + std::to_string(i + 1));
    }
  }
}

void check_full_abscissas(std::span<const Rational> x) {
  if (x.size() < 2) throw PreconditionError("need at least the two endpoints x_0 = 0 and x_{m+1} = 1");
  if (x.front() != Rational(0) || x.back() != Rational(1)) {
    throw PreconditionError("endpoint abscissas must be x_0 = 0 and x_{m+1} = 1");
  }
  check_interior_abscissas(x.subspan(1, x.size() - 2));
}

template <typename T>
class PivotRecursion {
 public:
  explicit PivotRecursion(int m) : m_(m) {}

  T solve(int a, int b, const std::vector<Rational>& xs, const std::vector<T>& ls) {
    const int m = b - a - 1;
    if (m == 0) return T(Rational(1));
    if (m == 1) return ls[0];
    auto key = std::make_pair(a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    T sum = T(Rational(0));
    for (int j = 0; j < m; ++j) {
      const Rational& xj = xs[j];
      std::vector<Rational> left_x;
      std::vector<T> left_l;
      for (int k = 0; k < j; ++k) {
        Rational ratio = xs[k] / xj;
        left_x.push_back(ratio);
        left_l.push_back(ls[k] - ls[j] * ratio);
      }
      std::vector<Rational> right_x;
      std::vector<T> right_l;
      const Rational one_minus = Rational(1) - xj;
      for (int k = j + 1; k < m; ++k) {
        right_x.push_back((xs[k] - xj) / one_minus);
        right_l.push_back(ls[k] - ls[j] * ((Rational(1) - xs[k]) / one_minus));
      }
      const int pivot = a + 1 + j;
      T term = ls[j] * solve(a, pivot, left_x, left_l);
      term = term * solve(pivot, b, right_x, right_l);
      sum = sum + term;
    }
    sum = sum / Rational(m);
    memo_.emplace(key, sum);
    return sum;
  }

 private:
  int m_;
  std::map<std::pair<int, int>, T> memo_;
};

const std::vector<Triangulation>& triangulations_of_interval(
    int a, int b, std::map<std::pair<int, int>, std::vector<Triangulation>>& memo) {
  auto key = std::make_pair(a, b);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<Triangulation> out;
  if (b - a < 2) {
    out.push_back({});
  } else {
    for (int j = a + 1; j < b; ++j) {
      const auto left = triangulations_of_interval(a, j, memo);
      const auto right = triangulations_of_interval(j, b, memo);
      for (const auto& l : left) {
        for (const auto& r : right) {
          Triangulation t;
          t.reserve(l.size() + r.size() + 1);
          t.push_back(Triangle{a, j, b});
          t.insert(t.end(), l.begin(), l.end());
          t.insert(t.end(), r.begin(), r.end());
          out.push_back(std::move(t));
        }
      }
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

/// Vertical gap from point s to the chord joining points lo and hi.
template <typename T>
T chord_gap(std::span<const Rational> x, std::span<const T> gamma, int lo, int s, int hi) {
  Rational ratio = (x[s] - x[lo]) / (x[hi] - x[lo]);
  return gamma[s] - (gamma[lo] + (gamma[hi] - gamma[lo]) * ratio);
}

}  // namespace

void Comb::validate() const {
  if (x.size() != l.size()) throw PreconditionError("comb has mismatched abscissa and length counts");
  check_interior_abscissas(x);
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i].sign() < 0) throw PreconditionError("comb tooth length l_" + std::to_string(i + 1) + " is negative");
  }
}

std::vector<Triangulation> enumerate_triangulations(int m) {
  if (m < 0) throw PreconditionError("enumerate_triangulations: m must be >= 0");
  std::map<std::pair<int, int>, std::vector<Triangulation>> memo;
  std::vector<Triangulation> all = triangulations_of_interval(0, m + 1, memo);
  for (auto& t : all) std::sort(t.begin(), t.end());
  std::sort(all.begin(), all.end());
  return all;
}

template <typename T>
T k_rec(std::span<const Rational> x, std::span<const T> l) {
  if (x.size() != l.size()) throw PreconditionError("k_rec: abscissa and length counts differ");
  check_interior_abscissas(x);
  const int m = static_cast<int>(x.size());
  PivotRecursion<T> recursion(m);
  return recursion.solve(0, m + 1, std::vector<Rational>(x.begin(), x.end()), std::vector<T>(l.begin(), l.end()));
}

template <typename T>
T k_star(std::span<const Rational> x, std::span<const T> gamma) {
  if (x.size() != gamma.size()) throw PreconditionError("k_star: abscissa and value counts differ");
  check_full_abscissas(x);
  const int m = static_cast<int>(x.size()) - 2;

  std::map<Triangle, T> weights;
  auto weight = [&](const Triangle& t) -> const T& {
    auto it = weights.find(t);
    if (it == weights.end()) {
      T q = chord_gap<T>(x, gamma, t.first, t.middle, t.last) / Rational(t.last - t.first - 1);
      it = weights.emplace(t, std::move(q)).first;
    }
    return it->second;
  };

  T sum = T(Rational(0));
  for (const auto& tri : enumerate_triangulations(m)) {
    T prod = T(Rational(1));
    for (const auto& t : tri) prod = prod * weight(t);
    sum = sum + prod;
  }
  return sum;
}

template <typename T>
T k_perm(std::span<const Rational> x, std::span<const T> gamma, int max_teeth) {
  if (x.size() != gamma.size()) throw PreconditionError("k_perm: abscissa and value counts differ");
  check_full_abscissas(x);
  const int m = static_cast<int>(x.size()) - 2;
  if (m > max_teeth) {
    throw PreconditionError("k_perm: m = " + std::to_string(m) + " exceeds the cap of " + std::to_string(max_teeth));
  }
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 1);

  std::map<Triangle, T> gaps;
  auto gap = [&](int lo, int s, int hi) -> const T& {
    Triangle key{lo, s, hi};
    auto it = gaps.find(key);
    if (it == gaps.end()) it = gaps.emplace(key, chord_gap<T>(x, gamma, lo, s, hi)).first;
    return it->second;
  };

  T sum = T(Rational(0));
  do {
    std::set<int> placed{0, m + 1};
    T prod = T(Rational(1));
    for (int s : order) {
      auto right = placed.upper_bound(s);
      auto left = std::prev(right);
      prod = prod * gap(*left, s, *right);
      placed.insert(s);
    }
    sum = sum + prod;
  } while (std::next_permutation(order.begin(), order.end()));
  return sum / factorial(static_cast<unsigned>(m));
}

Rational comb_probability(const Comb& comb) {
  comb.validate();
  const std::size_t m = comb.teeth();
  if (m <= 1) return Rational(1);
  Rational prod(1);
  for (std::size_t i = 0; i < m; ++i) {
    if (comb.l[i].is_zero()) {
      throw PreconditionError("comb_probability: tooth " + std::to_string(i + 1) +
                              " has zero length; use K directly for degenerate combs");
    }
    prod *= comb.l[i];
  }
  std::vector<Rational> xs{Rational(0)};
  xs.insert(xs.end(), comb.x.begin(), comb.x.end());
  xs.emplace_back(1);
  std::vector<Rational> tops{Rational(0)};
  tops.insert(tops.end(), comb.l.begin(), comb.l.end());
  tops.emplace_back(0);
  for (int j = 1; j <= static_cast<int>(m); ++j) {
    if (chord_gap<Rational>(std::span<const Rational>(xs), std::span<const Rational>(tops), j - 1, j, j + 1).sign() < 0) {
      throw PreconditionError("comb_probability: tooth top " + std::to_string(j) +
                              " lies below the chord of its neighbours; the tops must form a concave chain");
    }
  }
  return k_rec<Rational>(std::span<const Rational>(comb.x), std::span<const Rational>(comb.l)) / prod;
}

template Rational k_rec<Rational>(std::span<const Rational>, std::span<const Rational>);
template MultiPoly k_rec<MultiPoly>(std::span<const Rational>, std::span<const MultiPoly>);
template Rational k_star<Rational>(std::span<const Rational>, std::span<const Rational>);
template MultiPoly k_star<MultiPoly>(std::span<const Rational>, std::span<const MultiPoly>);
template Rational k_perm<Rational>(std::span<const Rational>, std::span<const Rational>, int);
template MultiPoly k_perm<MultiPoly>(std::span<const Rational>, std::span<const MultiPoly>, int);

}  // namespace sylvester
