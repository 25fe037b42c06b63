#include <array>
#include <map>
#include <string>
#include <vector>

#include "certificate_support.hpp"
#include "sylvester/certificates.hpp"

namespace sylvester {

namespace {

using detail::Accumulator;
using detail::Lin;
using detail::PositivityLedger;
using detail::XRat;

MultiPoly X(int i) { return MultiPoly::variable("x" + std::to_string(i)); }
MultiPoly C(long v) { return MultiPoly(Rational(v)); }
/// 1 - x_i
MultiPoly om(int i) { return C(1) - X(i); }
/// x_j - x_i
MultiPoly gap(int j, int i) { return X(j) - X(i); }
MultiPoly sq(const MultiPoly& p) { return p * p; }

// -x2 x3 - x2 + 2 x3, positive since it equals x3 (1 - x2) + (x3 - x2).
MultiPoly w23() { return -(X(2) * X(3)) - X(2) + C(2) * X(3); }
// -x1 x2 - x1 + 2 x2
MultiPoly w12() { return -(X(1) * X(2)) - X(1) + C(2) * X(2); }

struct LinTable {
  std::array<Lin, 9> p;
  Lin p5_printed;
};

const LinTable& lin_table() {
  static const LinTable table = [] {
    LinTable t;
    t.p[0] = detail::lin_x1("P_0", sq(X(2)) + X(2) * X(3) - C(2) * sq(X(2)) * X(3), C(2) * X(2) * om(2) * gap(3, 2));
    t.p[1] = detail::lin_x3("P_1", X(2) * om(2) * w12() * gap(2, 1),
                            om(2) * (sq(X(1) * X(2) - X(1)) + om(1) * gap(2, 1) * X(2)));
    t.p[2] = detail::lin_x3("P_2", X(2) * w12() * gap(2, 1), sq(X(1) * X(2) - X(2)) + sq(X(1) - X(2)));
    t.p[3] = detail::lin_x3("P_3", om(2) * (X(1) * X(2) + X(1) - C(2) * X(2)) * (X(1) - X(2)),
                            X(2) * sq(om(1)) * om(2));
    t.p[4] = detail::lin_x1("P_4", X(2) * (-C(2) * X(2) * X(3) - X(2) + C(3) * X(3)), C(2) * X(2) * om(2) * gap(3, 2));
    // Upper endpoint as reproduced from the extracted D; see p5_printed.
    t.p[5] = detail::lin_x1("P_5", X(2) * w23(), X(2) * om(2) * gap(3, 2));
    t.p[6] = detail::lin_x1("P_6", X(2) * sq(X(3)) * om(2), X(2) * w23() * gap(3, 2));
    t.p[7] = detail::lin_x1("P_7", sq(X(2) * X(3) - X(3)) + sq(X(2) - X(3)), om(2) * w23() * gap(3, 2));
    t.p[8] = detail::lin_x1("P_8", X(2) * (sq(X(2) * X(3) - X(2)) + X(3) * om(2) * gap(3, 2)),
                            X(2) * om(2) * w23() * gap(3, 2));
    t.p5_printed = detail::lin_x1("P_5 (printed)", X(2) * w23(), C(2) * X(2) * om(2) * gap(3, 2));
    return t;
  }();
  return table;
}

struct ConeCoefficient {
  int k;
  int i;
  int j;
  std::string name;
  XRat value;
};

std::string cname(int k, int i, int j) {
  return "c_{" + std::to_string(k) + "," + std::to_string(i) + "," + std::to_string(j) + "}";
}
std::string cname(int i, int j) { return "c_{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

std::vector<ConeCoefficient> d2_coefficients(const Lin& p5) {
  const auto& P = lin_table().p;
  std::vector<ConeCoefficient> c{
      {1, 1, 1, "", XRat(2) * XRat(X(1), 3) * om(3) * om(2) * gap(3, 1) / X(3)},
      {1, 1, 2, "", XRat(P[0]) * om(3) * XRat(X(1), 2) / X(3)},
      {1, 1, 3, "", XRat(2) * XRat(X(1), 2) * X(2) * XRat(om(3), 2) * gap(3, 1) / X(3)},
      {1, 2, 2, "", XRat(2) * P[1] * om(3) * X(1) / (XRat(X(3)) * om(1))},
      {1, 2, 3, "", XRat(2) * P[2] * XRat(om(3), 2) * X(1) / (XRat(X(3)) * om(1))},
      {1, 3, 3, "", XRat(2) * P[3] * XRat(om(3), 2) * X(1) / (XRat(om(2)) * om(1))},
      {2, 1, 1, "", XRat(X(1), 2) * om(3) * P[4] / X(3)},
      {2, 1, 2, "", XRat(2) * om(2) * XRat(X(1), 2) * om(3) / (XRat(X(3)) * om(1)) * p5},
      {2, 1, 3, "", XRat(2) * XRat(X(1), 2) * XRat(om(3), 2) / (XRat(X(3)) * om(1)) * p5},
      {2, 2, 2, "", XRat(om(3)) * X(1) / (XRat(X(3)) * om(1) * gap(3, 1)) * P[0] * p5},
      {2, 2, 3, "", XRat(2) * XRat(om(3), 2) * X(1) * X(2) / (XRat(X(3)) * om(1)) * p5},
      {2, 3, 3, "", XRat(om(3), 2) * X(1) / om(1) * P[4]},
      {3, 1, 1, "", XRat(2) * XRat(X(1), 2) * om(3) / (XRat(X(2)) * X(3)) * P[6]},
      {3, 1, 2, "", XRat(2) * XRat(X(1), 2) * om(3) / (XRat(X(3)) * om(1)) * P[7]},
      {3, 1, 3, "", XRat(2) * XRat(om(3), 2) * om(2) * gap(3, 1) * XRat(X(1), 2) / om(1)},
      {3, 2, 2, "", XRat(2) * om(3) * X(1) / (XRat(X(3)) * om(1)) * P[8]},
      {3, 2, 3, "", XRat(om(3), 2) * X(1) / om(1) * P[0]},
      {3, 3, 3, "", XRat(2) * XRat(om(3), 3) * gap(3, 1) * X(1) * X(2) / om(1)},
  };
  for (auto& e : c) e.name = cname(e.k, e.i, e.j);
  return c;
}

std::vector<ConeCoefficient> d1_coefficients() {
  const auto& P = lin_table().p;
  std::vector<ConeCoefficient> c{
      {0, 1, 1, "", XRat(2) * XRat(X(1), 2) / (XRat(X(2)) * X(3)) * P[6]},
      {0, 1, 2, "", XRat(2) * XRat(X(1), 2) / (XRat(om(1)) * X(3)) * P[7]},
      {0, 1, 3, "", XRat(2) * XRat(X(1), 2) * om(3) * om(2) * gap(3, 1) / om(1)},
      {0, 2, 2, "", XRat(2) * X(1) / (XRat(om(1)) * X(3)) * P[8]},
      {0, 2, 3, "", XRat(om(3)) * X(1) / om(1) * P[0]},
      {0, 3, 3, "", XRat(2) * X(1) * X(2) * XRat(om(3), 2) * gap(3, 1) / om(1)},
  };
  for (auto& e : c) e.name = cname(e.i, e.j);
  return c;
}

MultiPoly pvar(int i) { return MultiPoly::variable("p" + std::to_string(i)); }
MultiPoly qvar(int i) { return MultiPoly::variable("q" + std::to_string(i)); }

/// Coefficient of p_k q_i q_j (k = 0: none) with every other p, q at exponent 0.
Rational pqq_coefficient(const MultiPoly& d, int k, int i, int j) {
  std::map<std::string, int> mono;
  for (int t = 1; t <= 3; ++t) {
    mono["p" + std::to_string(t)] = 0;
    mono["q" + std::to_string(t)] = 0;
  }
  if (k > 0) mono["p" + std::to_string(k)] += 1;
  mono["q" + std::to_string(i)] += 1;
  mono["q" + std::to_string(j)] += 1;
  return d.coefficient(mono).constant_term();
}

std::string where_of(const XPoint& x) { return detail::point_string(x, 3); }

std::vector<Rational> as_vector(const XPoint& x) { return {x[0], x[1], x[2]}; }

MultiPoly flip_beta(const MultiPoly& d, int n) {
  std::map<std::string, MultiPoly> s;
  for (int j = 1; j <= n; ++j) s["beta" + std::to_string(j)] = -MultiPoly::variable("beta" + std::to_string(j));
  return d.substitute(s);
}

void record_structure(Accumulator& acc, const std::string& kind, const MultiPoly& d, const std::string& where) {
  acc.record(kind + ": independent of a and b", d.degree("a") == 0 && d.degree("b") == 0, where);
  acc.record(kind + ": degree <= 1 in l0 and l1 with no l0*l1 term",
             d.degree("l0") <= 1 && d.degree("l1") <= 1 && d.coefficient({{"l0", 1}, {"l1", 1}}).is_zero(), where);
  acc.record(kind + ": total degree <= 5", d.total_degree() <= 5, where);
  acc.record(kind + ": even in beta", d == flip_beta(d, 3), where);
}

struct Split {
  MultiPoly d0;
  MultiPoly d1;
  MultiPoly d2;
};

Split split_l(const MultiPoly& d) {
  return {d.coefficient({{"l0", 1}, {"l1", 0}}), d.coefficient({{"l0", 0}, {"l1", 1}}),
          d.coefficient({{"l0", 0}, {"l1", 0}})};
}

// ---- quadratic forms ---------------------------------------------------------

using Mat3 = std::array<std::array<Rational, 3>, 3>;

Mat3 quadratic_matrix(const MultiPoly& f) {
  Mat3 m;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const Rational c = pqq_coefficient(f, 0, i, j);
      m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = i == j ? c : c / Rational(2);
    }
  }
  return m;
}

MultiPoly quadratic_poly(const Mat3& m) {
  MultiPoly out;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      out += qvar(i) * qvar(j) * m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    }
  }
  return out;
}

Matrix to_matrix(const Mat3& m) {
  Matrix out(3, std::vector<Rational>(3));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out[i][j] = m[i][j];
  }
  return out;
}

/// Symmetric 3x3 table of claimed entries (upper triangle given).
struct SymTable {
  std::string label;
  std::array<std::array<XRat, 3>, 3> e;

  Mat3 evaluate(const Assignment& x, const std::optional<Mutation>& mutation) const {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i; j < 3; ++j) {
        m[i][j] = detail::mutated(mutation, entry_name(i, j), e[i][j].evaluate(x));
        m[j][i] = m[i][j];
      }
    }
    return m;
  }

  std::string entry_name(std::size_t i, std::size_t j) const {
    return label + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
  }
};

SymTable f1_table() {
  const auto& P = lin_table().p;
  SymTable t;
  t.label = "N";
  t.e[0][0] = XRat(2) * X(1) * om(2);
  t.e[0][1] = XRat(P[0]) / gap(3, 1);
  t.e[0][2] = XRat(2) * om(3) * X(2);
  t.e[1][1] = XRat(2) * P[1] / (XRat(gap(3, 1)) * X(1) * om(1));
  t.e[1][2] = XRat(2) * om(3) * P[2] / (XRat(gap(3, 1)) * X(1) * om(1));
  t.e[2][2] = XRat(2) * P[3] * om(3) * X(3) / (XRat(gap(3, 1)) * X(1) * om(2) * om(1));
  return t;
}

XRat f1_scale() { return XRat(4) * om(3) * gap(3, 1) * X(1) / X(3); }

SymTable m1_table() {
  const auto& P = lin_table().p;
  SymTable t;
  t.label = "N^(1)";
  t.e[0][0] = XRat(2) * XRat(X(1), 3) * gap(3, 1) * om(2) / om(3);
  t.e[0][1] = XRat(P[0]) * XRat(X(1), 2) / om(3);
  t.e[0][2] = XRat(2) * XRat(X(1), 2) * X(2) * gap(3, 1);
  t.e[1][1] = XRat(2) * P[1] * X(1) / (XRat(om(3)) * om(1));
  t.e[1][2] = XRat(2) * P[2] * X(1) / om(1);
  t.e[2][2] = XRat(2) * P[3] * X(1) * X(3) / (XRat(om(2)) * om(1));
  return t;
}

XRat m1_scale() { return XRat(X(3)) / (XRat(4) * XRat(om(3), 2)); }

SymTable m2_table(const Lin& p5, const std::string& label) {
  const auto& P = lin_table().p;
  SymTable t;
  t.label = label;
  t.e[0][0] = XRat(4) * P[4] * XRat(X(1), 2) * om(3) / X(3);
  t.e[0][1] = XRat(8) * XRat(X(1), 2) * om(3) * om(2) * p5 / (XRat(om(1)) * X(3));
  t.e[0][2] = XRat(8) * XRat(X(1), 2) * XRat(om(3), 2) * p5 / (XRat(om(1)) * X(3));
  t.e[1][1] = XRat(4) * om(3) * X(1) * P[0] * p5 / (XRat(X(3)) * om(1) * gap(3, 1));
  t.e[1][2] = XRat(8) * X(1) * XRat(om(3), 2) * X(2) * p5 / (XRat(om(1)) * X(3));
  t.e[2][2] = XRat(4) * P[4] * XRat(om(3), 2) * X(1) / om(1);
  return t;
}

struct MinorClaim {
  std::string name;
  std::size_t order;
  XRat value;
  bool gating = true;
};

Lin g_f1_second() {
  return detail::lin_x1("g", (-C(2) * X(2) * X(3) + X(2) + X(3)) * (-C(2) * X(2) * X(3) - X(2) + C(3) * X(3)),
                        om(2) * (-C(4) * X(2) * X(3) + X(2) + C(3) * X(3)) * gap(3, 2));
}

std::vector<MinorClaim> f1_minors() {
  Lin g3 = detail::lin_x3("g", C(2) * om(2) * (C(3) * X(1) * X(2) - X(1) - C(2) * X(2)) * (X(1) - X(2)),
                          C(6) * X(2) * sq(om(1)) * om(2));
  return {
      {"det N[1] = 2 (1-x2) x1", 1, XRat(2) * om(2) * X(1)},
      {"det N[2] = (x1-x2)^2 / ((x3-x1)^2 (1-x1)) g(x1)", 2,
       XRat(gap(2, 1), 2) / (XRat(gap(3, 1), 2) * om(1)) * g_f1_second()},
      {"det N[3] = x3 (1-x3) (x2-x1)^2 (x3-x2)^2 / ((x3-x1)^3 (1-x2) (1-x1) x1) g(x3)", 3,
       XRat(X(3)) * om(3) * XRat(gap(2, 1), 2) * XRat(gap(3, 2), 2) /
           (XRat(gap(3, 1), 3) * om(2) * om(1) * X(1)) * g3},
  };
}

std::vector<MinorClaim> m1_minors() {
  Lin g2 = detail::lin_x1("g", (C(2) * X(2) * X(3) - X(2) - X(3)) * (C(2) * X(2) * X(3) + X(2) - C(3) * X(3)),
                          om(2) * (C(4) * X(2) * X(3) - X(2) - C(3) * X(3)) * (X(2) - X(3)));
  Lin g3 = detail::lin_x3("g", om(2) * (-C(3) * X(1) * X(2) + X(1) + C(2) * X(2)) * gap(2, 1),
                          C(3) * X(2) * sq(om(1)) * om(2));
  const XRat second = XRat(gap(2, 1), 2) / (XRat(gap(3, 1), 2) * om(1)) * g2;
  const XRat third = XRat(2) * XRat(gap(2, 1), 2) * XRat(gap(3, 2), 2) * X(3) * om(3) /
                     (XRat(gap(3, 1), 3) * X(1) * om(1) * om(2)) * g3;
  // r = x1^2 (x3 - x1) / (1 - x3): N^(1) = r N.
  const XRat r = XRat(X(1), 2) * gap(3, 1) / om(3);
  return {
      {"det N^(1)[1] = 2 x1^3 (1-x2) (x3-x1) / (1-x3)", 1, XRat(2) * XRat(X(1), 3) * om(2) * gap(3, 1) / om(3)},
      {"det N^(1)[2] as printed: (x1-x2)^2 / ((x3-x1)^2 (1-x1)) g(x1)", 2, second, false},
      {"det N^(1)[3] as printed: 2 (x1-x2)^2 (x2-x3)^2 x3 (x3-1) / ((x1-x3)^3 x1 (x1-1) (x2-1)) g(x3)", 3, third,
       false},
      {"det N^(1)[2] = r^2 (x1-x2)^2 / ((x3-x1)^2 (1-x1)) g(x1), r = x1^2 (x3-x1)/(1-x3)", 2, r * r * second},
      {"det N^(1)[3] = r^3 2 (x1-x2)^2 (x2-x3)^2 x3 (1-x3) / ((x3-x1)^3 x1 (1-x1) (1-x2)) g(x3)", 3,
       r * r * r * third},
  };
}

std::vector<MinorClaim> m2_minors() {
  const auto& P = lin_table().p;
  Lin g1 = g_f1_second();
  g1.name = "g_1";
  return {
      {"det M^(2)[1] = 4 x1^2 (1-x3) / x3 P_4(x1)", 1, XRat(4) * XRat(X(1), 2) * om(3) / X(3) * P[4]},
      {"det M^(2)[2] = 16 (1-x3)^2 x1^3 (x2-x1)^2 / (x3^2 (x3-x1) (1-x1)^2) g_1(x1) P_5(x1)", 2,
       XRat(16) * XRat(om(3), 2) * XRat(X(1), 3) * XRat(gap(2, 1), 2) / (XRat(X(3), 2) * gap(3, 1) * XRat(om(1), 2)) *
           g1 * P[5]},
      {"det M^(2)[3] = 192 (x2-x1)^2 (x2-x3)^2 x1^4 (x3-1)^4 / (x3^2 (1-x1)^2 (x3-x1)) P_4(x1) P_5(x1)", 3,
       XRat(192) * XRat(gap(2, 1), 2) * XRat(gap(3, 2), 2) * XRat(X(1), 4) * XRat(om(3), 4) /
           (XRat(X(3), 2) * XRat(om(1), 2) * gap(3, 1)) * P[4] * P[5]},
  };
}

void record_minors(Accumulator& acc, const std::vector<MinorClaim>& claims, const Mat3& m, const Assignment& xa,
                   const std::optional<Mutation>& mutation, const std::string& where) {
  const auto minors = leading_principal_minors(to_matrix(m));
  for (const auto& c : claims) {
    const Rational rhs = detail::mutated(mutation, c.name, c.value.evaluate(xa));
    acc.record(c.name, minors[c.order - 1] == rhs, where, c.gating);
  }
}

MultiPoly f1_display(const XPoint& x, const Rational& scale) {
  const Rational one(1);
  const Rational x1 = x[0], x2 = x[1], x3 = x[2];
  const MultiPoly b1 = MultiPoly::variable("beta1");
  const MultiPoly b2 = MultiPoly::variable("beta2");
  const MultiPoly b3 = MultiPoly::variable("beta3");
  MultiPoly f = (b1 * b2 * (x3 - one) + b1 * b3 * x2 + b2 * b3 * x1) -
                b3 * (b3 * (x1 * x2) + b1 * x2 + b2 * x1 - b3 * x2) / x3 + b1 * b1 * ((one - x3) * (one - x2) / (one - x1)) +
                b2 * b2 * ((one - x3) * (one - x1) / (one - x2));
  return f * scale;
}

MultiPoly f3_display(const XPoint& x, const Rational& scale) {
  const Rational one(1), two(2);
  const Rational x1 = x[0], x2 = x[1], x3 = x[2];
  const MultiPoly b1 = MultiPoly::variable("beta1");
  const MultiPoly b2 = MultiPoly::variable("beta2");
  const MultiPoly b3 = MultiPoly::variable("beta3");
  const MultiPoly l1 = MultiPoly::variable("lambda1");
  const MultiPoly l2 = MultiPoly::variable("lambda2");
  const MultiPoly l3 = MultiPoly::variable("lambda3");
  MultiPoly f = b1 * (b1 * l3 + b3 * l1 * two - b1 * l1) + (b2 * b2 * x1 * (l2 * x3 - l2 + l3)) * two / x2 +
                (b1 - b3) * (b1 - b3) * (l1 - l3) * ((x1 - x2) / (x1 - x3)) -
                b3 * (b1 * l3 * (two * x2) + b2 * l3 * (two * x1) - b3 * l1 * x2 - b3 * l2 * x1 + b3 * l3 * (x1 - x2)) / x3 +
                b2 * b2 * (l1 - l2 * x1) * (two * (one - x3) / (one - x2)) +
                b1 *
                    (b1 * (l1 * x2 - l1 * x3 + l2 * x3 + l3 * x2 - l2 - l3) + b2 * l1 * (two * (one - x3)) +
                     b3 * l1 * (two * (one - x2))) /
                    (x1 - one);
  return f * scale;
}

/// Renames index j -> 4 - j for the listed variable stems.
MultiPoly reverse_indices(const MultiPoly& f, const std::vector<std::string>& stems) {
  std::map<std::string, MultiPoly> s;
  for (const auto& stem : stems) {
    s[stem + "1"] = MultiPoly::variable(stem + "3");
    s[stem + "3"] = MultiPoly::variable(stem + "1");
  }
  return f.substitute(s);
}

Mat3 m_of_p(const MultiPoly& f3q, int i) {
  std::map<std::string, int> mono{{"p1", 0}, {"p2", 0}, {"p3", 0}};
  mono["p" + std::to_string(i)] = 1;
  return quadratic_matrix(f3q.coefficient(mono));
}

Mat3 scaled(const Mat3& m, const Rational& s) {
  Mat3 out = m;
  for (auto& row : out) {
    for (auto& v : row) v *= s;
  }
  return out;
}

void record_entries(Accumulator& acc, const SymTable& table, const Mat3& machine, const Mat3& claimed,
                    const std::string& where, bool gating = true) {
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      acc.record(table.entry_name(i, j), machine[i][j] == claimed[i][j], where, gating);
    }
  }
}

}  // namespace

CertificateReport verify_n5_cone(std::span<const XPoint> points, const std::optional<Mutation>& mutation) {
  detail::check_points(points);
  const auto& lins = lin_table();
  const auto d2 = d2_coefficients(lins.p[5]);
  const auto d2_printed = d2_coefficients(lins.p5_printed);
  const auto d1 = d1_coefficients();

  Accumulator acc;
  for (const auto& x : points) {
    const std::string where = where_of(x);
    const Assignment xa = detail::assignment_of(x);
    const Assignment xm = detail::assignment_of(detail::mirror(x));
    const auto xs = as_vector(x);
    const MultiPoly d = symbolic_difference(3, xs, DifferenceKind::minoration);
    record_structure(acc, "minoration", d, where);

    const MultiPoly dpq = to_slope_variables(d, xs);
    const Split parts = split_l(dpq);
    const MultiPoly l0 = MultiPoly::variable("l0");
    const MultiPoly l1 = MultiPoly::variable("l1");
    acc.record("D = 4 l0 D0 + 4 l1 D1 + 4 D2", dpq == l0 * parts.d0 + l1 * parts.d1 + parts.d2, where);
    const MultiPoly D0 = parts.d0 / Rational(4);
    const MultiPoly D1 = parts.d1 / Rational(4);
    const MultiPoly D2 = parts.d2 / Rational(4);

    std::map<std::array<int, 3>, Rational> c3;
    for (const auto& c : d2) {
      const Rational claimed = detail::mutated(mutation, c.name, c.value.evaluate(xa));
      const Rational extracted = -pqq_coefficient(D2, c.k, c.i, c.j) / Rational(c.i == c.j ? 1 : 2);
      acc.record(c.name, claimed == extracted, where);
      c3[{c.k, c.i, c.j}] = claimed;
    }
    MultiPoly rebuilt2;
    for (int k = 1; k <= 3; ++k) {
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
          const Rational& c = c3.at({k, std::min(i, j), std::max(i, j)});
          rebuilt2 += pvar(k) * (pvar(i) + qvar(i)) * (pvar(j) - qvar(j)) * c;
        }
      }
    }
    acc.record("D2 = sum c_{k,i,j} p_k (p_i+q_i) (p_j-q_j)", D2 == rebuilt2, where);

    bool printed_ok = true;
    for (const auto& c : d2_printed) {
      if (c.k != 2 || c.name == cname(2, 1, 1) || c.name == cname(2, 3, 3)) continue;
      const Rational extracted = -pqq_coefficient(D2, c.k, c.i, c.j) / Rational(c.i == c.j ? 1 : 2);
      printed_ok = printed_ok && c.value.evaluate(xa) == extracted;
    }
    acc.record("c_{2,1,2}, c_{2,1,3}, c_{2,2,2}, c_{2,2,3} with printed P_5(x2) = 2 x2 (1-x2) (x3-x2)", printed_ok,
               where, false);

    std::map<std::array<int, 2>, Rational> c2, c2_mirror;
    for (const auto& c : d1) {
      const Rational claimed = detail::mutated(mutation, c.name, c.value.evaluate(xa));
      const Rational extracted = -pqq_coefficient(D1, 0, c.i, c.j) / Rational(c.i == c.j ? 1 : 2);
      acc.record(c.name, claimed == extracted, where);
      c2[{c.i, c.j}] = claimed;
      c2_mirror[{c.i, c.j}] = c.value.evaluate(xm);
    }
    MultiPoly rebuilt1, rebuilt0;
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        const std::array<int, 2> key{std::min(i, j), std::max(i, j)};
        rebuilt1 += (pvar(i) + qvar(i)) * (pvar(j) - qvar(j)) * c2.at(key);
        rebuilt0 += (pvar(4 - i) + qvar(4 - i)) * (pvar(4 - j) - qvar(4 - j)) * c2_mirror.at(key);
      }
    }
    acc.record("D1 = sum c_{i,j} (p_i+q_i) (p_j-q_j)", D1 == rebuilt1, where);
    acc.record("D0 = D1 decomposition under x_j -> 1 - x_{4-j}, index j -> 4 - j", D0 == rebuilt0, where);
  }

  CertificateReport report;
  report.name = "n5-cone";
  report.identity_checks = acc.take();
  PositivityLedger ledger(detail::certificate_positivity_options());
  for (const auto& lin : lins.p) report.positivity_checks.push_back(ledger.lin_claim(lin));
  report.positivity_checks.push_back(ledger.lin_claim(lins.p5_printed, false));
  for (const auto& c : d2) report.positivity_checks.push_back(ledger.claim(c.name + " > 0", c.value));
  for (const auto& c : d1) report.positivity_checks.push_back(ledger.claim(c.name + " > 0", c.value));
  return report;
}

CertificateReport verify_n5_quadratic(std::span<const XPoint> points, const std::optional<Mutation>& mutation) {
  detail::check_points(points);
  const auto n_table = f1_table();
  const auto n1_table = m1_table();
  const auto m2 = m2_table(lin_table().p[5], "M^(2)");
  const auto m2_printed = m2_table(lin_table().p5_printed, "M^(2) with printed P_5");
  const auto claims_f1 = f1_minors();
  const auto claims_m1 = m1_minors();
  const auto claims_m2 = m2_minors();

  Accumulator acc;
  for (const auto& x : points) {
    const std::string where = where_of(x);
    const Assignment xa = detail::assignment_of(x);
    const XPoint xmir = detail::mirror(x);
    const auto xs = as_vector(x);
    const auto xms = as_vector(xmir);

    const MultiPoly d = symbolic_difference(3, xs, DifferenceKind::majoration);
    record_structure(acc, "majoration", d, where);
    const Split f = split_l(d);
    acc.record("f1, f2 free of lambda; f3 linear in lambda",
               f.d0.total_degree({"lambda1", "lambda2", "lambda3"}) == 0 &&
                   f.d1.total_degree({"lambda1", "lambda2", "lambda3"}) == 0 &&
                   f.d2.total_degree({"lambda1", "lambda2", "lambda3"}) <= 1,
               where);
    acc.record("f1 display", f.d0 == f1_display(x, detail::mutated(mutation, "f1", Rational(8))), where);
    acc.record("f3 display", f.d2 == f3_display(x, detail::mutated(mutation, "f3", Rational(4))), where);

    const MultiPoly dm = symbolic_difference(3, xms, DifferenceKind::majoration);
    const Split fm = split_l(dm);
    acc.record("f2 = f1 under x_j -> 1 - x_{4-j}, index j -> 4 - j",
               f.d1 == reverse_indices(fm.d0, {"beta", "lambda"}), where);

    // f1 as a quadratic form in q.
    const MultiPoly f1q = to_slope_variables(f.d0, xs);
    const Mat3 m = quadratic_matrix(f1q);
    acc.record("f1 = q^T M q", f1q == quadratic_poly(m), where);
    const Mat3 n_claimed = n_table.evaluate(xa, mutation);
    record_entries(acc, n_table, m, scaled(n_claimed, f1_scale().evaluate(xa)), where);
    record_minors(acc, claims_f1, n_claimed, xa, mutation, where);

    // f3 = sum_i p_i q^T M^(i) q.
    const MultiPoly f3q = to_slope_variables(f.d2, xs);
    std::array<Mat3, 3> mi{m_of_p(f3q, 1), m_of_p(f3q, 2), m_of_p(f3q, 3)};
    MultiPoly rebuilt;
    for (int i = 1; i <= 3; ++i) rebuilt += pvar(i) * quadratic_poly(mi[static_cast<std::size_t>(i - 1)]);
    acc.record("f3 = sum_i p_i q^T M^(i) q", f3q == rebuilt, where);

    const Mat3 n1_claimed = n1_table.evaluate(xa, mutation);
    record_entries(acc, n1_table, scaled(mi[0], m1_scale().evaluate(xa)), n1_claimed, where);
    record_minors(acc, claims_m1, n1_claimed, xa, mutation, where);

    const Mat3 m2_claimed = m2.evaluate(xa, mutation);
    record_entries(acc, m2, mi[1], m2_claimed, where);
    record_entries(acc, m2_printed, mi[1], m2_printed.evaluate(xa, std::nullopt), where, false);
    record_minors(acc, claims_m2, m2_claimed, xa, mutation, where);

    const MultiPoly f3m = to_slope_variables(fm.d2, xms);
    const Mat3 m1_mirror = m_of_p(f3m, 1);
    Mat3 reversed;
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) reversed[a][b] = m1_mirror[2 - a][2 - b];
    }
    acc.record("M^(3) = M^(1) under x_j -> 1 - x_{4-j}, index j -> 4 - j", mi[2] == reversed, where);
  }

  CertificateReport report;
  report.name = "n5-quadratic";
  report.identity_checks = acc.take();
  bool mirror_ok = true;
  for (const auto& e : report.identity_checks) {
    if (e.name.rfind("M^(3)", 0) == 0) mirror_ok = mirror_ok && e.pass;
  }

  PositivityLedger ledger(detail::certificate_positivity_options());
  auto definiteness = [&](const std::string& name, const std::vector<MinorClaim>& claims,
                          std::optional<XRat> scale) {
    PositivityEntry pd;
    pd.name = name;
    pd.pass = true;
    pd.method = PositivityMethod::monomial_certificate;
    auto fold = [&](const PositivityEntry& e) {
      report.positivity_checks.push_back(e);
      if (!e.gating) return;
      pd.pass = pd.pass && e.pass;
      if (!e.pass) {
        pd.method = PositivityMethod::sampled_only;
      } else if (e.method == PositivityMethod::endpoint_linear && pd.method == PositivityMethod::monomial_certificate) {
        pd.method = PositivityMethod::endpoint_linear;
      }
    };
    if (scale) fold(ledger.claim(name + ": scale factor > 0", *scale));
    for (const auto& c : claims) {
      PositivityEntry e = ledger.claim(c.name + " > 0", c.value);
      e.gating = c.gating;
      fold(e);
    }
    report.positivity_checks.push_back(pd);
    return pd;
  };
  definiteness("M positive definite (f1)", claims_f1, f1_scale());
  const PositivityEntry pd1 = definiteness("M^(1) positive definite", claims_m1, m1_scale());
  definiteness("M^(2) positive definite", claims_m2, std::nullopt);
  PositivityEntry pd3;
  pd3.name = "M^(3) positive definite (mirror of M^(1))";
  pd3.pass = pd1.pass && mirror_ok;
  pd3.method = pd3.pass ? pd1.method : PositivityMethod::sampled_only;
  report.positivity_checks.push_back(pd3);
  return report;
}

}  // namespace sylvester
