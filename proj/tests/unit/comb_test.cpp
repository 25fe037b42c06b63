#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "sylvester/comb.hpp"
#include "sylvester/errors.hpp"
#include "sylvester/monte_carlo.hpp"
#include "test_random.hpp"

namespace sylvester {
namespace {

using testing::increasing_unit;

std::vector<Rational> with_ends(const std::vector<Rational>& interior) {
  std::vector<Rational> out{Rational(0)};
  out.insert(out.end(), interior.begin(), interior.end());
  out.emplace_back(1);
  return out;
}

template <typename T>
std::vector<T> with_zero_ends(const std::vector<T>& interior) {
  std::vector<T> out{T(Rational(0))};
  out.insert(out.end(), interior.begin(), interior.end());
  out.push_back(T(Rational(0)));
  return out;
}

/// Positive concave tops vanishing at 0 and 1: a positive sum of tents.
std::vector<Rational> concave_tops(Pcg32& rng, const std::vector<Rational>& x) {
  std::vector<Rational> l(x.size());
  for (int t = 0; t < 3; ++t) {
    const Rational peak = testing::unit_rational(rng, 13);
    const Rational c = testing::small_rational(rng, 0, 2, 8) + Rational(1, 8);
    for (std::size_t j = 0; j < x.size(); ++j) {
      l[j] += c * min(x[j] / peak, (Rational(1) - x[j]) / (Rational(1) - peak));
    }
  }
  return l;
}

Rational k_star_of(const std::vector<Rational>& x, const std::vector<Rational>& l) {
  const auto full = with_ends(x);
  const auto gamma = with_zero_ends(l);
  return k_star<Rational>(std::span<const Rational>(full), std::span<const Rational>(gamma));
}

Rational k_perm_of(const std::vector<Rational>& x, const std::vector<Rational>& l) {
  const auto full = with_ends(x);
  const auto gamma = with_zero_ends(l);
  return k_perm<Rational>(std::span<const Rational>(full), std::span<const Rational>(gamma));
}

TEST(EnumerateTriangulations, SmallCases) {
  const auto t0 = enumerate_triangulations(0);
  ASSERT_EQ(t0.size(), 1u);
  EXPECT_TRUE(t0[0].empty());

  const auto t1 = enumerate_triangulations(1);
  ASSERT_EQ(t1.size(), 1u);
  EXPECT_EQ(t1[0], (Triangulation{{0, 1, 2}}));

  const auto t2 = enumerate_triangulations(2);
  ASSERT_EQ(t2.size(), 2u);
  EXPECT_EQ(t2[0], (Triangulation{{0, 1, 2}, {0, 2, 3}}));
  EXPECT_EQ(t2[1], (Triangulation{{0, 1, 3}, {1, 2, 3}}));
}

TEST(EnumerateTriangulations, CatalanCountsAndMiddleIndices) {
  const std::vector<std::size_t> catalan{1, 1, 2, 5, 14, 42, 132, 429};
  for (int m = 0; m < static_cast<int>(catalan.size()); ++m) {
    const auto all = enumerate_triangulations(m);
    EXPECT_EQ(all.size(), catalan[static_cast<std::size_t>(m)]);
    for (const auto& t : all) {
      ASSERT_EQ(static_cast<int>(t.size()), m);
      std::vector<int> middles;
      for (const auto& tri : t) middles.push_back(tri.middle);
      std::sort(middles.begin(), middles.end());
      for (int j = 0; j < m; ++j) EXPECT_EQ(middles[static_cast<std::size_t>(j)], j + 1);
    }
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  }
  EXPECT_THROW(enumerate_triangulations(-1), PreconditionError);
}

TEST(KRec, BaseCases) {
  EXPECT_EQ(k_rec(std::vector<Rational>{}, std::vector<Rational>{}), Rational(1));
  EXPECT_EQ(k_rec(std::vector<Rational>{Rational(2, 7)}, std::vector<Rational>{Rational(5, 3)}), Rational(5, 3));
}

TEST(KRec, TwoUnitTeeth) {
  EXPECT_EQ(k_rec({Rational(1, 3), Rational(2, 3)}, std::vector<Rational>{Rational(1), Rational(1)}), Rational(1, 2));
}

TEST(KRec, SymbolicDegreeIsM) {
  const std::vector<Rational> x{Rational(1, 5), Rational(1, 2), Rational(4, 5)};
  std::vector<MultiPoly> l{MultiPoly::variable("l1"), MultiPoly::variable("l2"), MultiPoly::variable("l3")};
  const MultiPoly k = k_rec(x, l);
  EXPECT_EQ(k.total_degree(), 3);
  for (const auto& [e, c] : k.terms()) EXPECT_EQ(e[0] + e[1] + e[2], 3);
}

TEST(KRec, RejectsBadAbscissas) {
  EXPECT_THROW(k_rec({Rational(1, 2), Rational(1, 3)}, std::vector<Rational>{Rational(1), Rational(1)}),
               PreconditionError);
  EXPECT_THROW(k_rec({Rational(0)}, std::vector<Rational>{Rational(1)}), PreconditionError);
  EXPECT_THROW(k_rec({Rational(1)}, std::vector<Rational>{Rational(1)}), PreconditionError);
}

TEST(KStar, TwoUnitTeeth) {
  EXPECT_EQ(k_star_of({Rational(1, 3), Rational(2, 3)}, {Rational(1), Rational(1)}), Rational(1, 2));
}

TEST(KStar, SingleToothWeightHasUnitDivisor) {
  // The lone triangle (0,1,2) has divisor 2 - 0 - 1 = 1, so K_star = c = K_rec.
  const Rational c(7, 3);
  EXPECT_EQ(k_star_of({Rational(2, 5)}, {c}), c);
  EXPECT_EQ(k_rec({Rational(2, 5)}, std::vector<Rational>{c}), c);
}

TEST(KStar, AffineValuesGiveZero) {
  Pcg32 rng(21, 1);
  for (int m = 1; m <= 5; ++m) {
    const auto x = with_ends(increasing_unit(rng, m));
    const Rational a = testing::small_rational(rng, -2, 2), b = testing::small_rational(rng, -2, 2);
    std::vector<Rational> gamma;
    for (const auto& xj : x) gamma.push_back(a + xj * (b - a));
    EXPECT_EQ(k_star<Rational>(std::span<const Rational>(x), std::span<const Rational>(gamma)), Rational(0));
  }
}

TEST(KStar, AffineShiftInvarianceIsAPolynomialIdentity) {
  Pcg32 rng(22, 1);
  const MultiPoly l0 = MultiPoly::variable("l0"), l1 = MultiPoly::variable("l1");
  for (int m = 1; m <= 4; ++m) {
    const auto x = with_ends(increasing_unit(rng, m));
    std::vector<MultiPoly> gamma, shifted;
    std::map<std::string, int> bounds{{"l0", m}, {"l1", m}};
    for (std::size_t j = 0; j < x.size(); ++j) {
      const std::string name = "g" + std::to_string(j);
      gamma.push_back(MultiPoly::variable(name));
      shifted.push_back(gamma.back() + l0 + (l1 - l0) * x[j]);
      bounds[name] = m;
    }
    const MultiPoly lhs = k_star<MultiPoly>(std::span<const Rational>(x), std::span<const MultiPoly>(shifted));
    const MultiPoly rhs = k_star<MultiPoly>(std::span<const Rational>(x), std::span<const MultiPoly>(gamma));
    EXPECT_EQ(lhs, rhs) << "m = " << m;
    if (m <= 2) EXPECT_TRUE(grid_identity_check(lhs, rhs, bounds).identical()) << "m = " << m;
  }
}

TEST(KPerm, TwoUnitTeethAndSingleTooth) {
  EXPECT_EQ(k_perm_of({Rational(1, 3), Rational(2, 3)}, {Rational(1), Rational(1)}), Rational(1, 2));
  EXPECT_EQ(k_perm_of({Rational(3, 4)}, {Rational(5)}), k_star_of({Rational(3, 4)}, {Rational(5)}));
}

TEST(KPerm, CapIsEnforced) {
  Pcg32 rng(23, 1);
  const auto x = with_ends(increasing_unit(rng, 4));
  const std::vector<Rational> g(x.size(), Rational(1));
  EXPECT_THROW(k_perm<Rational>(std::span<const Rational>(x), std::span<const Rational>(g), 3), PreconditionError);
}

TEST(KThreeWay, RandomRationalInputsUpToSixTeeth) {
  Pcg32 rng(24, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(6));
    const auto x = increasing_unit(rng, m);
    std::vector<Rational> l;
    for (int j = 0; j < m; ++j) l.push_back(testing::small_rational(rng, -2, 3));
    const Rational kr = k_rec(x, l);
    EXPECT_EQ(kr, k_star_of(x, l)) << "m = " << m;
    EXPECT_EQ(kr, k_perm_of(x, l)) << "m = " << m;
  }
}

TEST(KThreeWay, SymbolicLengthsUpToThreeTeeth) {
  Pcg32 rng(25, 1);
  for (int m = 0; m <= 3; ++m) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto x = increasing_unit(rng, m);
      std::vector<MultiPoly> l;
      for (int j = 1; j <= m; ++j) l.push_back(MultiPoly::variable("l" + std::to_string(j)));
      const auto full = with_ends(x);
      const auto gamma = with_zero_ends(l);
      const MultiPoly kr = k_rec(x, l);
      EXPECT_EQ(kr, k_star<MultiPoly>(std::span<const Rational>(full), std::span<const MultiPoly>(gamma)));
      EXPECT_EQ(kr, k_perm<MultiPoly>(std::span<const Rational>(full), std::span<const MultiPoly>(gamma)));
    }
  }
}

TEST(CombProbability, SmallCases) {
  EXPECT_EQ(comb_probability(Comb{}), Rational(1));
  EXPECT_EQ(comb_probability(Comb{{Rational(1, 4)}, {Rational(9)}}), Rational(1));
  EXPECT_EQ(comb_probability(Comb{{Rational(1, 3), Rational(2, 3)}, {Rational(1), Rational(1)}}), Rational(1, 2));
}

TEST(CombProbability, RejectsZeroLengthAndNonConcaveTops) {
  EXPECT_THROW(comb_probability(Comb{{Rational(1, 3), Rational(2, 3)}, {Rational(0), Rational(1)}}), PreconditionError);
  EXPECT_THROW(comb_probability(Comb{{Rational(1, 3), Rational(2, 3)}, {Rational(1), Rational(10)}}),
               PreconditionError);
  EXPECT_THROW(comb_probability(Comb{{Rational(1, 3)}, {Rational(-1)}}), PreconditionError);
}

TEST(CombProbability, RangeMirrorAndScaling) {
  Pcg32 rng(26, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 2 + static_cast<int>(rng.below(5));
    Comb c{increasing_unit(rng, m), {}};
    c.l = concave_tops(rng, c.x);
    const Rational p = comb_probability(c);
    EXPECT_GE(p, Rational(0));
    EXPECT_LE(p, Rational(1));

    Comb mirror;
    for (int j = m - 1; j >= 0; --j) {
      mirror.x.push_back(Rational(1) - c.x[static_cast<std::size_t>(j)]);
      mirror.l.push_back(c.l[static_cast<std::size_t>(j)]);
    }
    EXPECT_EQ(comb_probability(mirror), p);

    const Rational t(7, 3);
    Comb scaled = c;
    for (auto& v : scaled.l) v *= t;
    EXPECT_EQ(comb_probability(scaled), p);
    EXPECT_EQ(k_rec(scaled.x, scaled.l), k_rec(c.x, c.l) * t.pow(static_cast<unsigned>(m)));
  }
}

TEST(CombProbability, AgreesWithSegmentMonteCarlo) {
  Pcg32 rng(27, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + static_cast<int>(rng.below(3));
    Comb c{increasing_unit(rng, m, 29), {}};
    c.l = concave_tops(rng, c.x);
    std::vector<VerticalSegment> segs{{Rational(0), Rational(0), Rational(0)}};
    for (int j = 0; j < m; ++j) segs.push_back({c.x[static_cast<std::size_t>(j)], Rational(0), c.l[static_cast<std::size_t>(j)]});
    segs.push_back({Rational(1), Rational(0), Rational(0)});
    const double exact = comb_probability(c).to_double();
    const EstimateResult r = estimate_segments(segs, 20000, 1000 + static_cast<std::uint64_t>(trial));
    const double sigma = std::sqrt(exact * (1 - exact) / 20000.0);
    EXPECT_LE(std::abs(r.estimate - exact), 4 * sigma + 1e-12) << "trial " << trial;
  }
}

}  // namespace
}  // namespace sylvester
