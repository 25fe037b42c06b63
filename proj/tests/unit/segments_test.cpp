#include <gtest/gtest.h>

#include <cmath>

#include "sylvester/bodies.hpp"
#include "sylvester/comb.hpp"
#include "sylvester/errors.hpp"
#include "sylvester/monte_carlo.hpp"
#include "sylvester/segments.hpp"
#include "test_random.hpp"

namespace sylvester {
namespace {

using testing::small_rational;

std::vector<Rational> zeros(std::size_t n) { return std::vector<Rational>(n, Rational(0)); }

std::vector<Rational> with_ends(const std::vector<Rational>& interior) {
  std::vector<Rational> out{Rational(0)};
  out.insert(out.end(), interior.begin(), interior.end());
  out.emplace_back(1);
  return out;
}

struct RandomFamily {
  NormalizedFamily family;
  std::vector<Rational> p;  // slope profile of lambda
};

/// Valid family with lambda built from a nonnegative slope profile and beta = 0.
RandomFamily random_family(Pcg32& rng, int n) {
  RandomFamily r;
  r.family.xbar = with_ends(testing::increasing_unit(rng, n, 31));
  r.family.L0 = small_rational(rng, 0, 1, 8);
  r.family.L1 = small_rational(rng, 0, 1, 8);
  for (int j = 0; j < n; ++j) r.p.push_back(small_rational(rng, 0, 2, 8));
  if (std::all_of(r.p.begin(), r.p.end(), [](const Rational& v) { return v.is_zero(); })) r.p[0] = Rational(1);
  r.family.lambda = profile_to_offsets(r.p, r.family.xbar);
  r.family.beta = zeros(r.family.xbar.size());
  return r;
}

/// beta from a profile q with |q_j| <= p_j; such beta always lies in Compa(lambda).
std::vector<Rational> compa_beta(Pcg32& rng, const RandomFamily& r) {
  std::vector<Rational> q;
  for (const auto& pj : r.p) {
    const Rational t = small_rational(rng, -1, 1, 12);
    q.push_back(pj * t);
  }
  return profile_to_offsets(q, r.family.xbar);
}

TEST(Normalize, UnitSquareSlices) {
  const std::vector<VerticalSegment> segs{{Rational(0), Rational(0), Rational(1)},
                                          {Rational(1, 3), Rational(0), Rational(1)},
                                          {Rational(2, 3), Rational(0), Rational(1)},
                                          {Rational(1), Rational(0), Rational(1)}};
  const NormalizedFamily f = normalize(segs);
  EXPECT_EQ(f.interior_count(), 2);
  EXPECT_EQ(f.L0, Rational(1, 2));
  EXPECT_EQ(f.L1, Rational(1, 2));
  EXPECT_EQ(f.lambda, zeros(4));
  EXPECT_EQ(f.beta, zeros(4));
  EXPECT_EQ(f.xbar, (std::vector<Rational>{Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)}));
}

TEST(Normalize, TriangleSlices) {
  const std::vector<VerticalSegment> segs{{Rational(0), Rational(0), Rational(1)},
                                          {Rational(1, 2), Rational(0), Rational(1, 2)},
                                          {Rational(1), Rational(0), Rational(0)}};
  const NormalizedFamily f = normalize(segs);
  EXPECT_EQ(f.L0, Rational(1, 2));
  EXPECT_EQ(f.L1, Rational(0));
  EXPECT_EQ(f.lambda[1], Rational(0));
  EXPECT_EQ(f.beta[1], Rational(0));
}

TEST(Normalize, TwoSegmentsKeepHalfWidths) {
  const std::vector<VerticalSegment> segs{{Rational(-2), Rational(1), Rational(4)},
                                          {Rational(3), Rational(-1), Rational(0)}};
  const NormalizedFamily f = normalize(segs);
  EXPECT_EQ(f.interior_count(), 0);
  EXPECT_EQ(f.L0, Rational(3, 2));
  EXPECT_EQ(f.L1, Rational(1, 2));
  EXPECT_EQ(f.lambda, zeros(2));
  EXPECT_EQ(f.beta, zeros(2));
}

TEST(Normalize, RejectsDuplicateOrDecreasingAbscissas) {
  const std::vector<VerticalSegment> dup{{Rational(0), Rational(0), Rational(1)},
                                         {Rational(0), Rational(0), Rational(1)},
                                         {Rational(1), Rational(0), Rational(1)}};
  EXPECT_THROW(normalize(dup), PreconditionError);
  const std::vector<VerticalSegment> one{{Rational(0), Rational(0), Rational(1)}};
  EXPECT_THROW(normalize(one), PreconditionError);
}

TEST(FamilySegments, ZeroDefectIsSymmetricTrapezoid) {
  NormalizedFamily f{{Rational(0), Rational(1, 4), Rational(1)}, Rational(1), Rational(3), zeros(3), zeros(3)};
  const auto segs = family_segments(f);
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(segs[1], (VerticalSegment{Rational(1, 4), Rational(-3, 2), Rational(3, 2)}));
  EXPECT_EQ(segs[2], (VerticalSegment{Rational(1), Rational(-3), Rational(3)}));
}

TEST(FamilySegments, ShakenFormWhenBetaEqualsLambda) {
  const std::vector<Rational> lam{Rational(0), Rational(1, 5), Rational(0)};
  NormalizedFamily f{{Rational(0), Rational(1, 2), Rational(1)}, Rational(1), Rational(1), lam, lam};
  const auto segs = family_segments(f);
  EXPECT_EQ(segs[1].y_low, Rational(-1));
  EXPECT_EQ(segs[1].y_high, Rational(1) + Rational(2, 5));
}

TEST(FamilySegments, TwoSegmentsUnchanged) {
  NormalizedFamily f{{Rational(0), Rational(1)}, Rational(1, 3), Rational(2), zeros(2), zeros(2)};
  const auto segs = family_segments(f);
  EXPECT_EQ(segs[0], (VerticalSegment{Rational(0), Rational(-1, 3), Rational(1, 3)}));
  EXPECT_EQ(segs[1], (VerticalSegment{Rational(1), Rational(-2), Rational(2)}));
}

TEST(FamilySegments, RoundTripThroughNormalize) {
  Pcg32 rng(31, 2);
  for (int trial = 0; trial < 40; ++trial) {
    RandomFamily r = random_family(rng, 1 + static_cast<int>(rng.below(4)));
    r.family.beta = compa_beta(rng, r);
    EXPECT_EQ(normalize(family_segments(r.family)), r.family);
  }
}

TEST(SlopeProfile, Examples) {
  const std::vector<Rational> xbar{Rational(0), Rational(1, 2), Rational(1)};
  EXPECT_EQ(slope_profile(zeros(3), xbar), zeros(1));
  EXPECT_EQ(slope_profile({Rational(0), Rational(1, 4), Rational(0)}, xbar), std::vector<Rational>{Rational(1)});
  EXPECT_EQ(profile_to_offsets(std::vector<Rational>{Rational(1)}, xbar),
            (std::vector<Rational>{Rational(0), Rational(1, 4), Rational(0)}));
  EXPECT_EQ(profile_to_offsets(zeros(1), xbar), zeros(3));
}

TEST(SlopeProfile, RoundTripOnRandomProfiles) {
  Pcg32 rng(32, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const auto xbar = with_ends(testing::increasing_unit(rng, n));
    std::vector<Rational> p;
    for (int j = 0; j < n; ++j) p.push_back(small_rational(rng, 0, 3));
    const auto offsets = profile_to_offsets(p, xbar);
    EXPECT_TRUE(offsets.front().is_zero());
    EXPECT_TRUE(offsets.back().is_zero());
    EXPECT_EQ(slope_profile(offsets, xbar), p);
  }
}

TEST(InCompa, Examples) {
  const std::vector<Rational> xbar{Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)};
  const auto lam = profile_to_offsets(std::vector<Rational>{Rational(1), Rational(1)}, xbar);
  EXPECT_TRUE(in_compa(lam, zeros(4), xbar));
  EXPECT_TRUE(in_compa(lam, lam, xbar));
  auto beta = lam;
  beta[1] += Rational(1, 100);
  EXPECT_FALSE(in_compa(lam, beta, xbar));
  beta = lam;
  beta[0] = Rational(1, 100);
  EXPECT_FALSE(in_compa(lam, beta, xbar));
}

TEST(InCompa, PerturbedSlopeWithinBoxIsRejected) {
  // |beta_j| <= lambda_j holds but q_1(beta) exceeds p_1(lambda).
  const std::vector<Rational> xbar{Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  const auto lam = profile_to_offsets(std::vector<Rational>{Rational(0), Rational(4), Rational(0)}, xbar);
  std::vector<Rational> beta = lam;
  beta[1] = Rational(0);
  EXPECT_LE(beta[1].abs(), lam[1]);
  EXPECT_FALSE(in_compa(lam, beta, xbar));
}

TEST(GPolynomial, EmptyAndSingleSegment) {
  const MultiPoly u0 = MultiPoly::variable("u0"), u1 = MultiPoly::variable("u1");
  const std::vector<Rational> none;
  EXPECT_EQ(g_polynomial(none, std::vector<MultiPoly>{}, std::vector<MultiPoly>{}, u0, u1), MultiPoly(Rational(1)));

  const MultiPoly lp = MultiPoly::variable("lp"), lm = MultiPoly::variable("lm");
  const std::vector<Rational> x{Rational(2, 7)};
  EXPECT_EQ(g_polynomial(x, std::vector<MultiPoly>{lp}, std::vector<MultiPoly>{lm}, u0, u1), lp + lm);
}

TEST(GPolynomial, TwoSegmentsHaveLengthDegreeTwo) {
  const MultiPoly u0 = MultiPoly::variable("u0"), u1 = MultiPoly::variable("u1");
  const std::vector<Rational> x{Rational(1, 3), Rational(3, 5)};
  const std::vector<MultiPoly> up{MultiPoly::variable("a1"), MultiPoly::variable("a2")};
  const std::vector<MultiPoly> lo{MultiPoly::variable("b1"), MultiPoly::variable("b2")};
  const MultiPoly g = g_polynomial(x, up, lo, u0, u1);
  const MultiPoly at_zero = g.substitute("u0", MultiPoly()).substitute("u1", MultiPoly());
  EXPECT_EQ(at_zero.total_degree(), 2);
  EXPECT_LE(g.total_degree(), 2);
  const MultiPoly sym = sign_symmetrized_g(x, up, lo, u0, u1);
  EXPECT_EQ(sym.degree("u0") % 2, 0);
  EXPECT_EQ(sym, sym.substitute("u0", -u0));
  EXPECT_EQ(sym, sym.substitute("u1", -u1));
}

TEST(FamilyProbability, TrivialSizes) {
  NormalizedFamily two{{Rational(0), Rational(1)}, Rational(1), Rational(1, 2), zeros(2), zeros(2)};
  EXPECT_EQ(family_probability(two), Rational(1));
  Pcg32 rng(33, 2);
  for (int trial = 0; trial < 10; ++trial) {
    RandomFamily r = random_family(rng, 1);
    r.family.beta = compa_beta(rng, r);
    EXPECT_EQ(family_probability(r.family), Rational(1));
  }
}

TEST(FamilyProbability, RejectsCompaViolationAndZeroWidth) {
  const std::vector<Rational> xbar{Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)};
  const auto lam = profile_to_offsets(std::vector<Rational>{Rational(1), Rational(1)}, xbar);
  auto beta = lam;
  beta[2] += Rational(1, 10);
  EXPECT_THROW(family_probability({xbar, Rational(1), Rational(1), lam, beta}), PreconditionError);
  EXPECT_THROW(family_probability({xbar, Rational(0), Rational(0), zeros(4), zeros(4)}), PreconditionError);
}

TEST(FamilyProbability, UnitSquareFamilyMatchesMonteCarlo) {
  const std::vector<VerticalSegment> segs{{Rational(0), Rational(0), Rational(1)},
                                          {Rational(1, 3), Rational(0), Rational(1)},
                                          {Rational(2, 3), Rational(0), Rational(1)},
                                          {Rational(1), Rational(0), Rational(1)}};
  const double exact = family_probability(normalize(segs)).to_double();
  EXPECT_GT(exact, 0.0);
  EXPECT_LT(exact, 1.0);
  const auto r = estimate_segments(segs, 400000, 7, 2);
  EXPECT_LE(std::abs(r.estimate - exact), 4 * std::sqrt(exact * (1 - exact) / 400000.0));
}

TEST(FamilyProbability, ConcaveCombAgreesWithCombFormula) {
  const Comb c{{Rational(1, 5), Rational(1, 2), Rational(4, 5)}, {Rational(2), Rational(3), Rational(2)}};
  std::vector<VerticalSegment> segs{{Rational(0), Rational(0), Rational(0)}};
  for (std::size_t j = 0; j < c.x.size(); ++j) segs.push_back({c.x[j], Rational(0), c.l[j]});
  segs.push_back({Rational(1), Rational(0), Rational(0)});
  EXPECT_EQ(family_probability(normalize(segs)), comb_probability(c));
}

TEST(FamilyProbability, MonotoneInDefectAndSignSymmetric) {
  Pcg32 rng(34, 2);
  for (int trial = 0; trial < 30; ++trial) {
    RandomFamily r = random_family(rng, 2 + static_cast<int>(rng.below(2)));
    const Rational top = family_probability(r.family);
    NormalizedFamily shaken = r.family;
    shaken.beta = shaken.lambda;
    const Rational bottom = family_probability(shaken);
    NormalizedFamily mid = r.family;
    mid.beta = compa_beta(rng, r);
    const Rational p = family_probability(mid);
    EXPECT_GE(top, p);
    EXPECT_GE(p, bottom);
    EXPECT_GE(bottom, Rational(0));
    EXPECT_LE(top, Rational(1));
    for (auto& b : mid.beta) b = -b;
    EXPECT_EQ(family_probability(mid), p);
  }
}

TEST(FamilyProbability, RandomFamiliesMatchMonteCarlo) {
  Pcg32 rng(35, 2);
  for (int trial = 0; trial < 6; ++trial) {
    RandomFamily r = random_family(rng, 2 + trial % 2);
    r.family.beta = compa_beta(rng, r);
    const double exact = family_probability(r.family).to_double();
    const auto segs = family_segments(r.family);
    const auto est = estimate_segments(segs, 100000, 40 + static_cast<std::uint64_t>(trial), 2);
    EXPECT_LE(std::abs(est.estimate - exact), 4 * std::sqrt(exact * (1 - exact) / 100000.0) + 1e-12)
        << "trial " << trial;
  }
}

TEST(FamilyProbability, LenientClampsOnlySmallViolations) {
  const std::vector<Rational> xbar{Rational(0), Rational(1, 2), Rational(1)};
  const std::vector<Rational> lam{Rational(0), Rational(1, 4), Rational(0)};
  std::vector<Rational> beta{Rational(0), Rational(1, 4) + Rational(1, 1000000000000LL), Rational(0)};
  NormalizedFamily f{xbar, Rational(1), Rational(1), lam, beta};
  EXPECT_EQ(family_probability_lenient(f, kLenientTolerance), Rational(1));
  f.beta[1] = Rational(1, 2);
  EXPECT_THROW(family_probability_lenient(f, kLenientTolerance), PreconditionError);
}

TEST(PolygonSlices, SatisfyCompa) {
  Pcg32 rng(36, 2);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Point2> pts;
    for (int k = 0; k < 8; ++k) pts.push_back({small_rational(rng, -2, 2), small_rational(rng, -2, 2)});
    Polygon poly;
    try {
      poly = convex_hull(pts);
    } catch (const PreconditionError&) {
      continue;
    }
    const auto [lo, hi] = x_range(poly);
    std::vector<Rational> xs{lo};
    for (const auto& v : poly.vertices) {
      if (v.x != lo && v.x != hi) xs.push_back(v.x);
    }
    xs.push_back(lo + (hi - lo) * Rational(1, 7));
    xs.push_back(lo + (hi - lo) * Rational(5, 9));
    xs.push_back(hi);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const NormalizedFamily f = normalize(slices(poly, xs));
    EXPECT_TRUE(f.is_valid());
    EXPECT_TRUE(in_compa(f.lambda, f.beta, f.xbar)) << "trial " << trial;
  }
}

}  // namespace
}  // namespace sylvester
