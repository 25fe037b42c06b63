#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sylvester/bodies.hpp"
#include "sylvester/rational.hpp"
#include "sylvester/segments.hpp"

namespace sylvester {

/// Strict convex position: every point is a vertex of the convex hull.
/// Duplicates or three collinear hull points give false.
bool is_convex_position(std::span<const std::array<double, 2>> points);
bool is_convex_position(std::span<const Point2> points);

/// Sign of the orientation determinant, exact for double inputs: a filtered
/// floating-point evaluation with a rational fallback.
int robust_orientation(const std::array<double, 2>& a, const std::array<double, 2>& b,
                       const std::array<double, 2>& c);

enum class EstimatorKind { plain, rao_blackwell, segments };
std::string to_string(EstimatorKind kind);

struct EstimateResult {
  EstimatorKind method = EstimatorKind::plain;
  int n = 0;
  double estimate = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
  /// Indicator count; absent for the conditional estimator.
  std::optional<std::uint64_t> hits;
  /// Per-sample variance (p(1-p) estimate for indicators, sample variance of
  /// the conditional probabilities otherwise).
  double variance = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  std::pair<double, double> ci95() const { return {estimate - 1.96 * std_error, estimate + 1.96 * std_error}; }
};

/// Worker w draws from Pcg32(seed, w) and handles a fixed contiguous share of
/// the samples, so the result depends only on (seed, samples, workers).
EstimateResult estimate_Q(const ConvexBody& body, int n, std::uint64_t samples, std::uint64_t seed,
                          unsigned workers = 1);

inline const Rational kLenientTolerance{1, 1000000000};

/// Averages the exact conditional probability given the abscissas of n
/// uniform points (n >= 3). Slices of curved bodies are computed with
/// precision_bits and evaluated with the lenient family probability.
EstimateResult estimate_Q_rb(const ConvexBody& body, int n, std::uint64_t samples, std::uint64_t seed,
                             unsigned workers = 1, unsigned precision_bits = 128);

/// One uniform point per segment; estimates the convex-position probability.
EstimateResult estimate_segments(std::span<const VerticalSegment> segments, std::uint64_t samples,
                                 std::uint64_t seed, unsigned workers = 1);

/// Resolves a worker count: explicit value, else SYLVESTER_WORKERS, else 1.
unsigned resolve_workers(std::optional<unsigned> requested);

}  // namespace sylvester
