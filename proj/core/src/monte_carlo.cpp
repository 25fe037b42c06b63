#include "sylvester/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "sylvester/errors.hpp"

namespace sylvester {

namespace {

using P = std::array<double, 2>;

bool lex_less(const P& a, const P& b) { return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]); }

template <typename Pt, typename Orient, typename Less>
bool strict_hull_has_all(std::vector<Pt> pts, Orient orient, Less less) {
  const std::size_t n = pts.size();
  if (n < 3) return false;
  std::sort(pts.begin(), pts.end(), less);
  for (std::size_t i = 1; i < n; ++i) {
    if (!less(pts[i - 1], pts[i])) return false;
  }
  std::vector<Pt> hull(2 * n);
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  return k - 1 == n;
}

struct Share {
  std::uint64_t count;
};

Share share_of(std::uint64_t samples, unsigned workers, unsigned w) {
  const std::uint64_t base = samples / workers;
  const std::uint64_t extra = samples % workers;
  return {base + (w < extra ? 1 : 0)};
}

void run_workers(unsigned workers, const std::function<void(unsigned)>& body) {
  if (workers <= 1) {
    body(0);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void check_common(std::uint64_t samples, unsigned workers) {
  if (samples == 0) throw PreconditionError("samples must be positive");
  if (workers == 0) throw PreconditionError("workers must be positive");
}

/// Running mean and sum of squared deviations, combined in worker order.
struct Moments {
  std::uint64_t n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

EstimateResult indicator_result(EstimatorKind kind, std::uint64_t hits, std::uint64_t samples, std::uint64_t seed,
                                unsigned workers) {
  EstimateResult r;
  r.method = kind;
  r.samples = samples;
  r.hits = hits;
  r.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  r.variance = r.estimate * (1.0 - r.estimate);
  r.std_error = std::sqrt(r.variance / static_cast<double>(samples));
  r.seed = seed;
  r.workers = workers;
  return r;
}

}  // namespace

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::plain:
      return "plain";
    case EstimatorKind::rao_blackwell:
      return "rao-blackwell";
    case EstimatorKind::segments:
      return "segments";
  }
  return "unknown";
}

int robust_orientation(const P& a, const P& b, const P& c) {
  constexpr double eps = std::numeric_limits<double>::epsilon() / 2;
  constexpr double errbound_a = (3.0 + 16.0 * eps) * eps;
  const double detleft = (a[0] - c[0]) * (b[1] - c[1]);
  const double detright = (a[1] - c[1]) * (b[0] - c[0]);
  const double det = detleft - detright;
  auto sgn = [](double v) { return (v > 0) - (v < 0); };
  double detsum;
  if (detleft > 0) {
    if (detright <= 0) return sgn(det);
    detsum = detleft + detright;
  } else if (detleft < 0) {
    if (detright >= 0) return sgn(det);
    detsum = -detleft - detright;
  } else {
    return sgn(det);
  }
  const double bound = errbound_a * detsum;
  if (det >= bound || -det >= bound) return sgn(det);
  const Point2 pa{Rational::from_double(a[0]), Rational::from_double(a[1])};
  const Point2 pb{Rational::from_double(b[0]), Rational::from_double(b[1])};
  const Point2 pc{Rational::from_double(c[0]), Rational::from_double(c[1])};
  return orientation(pa, pb, pc);
}

bool is_convex_position(std::span<const P> points) {
  for (const auto& p : points) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw PreconditionError("is_convex_position: non-finite input");
  }
  return strict_hull_has_all(std::vector<P>(points.begin(), points.end()), robust_orientation, lex_less);
}

bool is_convex_position(std::span<const Point2> points) {
  auto less = [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); };
  return strict_hull_has_all(std::vector<Point2>(points.begin(), points.end()), orientation, less);
}

EstimateResult estimate_Q(const ConvexBody& body, int n, std::uint64_t samples, std::uint64_t seed,
                          unsigned workers) {
  if (n < 3) throw PreconditionError("estimate_Q: n must be >= 3");
  check_common(samples, workers);
  validate(body);
  const BodySampler sampler(body);
  std::vector<std::uint64_t> hits(workers, 0);
  run_workers(workers, [&](unsigned w) {
    Pcg32 rng(seed, w);
    std::vector<P> pts(static_cast<std::size_t>(n));
    const Share s = share_of(samples, workers, w);
    std::uint64_t h = 0;
    for (std::uint64_t i = 0; i < s.count; ++i) {
      for (auto& p : pts) p = sampler.sample(rng);
      if (is_convex_position(pts)) ++h;
    }
    hits[w] = h;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  EstimateResult r = indicator_result(EstimatorKind::plain, total, samples, seed, workers);
  r.n = n;
  return r;
}

EstimateResult estimate_Q_rb(const ConvexBody& body, int n, std::uint64_t samples, std::uint64_t seed,
                             unsigned workers, unsigned precision_bits) {
  if (n < 3) throw PreconditionError("estimate_Q_rb: n must be >= 3");
  check_common(samples, workers);
  validate(body);
  const BodySampler sampler(body);
  const auto [xmin, xmax] = x_range(body, precision_bits);
  std::vector<Moments> moments(workers);
  run_workers(workers, [&](unsigned w) {
    Pcg32 rng(seed, w);
    const Share s = share_of(samples, workers, w);
    std::vector<Rational> xs(static_cast<std::size_t>(n));
    Moments m;
    for (std::uint64_t i = 0; i < s.count; ++i) {
      for (;;) {
        for (auto& x : xs) {
          const auto p = sampler.sample(rng);
          x = std::clamp(Rational::from_double(p[0]), xmin, xmax);
        }
        std::sort(xs.begin(), xs.end());
        if (std::adjacent_find(xs.begin(), xs.end()) == xs.end()) break;
      }
      const auto segs = slices(body, xs, precision_bits);
      const Rational value = family_probability_lenient(normalize(segs), kLenientTolerance);
      m.add(value.to_double());
    }
    moments[w] = m;
  });
  Moments all;
  for (const auto& m : moments) all.merge(m);
  EstimateResult r;
  r.method = EstimatorKind::rao_blackwell;
  r.n = n;
  r.samples = samples;
  r.estimate = all.mean;
  r.variance = samples > 1 ? all.m2 / static_cast<double>(samples - 1) : 0.0;
  r.std_error = std::sqrt(r.variance / static_cast<double>(samples));
  r.seed = seed;
  r.workers = workers;
  return r;
}

EstimateResult estimate_segments(std::span<const VerticalSegment> segments, std::uint64_t samples,
                                 std::uint64_t seed, unsigned workers) {
  check_common(samples, workers);
  if (segments.size() < 3) throw PreconditionError("estimate_segments: at least three segments");
  struct Seg {
    double x, lo, hi;
  };
  std::vector<Seg> segs;
  for (std::size_t j = 0; j < segments.size(); ++j) {
    const auto& s = segments[j];
    if (s.y_high < s.y_low) throw PreconditionError("estimate_segments: y_low > y_high");
    for (std::size_t i = 0; i < j; ++i) {
      if (segments[i].x == s.x) throw PreconditionError("estimate_segments: duplicate abscissa " + s.x.to_string());
    }
    segs.push_back({s.x.to_double(), s.y_low.to_double(), s.y_high.to_double()});
  }
  std::vector<std::uint64_t> hits(workers, 0);
  run_workers(workers, [&](unsigned w) {
    Pcg32 rng(seed, w);
    std::vector<P> pts(segs.size());
    const Share s = share_of(samples, workers, w);
    std::uint64_t h = 0;
    for (std::uint64_t i = 0; i < s.count; ++i) {
      for (std::size_t j = 0; j < segs.size(); ++j) {
        pts[j] = {segs[j].x, segs[j].lo + rng.uniform() * (segs[j].hi - segs[j].lo)};
      }
      if (is_convex_position(pts)) ++h;
    }
    hits[w] = h;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  EstimateResult r = indicator_result(EstimatorKind::segments, total, samples, seed, workers);
  r.n = static_cast<int>(segments.size());
  return r;
}

unsigned resolve_workers(std::optional<unsigned> requested) {
  if (requested) {
    if (*requested == 0) throw PreconditionError("workers must be positive");
    return *requested;
  }
  const char* env = std::getenv("SYLVESTER_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || v == 0 || v > 4096) {
    throw PreconditionError(std::string("SYLVESTER_WORKERS must be a positive integer, got '") + env + "'");
  }
  return static_cast<unsigned>(v);
}

}  // namespace sylvester
