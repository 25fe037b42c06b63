#include "sylvester/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sylvester/errors.hpp"

namespace sylvester {

namespace {

Rational cross(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool lex_less(const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

Rational signed_double_area(const std::vector<Point2>& v) {
  Rational s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return s;
}

/// Square root of a nonnegative rational. Exact when both numerator and
/// denominator are perfect squares, otherwise truncated to precision_bits.
Rational sqrt_rational(const Rational& q, unsigned precision_bits) {
  if (q.sign() < 0) throw PreconditionError("sqrt of a negative rational");
  if (q.is_zero()) return Rational(0);
  const mpz_class num = q.numerator();
  const mpz_class den = q.denominator();
  if (mpz_perfect_square_p(num.get_mpz_t()) != 0 && mpz_perfect_square_p(den.get_mpz_t()) != 0) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rational(rn, rd);
  }
  mpf_class f(0, precision_bits + 64);
  f = mpf_class(q.raw(), precision_bits + 64);
  mpf_class r(0, precision_bits + 64);
  mpf_sqrt(r.get_mpf_t(), f.get_mpf_t());
  // Drop to exactly precision_bits of fraction so results stay compact.
  mpz_class scaled;
  mpf_class shifted(0, precision_bits + 64);
  mpf_mul_2exp(shifted.get_mpf_t(), r.get_mpf_t(), precision_bits);
  mpz_set_f(scaled.get_mpz_t(), shifted.get_mpf_t());
  mpz_class denom = 1;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), precision_bits);
  return Rational(scaled, denom);
}

struct Quadric {
  // (p - t)^T Q (p - t) <= 1
  Rational q11, q12, q22;
  Point2 t;
};

Quadric quadric_of(const Ellipse& e) {
  const Rational det = e.m[0] * e.m[3] - e.m[1] * e.m[2];
  if (det.is_zero()) throw PreconditionError("ellipse: singular matrix");
  // A = M^{-1}
  const Rational a00 = e.m[3] / det, a01 = -e.m[1] / det, a10 = -e.m[2] / det, a11 = e.m[0] / det;
  return Quadric{a00 * a00 + a10 * a10, a00 * a01 + a10 * a11, a01 * a01 + a11 * a11, e.t};
}

Ellipse as_ellipse(const Disk& d) {
  return Ellipse{{d.radius, Rational(0), Rational(0), d.radius}, d.center};
}

bool axis_aligned(const Ellipse& e) { return quadric_of(e).q12.is_zero(); }

std::pair<Rational, Rational> polygon_y_bounds(const Polygon& poly, const Rational& x) {
  bool found = false;
  Rational lo, hi;
  auto take = [&](const Rational& y) {
    if (!found) {
      lo = hi = y;
      found = true;
    } else {
      lo = min(lo, y);
      hi = max(hi, y);
    }
  };
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    if (p.x == q.x) {
      if (p.x == x) {
        take(p.y);
        take(q.y);
      }
      continue;
    }
    const Rational& xa = min(p.x, q.x);
    const Rational& xb = max(p.x, q.x);
    if (x < xa || x > xb) continue;
    take(p.y + (q.y - p.y) * (x - p.x) / (q.x - p.x));
  }
  if (!found) throw PreconditionError("y_bounds: abscissa " + x.to_string() + " outside the body");
  return {lo, hi};
}

std::pair<Rational, Rational> ellipse_y_bounds(const Ellipse& e, const Rational& x, unsigned bits) {
  const Quadric q = quadric_of(e);
  const Rational dx = x - q.t.x;
  const Rational disc = q.q12 * q.q12 * dx * dx - q.q22 * (q.q11 * dx * dx - Rational(1));
  if (disc.sign() < 0) throw PreconditionError("y_bounds: abscissa " + x.to_string() + " outside the body");
  const Rational root = sqrt_rational(disc, bits);
  const Rational centre = q.t.y - q.q12 * dx / q.q22;
  const Rational half = root / q.q22;
  return {centre - half, centre + half};
}

std::vector<Rational> vertex_abscissas(const Polygon& p) {
  std::vector<Rational> xs;
  xs.reserve(p.vertices.size());
  for (const auto& v : p.vertices) xs.push_back(v.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

Polygon polygon_from_widths(const Polygon& p, bool centred) {
  const auto xs = vertex_abscissas(p);
  std::vector<Point2> lower, upper;
  for (const auto& x : xs) {
    const auto [lo, hi] = polygon_y_bounds(p, x);
    const Rational w = hi - lo;
    if (centred) {
      lower.push_back({x, -w / Rational(2)});
      upper.push_back({x, w / Rational(2)});
    } else {
      lower.push_back({x, Rational(0)});
      upper.push_back({x, w});
    }
  }
  std::vector<Point2> out(lower.begin(), lower.end());
  out.insert(out.end(), upper.rbegin(), upper.rend());
  return make_polygon(std::move(out));
}

Point2 apply(const AffineMap& m, const Point2& p) {
  return {m.a[0] * p.x + m.a[1] * p.y + m.t.x, m.a[2] * p.x + m.a[3] * p.y + m.t.y};
}

}  // namespace

int orientation(const Point2& a, const Point2& b, const Point2& c) { return cross(a, b, c).sign(); }

Polygon convex_hull(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return Polygon{points};
  std::vector<Point2> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && orientation(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orientation(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return Polygon{hull};
}

Polygon make_polygon(std::vector<Point2> v) {
  // Cyclic duplicate removal.
  std::vector<Point2> d;
  for (auto& p : v) {
    if (d.empty() || !(d.back() == p)) d.push_back(std::move(p));
  }
  while (d.size() > 1 && d.front() == d.back()) d.pop_back();
  if (d.size() < 3) throw PreconditionError("polygon: fewer than three distinct vertices");
  const Rational a2 = signed_double_area(d);
  if (a2.is_zero()) throw PreconditionError("polygon: zero area");
  if (a2.sign() < 0) std::reverse(d.begin(), d.end());

  bool changed = true;
  while (changed && d.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const Point2& prev = d[(i + d.size() - 1) % d.size()];
      const Point2& next = d[(i + 1) % d.size()];
      if (orientation(prev, d[i], next) == 0) {
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (d.size() < 3) throw PreconditionError("polygon: zero area");

  const Polygon hull = convex_hull(d);
  if (hull.vertices.size() != d.size()) throw PreconditionError("polygon: vertices are not in convex position");
  const auto start = std::find(d.begin(), d.end(), hull.vertices.front());
  std::vector<Point2> rotated(start, d.end());
  rotated.insert(rotated.end(), d.begin(), start);
  if (rotated != hull.vertices) throw PreconditionError("polygon: vertex order is not convex");
  return Polygon{std::move(d)};
}

Polygon make_triangle(const Point2& a, const Point2& b, const Point2& c) { return make_polygon({a, b, c}); }

Polygon unit_square() {
  return Polygon{{{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(1), Rational(1)},
                  {Rational(0), Rational(1)}}};
}

void validate(const ConvexBody& body) {
  std::visit(
      [](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          if (make_polygon(b.vertices) != b) throw PreconditionError("polygon is not in normalized form");
        } else if constexpr (std::is_same_v<T, Disk>) {
          if (b.radius.sign() <= 0) throw PreconditionError("disk: radius must be positive");
        } else {
          quadric_of(b);
        }
      },
      body);
}

std::pair<Rational, Rational> x_range(const ConvexBody& body, unsigned bits) {
  if (const auto* p = std::get_if<Polygon>(&body)) {
    const auto xs = vertex_abscissas(*p);
    return {xs.front(), xs.back()};
  }
  if (const auto* d = std::get_if<Disk>(&body)) return {d->center.x - d->radius, d->center.x + d->radius};
  const auto& e = std::get<Ellipse>(body);
  const Quadric q = quadric_of(e);
  const Rational half = sqrt_rational(q.q22 / (q.q11 * q.q22 - q.q12 * q.q12), bits);
  return {e.t.x - half, e.t.x + half};
}

std::pair<Rational, Rational> y_bounds(const ConvexBody& body, const Rational& x, unsigned bits) {
  if (const auto* p = std::get_if<Polygon>(&body)) return polygon_y_bounds(*p, x);
  if (const auto* d = std::get_if<Disk>(&body)) return ellipse_y_bounds(as_ellipse(*d), x, bits);
  return ellipse_y_bounds(std::get<Ellipse>(body), x, bits);
}

double Area::to_double() const { return coefficient.to_double() * std::pow(std::numbers::pi, pi_power); }

Area area(const ConvexBody& body) {
  if (const auto* p = std::get_if<Polygon>(&body)) return {signed_double_area(p->vertices).abs() / Rational(2), 0};
  if (const auto* d = std::get_if<Disk>(&body)) return {d->radius * d->radius, 1};
  const auto& e = std::get<Ellipse>(body);
  return {(e.m[0] * e.m[3] - e.m[1] * e.m[2]).abs(), 1};
}

Polygon inscribed_polygon(const ConvexBody& body, int sides) {
  if (sides < 3) throw PreconditionError("inscribed_polygon: at least three sides");
  if (const auto* p = std::get_if<Polygon>(&body)) return *p;
  const Ellipse e = std::holds_alternative<Disk>(body) ? as_ellipse(std::get<Disk>(body)) : std::get<Ellipse>(body);
  const Rational one(1), two(2);
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(sides));
  for (int k = 0; k < sides; ++k) {
    const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * (k + 0.5) / sides;
    const Rational t(static_cast<long>(std::llround(std::tan(theta / 2) * 16777216.0)), 16777216L);
    const Rational den = one + t * t;
    const Point2 u{(one - t * t) / den, two * t / den};
    pts.push_back({e.m[0] * u.x + e.m[1] * u.y + e.t.x, e.m[2] * u.x + e.m[3] * u.y + e.t.y});
  }
  return make_polygon(std::move(pts));
}

ConvexBody steiner_symmetrize(const ConvexBody& body) {
  if (const auto* p = std::get_if<Polygon>(&body)) return polygon_from_widths(*p, true);
  if (const auto* d = std::get_if<Disk>(&body)) return Disk{{d->center.x, Rational(0)}, d->radius};
  const auto& e = std::get<Ellipse>(body);
  if (!axis_aligned(e)) throw UnsupportedError("steiner_symmetrize: ellipse axes must be coordinate-aligned");
  return Ellipse{e.m, {e.t.x, Rational(0)}};
}

ConvexBody shake(const ConvexBody& body) {
  if (const auto* p = std::get_if<Polygon>(&body)) return polygon_from_widths(*p, false);
  if (const auto* e = std::get_if<Ellipse>(&body); e != nullptr && !axis_aligned(*e)) {
    throw UnsupportedError("shake: ellipse axes must be coordinate-aligned");
  }
  return polygon_from_widths(inscribed_polygon(body, kCurvedApproximationSides), false);
}

ConvexBody affine_image(const ConvexBody& body, const AffineMap& map) {
  if (map.determinant().is_zero()) throw PreconditionError("affine_image: singular map");
  if (const auto* p = std::get_if<Polygon>(&body)) {
    std::vector<Point2> v;
    v.reserve(p->vertices.size());
    for (const auto& q : p->vertices) v.push_back(apply(map, q));
    return make_polygon(std::move(v));
  }
  const Ellipse e = std::holds_alternative<Disk>(body) ? as_ellipse(std::get<Disk>(body)) : std::get<Ellipse>(body);
  const auto& a = map.a;
  return Ellipse{{a[0] * e.m[0] + a[1] * e.m[2], a[0] * e.m[1] + a[1] * e.m[3], a[2] * e.m[0] + a[3] * e.m[2],
                  a[2] * e.m[1] + a[3] * e.m[3]},
                 apply(map, e.t)};
}

std::vector<VerticalSegment> slices(const ConvexBody& body, std::span<const Rational> xs, unsigned bits) {
  std::vector<VerticalSegment> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && !(xs[i - 1] < xs[i])) throw PreconditionError("slices: abscissas must be strictly increasing");
    const auto [lo, hi] = y_bounds(body, xs[i], bits);
    out.push_back({xs[i], lo, hi});
  }
  return out;
}

BodySampler::BodySampler(const ConvexBody& body) {
  if (const auto* p = std::get_if<Polygon>(&body)) {
    kind_ = Kind::polygon;
    for (const auto& v : p->vertices) vertices_.push_back({v.x.to_double(), v.y.to_double()});
    double total = 0;
    for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
      const auto& a = vertices_[0];
      const auto& b = vertices_[i];
      const auto& c = vertices_[i + 1];
      total += 0.5 * std::abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
      cumulative_.push_back(total);
    }
    if (cumulative_.empty()) throw PreconditionError("BodySampler: polygon needs three vertices");
    return;
  }
  kind_ = Kind::ellipse;
  const Ellipse e = std::holds_alternative<Disk>(body) ? as_ellipse(std::get<Disk>(body)) : std::get<Ellipse>(body);
  for (int i = 0; i < 4; ++i) m_[static_cast<std::size_t>(i)] = e.m[static_cast<std::size_t>(i)].to_double();
  t_ = {e.t.x.to_double(), e.t.y.to_double()};
}

std::array<double, 2> BodySampler::sample(Pcg32& rng) const {
  if (kind_ == Kind::polygon) {
    const double u = rng.uniform() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t tri = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                                  cumulative_.size() - 1);
    double r1 = rng.uniform();
    double r2 = rng.uniform();
    if (r1 + r2 > 1.0) {
      r1 = 1.0 - r1;
      r2 = 1.0 - r2;
    }
    const auto& a = vertices_[0];
    const auto& b = vertices_[tri + 1];
    const auto& c = vertices_[tri + 2];
    return {a[0] + r1 * (b[0] - a[0]) + r2 * (c[0] - a[0]), a[1] + r1 * (b[1] - a[1]) + r2 * (c[1] - a[1])};
  }
  const double r = std::sqrt(rng.uniform());
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double u0 = r * std::cos(phi);
  const double u1 = r * std::sin(phi);
  return {m_[0] * u0 + m_[1] * u1 + t_[0], m_[2] * u0 + m_[3] * u1 + t_[1]};
}

std::array<double, 2> sample_point(const ConvexBody& body, Pcg32& rng) { return BodySampler(body).sample(rng); }

}  // namespace sylvester
