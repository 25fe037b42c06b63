#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "sylvester/random.hpp"
#include "sylvester/rational.hpp"
#include "sylvester/segments.hpp"

namespace sylvester {

struct Point2 {
  Rational x;
  Rational y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Convex polygon, vertices counter-clockwise, no repeated or collinear vertices.
struct Polygon {
  std::vector<Point2> vertices;
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

struct Disk {
  Point2 center;
  Rational radius;
  friend bool operator==(const Disk&, const Disk&) = default;
};

/// Image of the closed unit disk under p -> M p + t, M = [[m00, m01], [m10, m11]].
struct Ellipse {
  std::array<Rational, 4> m;
  Point2 t;
  friend bool operator==(const Ellipse&, const Ellipse&) = default;
};

/// Triangles are polygons with three vertices.
using ConvexBody = std::variant<Polygon, Disk, Ellipse>;

/// Normalizes an arbitrary vertex list of a convex polygon: removes repeats and
/// collinear vertices, orients counter-clockwise. Throws PreconditionError on a
/// non-convex ordering or zero area.
Polygon make_polygon(std::vector<Point2> vertices);
Polygon make_triangle(const Point2& a, const Point2& b, const Point2& c);
Polygon unit_square();
/// Exact convex hull of a point set (strict: collinear boundary points dropped).
Polygon convex_hull(std::vector<Point2> points);
void validate(const ConvexBody& body);

/// Exact orientation sign of (b - a) x (c - a).
int orientation(const Point2& a, const Point2& b, const Point2& c);

/// x_min, x_max. Exact for polygons and disks; ellipse extents are rational
/// approximations to within 2^-precision_bits.
std::pair<Rational, Rational> x_range(const ConvexBody& body, unsigned precision_bits = 128);

/// Bottom and top of the vertical slice at x. Exact for polygons, and for disks
/// and ellipses whenever the square root is rational; otherwise the root is
/// truncated to a multiple of 2^-precision_bits.
std::pair<Rational, Rational> y_bounds(const ConvexBody& body, const Rational& x, unsigned precision_bits = 128);

/// coefficient * pi^pi_power.
struct Area {
  Rational coefficient;
  int pi_power = 0;
  double to_double() const;
  friend bool operator==(const Area&, const Area&) = default;
};
Area area(const ConvexBody& body);

/// Inscribed polygon with `sides` vertices lying exactly on the boundary of a
/// disk or ellipse (rational points of the unit circle, mapped affinely).
Polygon inscribed_polygon(const ConvexBody& body, int sides = 128);
inline constexpr int kCurvedApproximationSides = 128;

/// |y| <= W(x)/2. Polygons map to polygons; disks and axis-aligned ellipses map
/// to recentred copies. Other ellipses raise UnsupportedError.
ConvexBody steiner_symmetrize(const ConvexBody& body);
/// 0 <= y <= W(x). Polygons map to polygons. Disks and axis-aligned ellipses
/// are first replaced by their inscribed kCurvedApproximationSides-gon.
ConvexBody shake(const ConvexBody& body);

struct AffineMap {
  std::array<Rational, 4> a{Rational(1), Rational(0), Rational(0), Rational(1)};
  Point2 t{Rational(0), Rational(0)};
  Rational determinant() const { return a[0] * a[3] - a[1] * a[2]; }
};
ConvexBody affine_image(const ConvexBody& body, const AffineMap& map);

/// Vertical slices of the body at the given strictly increasing abscissas.
std::vector<VerticalSegment> slices(const ConvexBody& body, std::span<const Rational> xs,
                                    unsigned precision_bits = 128);

/// Precomputed floating-point data for uniform sampling.
class BodySampler {
 public:
  explicit BodySampler(const ConvexBody& body);
  std::array<double, 2> sample(Pcg32& rng) const;

 private:
  enum class Kind { polygon, ellipse } kind_;
  std::vector<std::array<double, 2>> vertices_;
  std::vector<double> cumulative_;
  std::array<double, 4> m_{};
  std::array<double, 2> t_{};
};

std::array<double, 2> sample_point(const ConvexBody& body, Pcg32& rng);

}  // namespace sylvester
