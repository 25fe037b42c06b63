#pragma once

#include <string>

#include "sylvester/rational.hpp"

namespace sylvester {

enum class Shape { square, triangle };
std::string to_string(Shape s);

/// Valtr: Q_S^n = (C(2n-2, n-1) / n!)^2 and Q_T^n = 2^n (3n-3)! / (((n-1)!)^3 (2n)!).
Rational closed_form(Shape shape, int n);

/// rational_part + pi2_coefficient / pi^2.
struct PiConstant {
  Rational rational_part;
  Rational pi2_coefficient;

  double value() const;
  /// e.g. "1 - 35/(12 pi^2)".
  std::string to_string() const;
  friend bool operator==(const PiConstant&, const PiConstant&) = default;
};

/// Reading of the printed denominators "(12 pi)^2" and "(48 pi)^2".
enum class DiskReading {
  /// 1 - 35/(12 pi^2), 1 - 305/(48 pi^2). Adopted.
  pi_squared_linear,
  /// 1 - 35/(144 pi^2), 1 - 305/(2304 pi^2).
  squared_denominator,
};
std::string to_string(DiskReading r);

/// Q_D^n for n in {4, 5}; throws UnsupportedError otherwise.
PiConstant disk_constant(int n, DiskReading reading = DiskReading::pi_squared_linear);

}  // namespace sylvester
