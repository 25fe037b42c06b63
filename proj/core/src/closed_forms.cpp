#include "sylvester/closed_forms.hpp"

#include <numbers>

#include "sylvester/errors.hpp"

namespace sylvester {

std::string to_string(Shape s) { return s == Shape::square ? "square" : "triangle"; }

std::string to_string(DiskReading r) {
  return r == DiskReading::pi_squared_linear ? "pi-squared-linear" : "squared-denominator";
}

Rational closed_form(Shape shape, int n) {
  if (n < 1) throw PreconditionError("closed_form: n must be >= 1");
  const auto u = static_cast<unsigned>(n);
  if (shape == Shape::square) {
    const Rational r = binomial(2 * u - 2, u - 1) / factorial(u);
    return r * r;
  }
  return Rational(2).pow(u) * factorial(3 * u - 3) / (factorial(u - 1).pow(3) * factorial(2 * u));
}

double PiConstant::value() const {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return rational_part.to_double() + pi2_coefficient.to_double() / pi2;
}

std::string PiConstant::to_string() const {
  const Rational& c = pi2_coefficient;
  if (c.is_zero()) return rational_part.to_string();
  const Rational a = c.abs();
  std::string out = rational_part.is_zero() ? (c.sign() < 0 ? "-" : "") : rational_part.to_string() + (c.sign() < 0 ? " - " : " + ");
  out += a.numerator().get_str() + "/(" + (a.denominator() == 1 ? std::string() : a.denominator().get_str() + " ") + "pi^2)";
  return out;
}

PiConstant disk_constant(int n, DiskReading reading) {
  Rational num, den;
  if (n == 4) {
    num = 35;
    den = 12;
  } else if (n == 5) {
    num = 305;
    den = 48;
  } else {
    throw UnsupportedError("disk_constant: only n = 4 and n = 5 are available");
  }
  if (reading == DiskReading::squared_denominator) den = den * den;
  return PiConstant{Rational(1), -(num / den)};
}

}  // namespace sylvester
