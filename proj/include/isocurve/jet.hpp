#ifndef ISOCURVE_JET_HPP
#define ISOCURVE_JET_HPP

#include <array>

#include "isocurve/errors.hpp"

namespace isocurve {

/// Truncated Taylor expansion of a scalar in one or two variables, carried to
/// order 1, 2 or 3. Coefficients are stored as partial-derivative values
/// (value, du, dv, duu, duv, dvv, duuu, duuv, duvv, dvvv), one slot per
/// multi-index, so mixed partials are symmetric by construction.
///
/// Arithmetic follows the exact Leibniz / chain rules truncated at the jet
/// order: results are exact for polynomials of degree <= order, and exact
/// values of the true partials otherwise. Jets are immutable value types;
/// all operations are pure.
class Jet {
 public:
  static constexpr int kSlots = 10;

  Jet() = default;

  static Jet constant(double value, int arity, int order);
  /// Seed jet for the variable with the given index (0 -> u, 1 -> v):
  /// value as given, first derivative 1 in its own slot, all else zero.
  static Jet variable(double value, int index, int arity, int order);

  int arity() const noexcept { return arity_; }
  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }

  /// Partial-derivative value d^(i+j) f / du^i dv^j. Throws Error when the
  /// multi-index is out of range for this jet's arity/order.
  double d(int i, int j = 0) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator-=(double rhs);
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs);

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator+(Jet lhs, double rhs) { return lhs += rhs; }
  friend Jet operator+(double lhs, Jet rhs) { return rhs += lhs; }
  friend Jet operator-(Jet lhs, double rhs) { return lhs -= rhs; }
  friend Jet operator-(double lhs, const Jet& rhs) { return -rhs + lhs; }
  friend Jet operator*(const Jet& lhs, const Jet& rhs);
  friend Jet operator*(Jet lhs, double rhs) { return lhs *= rhs; }
  friend Jet operator*(double lhs, Jet rhs) { return rhs *= lhs; }
  friend Jet operator/(const Jet& lhs, const Jet& rhs);
  friend Jet operator/(Jet lhs, double rhs) { return lhs /= rhs; }
  friend Jet operator/(double lhs, const Jet& rhs);

  friend Jet sin(const Jet& x);
  friend Jet cos(const Jet& x);
  friend Jet tan(const Jet& x);
  friend Jet sinh(const Jet& x);
  friend Jet cosh(const Jet& x);
  friend Jet tanh(const Jet& x);
  friend Jet exp(const Jet& x);
  friend Jet log(const Jet& x);
  friend Jet sqrt(const Jet& x);
  /// x^c with constant exponent. Integer exponents are computed by repeated
  /// multiplication (valid for any base); non-integer exponents go through
  /// exp(c*log(x)) and require x > 0.
  friend Jet pow(const Jet& x, double c);

  /// Evaluates sum_k coeffs[k] * (x - x.value())^k, k = 0..order, in jet
  /// arithmetic. coeffs[k] must be f^(k)(x0)/k! for the outer function f;
  /// this is the single composition rule behind every elementary function.
  static Jet compose(const Jet& x, const std::array<double, 4>& coeffs);

  friend bool operator==(const Jet& a, const Jet& b);

 private:
  static void check_shape(const Jet& a, const Jet& b);
  int arity_ = 1;
  int order_ = 1;
  std::array<double, kSlots> c_{};  // sparse layout: slot(i,j) = base[i+j] + j
};

}  // namespace isocurve

#endif  // ISOCURVE_JET_HPP
