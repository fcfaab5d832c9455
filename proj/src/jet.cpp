#include "isocurve/jet.hpp"

#include <cmath>

namespace isocurve {

namespace {

// slot(i,j) = kBase[i+j] + j; total-degree blocks, v-count within a block
constexpr int kBase[4] = {0, 1, 3, 6};

constexpr int slot(int i, int j) { return kBase[i + j] + j; }

constexpr double kBinom[4][4] = {
    {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

bool valid_shape(int arity, int order) {
  return (arity == 1 || arity == 2) && order >= 1 && order <= 3;
}

}  // namespace

Jet Jet::constant(double value, int arity, int order) {
  if (!valid_shape(arity, order)) throw Error("jet arity must be 1 or 2 and order in 1..3");
  Jet j;
  j.arity_ = arity;
  j.order_ = order;
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double value, int index, int arity, int order) {
  Jet j = constant(value, arity, order);
  if (index < 0 || index >= arity) throw Error("jet variable index out of range for arity");
  j.c_[index == 0 ? slot(1, 0) : slot(0, 1)] = 1.0;
  return j;
}

double Jet::d(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_ || (arity_ == 1 && j != 0))
    throw Error("jet derivative index out of range");
  return c_[slot(i, j)];
}

void Jet::check_shape(const Jet& a, const Jet& b) {
  if (a.arity_ != b.arity_ || a.order_ != b.order_)
    throw Error("jet operands must share arity and order");
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& x : r.c_) x = -x;
  return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
  check_shape(*this, rhs);
  for (int k = 0; k < kSlots; ++k) c_[k] += rhs.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  check_shape(*this, rhs);
  for (int k = 0; k < kSlots; ++k) c_[k] -= rhs.c_[k];
  return *this;
}

Jet& Jet::operator+=(double rhs) {
  c_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(double rhs) {
  c_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (double& x : c_) x *= rhs;
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  if (rhs == 0.0) throw DomainError("division by zero");
  for (double& x : c_) x /= rhs;
  return *this;
}

Jet operator*(const Jet& lhs, const Jet& rhs) {
  Jet::check_shape(lhs, rhs);
  Jet r = Jet::constant(0.0, lhs.arity_, lhs.order_);
  const int jmax = lhs.arity_ == 1 ? 0 : lhs.order_;
  for (int i = 0; i + 0 <= lhs.order_; ++i) {
    for (int j = 0; i + j <= lhs.order_ && j <= jmax; ++j) {
      double acc = 0.0;
      for (int p = 0; p <= i; ++p)
        for (int q = 0; q <= j; ++q)
          acc += kBinom[i][p] * kBinom[j][q] * lhs.c_[slot(p, q)] *
                 rhs.c_[slot(i - p, j - q)];
      r.c_[slot(i, j)] = acc;
    }
  }
  return r;
}

Jet Jet::compose(const Jet& x, const std::array<double, 4>& coeffs) {
  Jet h = x;
  h.c_[0] = 0.0;  // displacement from the expansion point
  Jet r = Jet::constant(coeffs[static_cast<std::size_t>(x.order_)], x.arity_, x.order_);
  for (int k = x.order_ - 1; k >= 0; --k) {
    r = r * h;
    r.c_[0] += coeffs[static_cast<std::size_t>(k)];
  }
  return r;
}

Jet operator/(const Jet& lhs, const Jet& rhs) {
  Jet::check_shape(lhs, rhs);
  const double y = rhs.value();
  if (y == 0.0) throw DomainError("division by zero");
  const double y2 = y * y;
  return lhs * Jet::compose(rhs, {1.0 / y, -1.0 / y2, 1.0 / (y2 * y), -1.0 / (y2 * y2)});
}

Jet operator/(double lhs, const Jet& rhs) {
  return Jet::constant(lhs, rhs.arity(), rhs.order()) / rhs;
}

Jet sin(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return Jet::compose(x, {s, c, -s / 2.0, -c / 6.0});
}

Jet cos(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return Jet::compose(x, {c, -s, -c / 2.0, s / 6.0});
}

Jet tan(const Jet& x) {
  const double t = std::tan(x.value());
  const double d1 = 1.0 + t * t;
  return Jet::compose(x, {t, d1, t * d1, d1 * (1.0 + 3.0 * t * t) / 3.0});
}

Jet sinh(const Jet& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  return Jet::compose(x, {s, c, s / 2.0, c / 6.0});
}

Jet cosh(const Jet& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  return Jet::compose(x, {c, s, c / 2.0, s / 6.0});
}

Jet tanh(const Jet& x) {
  const double h = std::tanh(x.value());
  const double d1 = 1.0 - h * h;
  return Jet::compose(x, {h, d1, -h * d1, -d1 * (1.0 - 3.0 * h * h) / 3.0});
}

Jet exp(const Jet& x) {
  const double e = std::exp(x.value());
  return Jet::compose(x, {e, e, e / 2.0, e / 6.0});
}

Jet log(const Jet& x) {
  const double v = x.value();
  if (v <= 0.0) throw DomainError("log of non-positive value");
  return Jet::compose(x, {std::log(v), 1.0 / v, -1.0 / (2.0 * v * v), 1.0 / (3.0 * v * v * v)});
}

Jet sqrt(const Jet& x) {
  const double v = x.value();
  // derivative coefficients are singular at 0, so 0 is rejected as well
  if (v <= 0.0) throw DomainError("sqrt of non-positive value in jet arithmetic");
  const double s = std::sqrt(v);
  return Jet::compose(x, {s, 0.5 / s, -1.0 / (8.0 * s * v), 1.0 / (16.0 * s * v * v)});
}

Jet pow(const Jet& x, double c) {
  const double nearest = std::nearbyint(c);
  if (c == nearest && std::abs(c) <= 1024.0) {
    long n = static_cast<long>(nearest);
    if (n < 0) {
      if (x.value() == 0.0) throw DomainError("zero raised to a negative power");
      return 1.0 / pow(x, static_cast<double>(-n));
    }
    Jet result = Jet::constant(1.0, x.arity(), x.order());
    Jet base = x;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n > 0) base = base * base;
    }
    return result;
  }
  if (x.value() <= 0.0) throw DomainError("non-integer power of a non-positive base");
  return exp(c * log(x));
}

bool operator==(const Jet& a, const Jet& b) {
  return a.arity_ == b.arity_ && a.order_ == b.order_ && a.c_ == b.c_;
}

}  // namespace isocurve
