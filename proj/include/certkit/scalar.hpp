#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace certkit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Exact scalar of the form a + b*sqrt(s) with a, b, s rational and s >= 0.
/// At most one radicand is in play per computation; mixing two different
/// nonzero radicands throws. A value with b == 0 is radicand-agnostic.
class Scalar {
 public:
  Scalar() : a_(0), b_(0), s_(0) {}
  Scalar(int v) : a_(v), b_(0), s_(0) {}        // NOLINT(google-explicit-constructor)
  Scalar(long long v) : a_(v), b_(0), s_(0) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rat& v) : a_(v), b_(0), s_(0) {} // NOLINT(google-explicit-constructor)
  Scalar(Rat a, Rat b, Rat s);

  static Scalar sqrt_of(const Rat& s) { return Scalar(0, 1, s); }

  const Rat& rational_part() const { return a_; }
  const Rat& radical_part() const { return b_; }
  const Rat& radicand() const { return s_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  /// -1, 0 or +1; exact.
  int sign() const;

  Scalar operator-() const { return Scalar(-a_, -b_, s_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar l, const Scalar& r) { return l += r; }
  friend Scalar operator-(Scalar l, const Scalar& r) { return l -= r; }
  friend Scalar operator*(Scalar l, const Scalar& r) { return l *= r; }
  friend Scalar operator/(Scalar l, const Scalar& r) { return l /= r; }

  friend bool operator==(const Scalar& l, const Scalar& r) { return (l - r).is_zero(); }
  friend bool operator!=(const Scalar& l, const Scalar& r) { return !(l == r); }
  friend bool operator<(const Scalar& l, const Scalar& r) { return (l - r).sign() < 0; }
  friend bool operator>(const Scalar& l, const Scalar& r) { return (l - r).sign() > 0; }
  friend bool operator<=(const Scalar& l, const Scalar& r) { return (l - r).sign() <= 0; }
  friend bool operator>=(const Scalar& l, const Scalar& r) { return (l - r).sign() >= 0; }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const;

  /// Canonical text: "a", "b*sqrt(s)", or "a+b*sqrt(s)" with rationals as p/q.
  std::string str() const;

 private:
  // Unify radicands of *this and o; throws on a genuine mismatch.
  Rat common_radicand(const Scalar& o) const;

  Rat a_, b_, s_;
};

/// Text forms accepted: "3", "-1/2", "0.25", "sqrt(2)", "3/4*sqrt(2)",
/// "1+2*sqrt(3)", "1/2-sqrt(2)". Decimal literals are read exactly.
Scalar scalar_from_string(const std::string& text);

/// Exact rational from a decimal/fraction literal ("0.5", "-3/4", "7").
Rat rat_from_string(const std::string& text);

std::string rat_to_string(const Rat& v);

/// Rational with the smallest denominator inside [v - tol, v + tol]
/// (Stern-Brocot search). Returns nullopt if the denominator would
/// exceed max_den.
std::optional<Rat> rat_approx(double v, double tol, const Int& max_den);

}  // namespace certkit
