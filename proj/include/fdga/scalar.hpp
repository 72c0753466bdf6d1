#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fdga {

using Rational = mpq_class;

/// Exact field element: an arbitrary precision rational, or a residue modulo
/// a prime.  A scalar with modulus 0 is rational; rational scalars act as
/// literals and are reduced on contact with a residue, so `Scalar(1)` and
/// `Scalar(-1)` work in every field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : value_(value) {}
  Scalar(int value) : value_(value) {}
  explicit Scalar(Rational value) : value_(std::move(value)) { value_.canonicalize(); }
  static Scalar residue(std::uint64_t value, std::uint64_t modulus);

  bool is_rational() const noexcept { return modulus_ == 0; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  const Rational& rational() const noexcept { return value_; }
  std::uint64_t residue() const noexcept { return residue_; }

  bool is_zero() const noexcept { return modulus_ == 0 ? sgn(value_) == 0 : residue_ == 0; }
  bool is_one() const noexcept { return modulus_ == 0 ? value_ == 1 : residue_ == 1; }

  /// Reduce into Z/pZ; throws Validation when the denominator is not invertible.
  Scalar reduced(std::uint64_t modulus) const;

  Scalar inverse() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other) { return *this *= other.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  void align_with(const Scalar& other);

  std::uint64_t modulus_ = 0;
  std::uint64_t residue_ = 0;
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// The ground field: the rationals or a prime field F_p.
class Field {
 public:
  static Field rational() { return Field(0); }
  /// Throws Validation unless p is prime.
  static Field prime(std::uint64_t p);

  bool is_rational() const noexcept { return modulus_ == 0; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint64_t characteristic() const noexcept { return modulus_; }

  /// Bring a scalar (typically a rational literal) into this field.
  Scalar make(const Scalar& s) const { return modulus_ == 0 ? s : s.reduced(modulus_); }
  /// Parse "p/q", "-p/q" or an integer, then bring it into the field.
  Scalar parse(std::string_view text) const;

  friend bool operator==(const Field&, const Field&) = default;

  std::string to_string() const;

 private:
  explicit Field(std::uint64_t modulus) : modulus_(modulus) {}
  std::uint64_t modulus_;
};

/// Strict parse of an exact rational literal ("3/4", "-5"); throws Parse.
Rational parse_rational(std::string_view text);

std::string rational_to_string(const Rational& q);

}  // namespace fdga
