#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace twoitem {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational
{
public:
  Rational() = default;
  Rational(long value)  // NOLINT(google-explicit-constructor)
    : value_(value)
  {}
  Rational(int value)  // NOLINT(google-explicit-constructor)
    : value_(value)
  {}
  Rational(long num, long den);
  explicit Rational(mpq_class value)
    : value_(std::move(value))
  {
    value_.canonicalize();
  }

  /// Parses "num/den", an integer, or (when allow_decimal is set) a
  /// terminating decimal such as "0.25". Throws std::invalid_argument.
  static Rational parse(std::string_view text, bool allow_decimal = false);

  mpz_class numerator() const
  {
    return value_.get_num();
  }
  mpz_class denominator() const
  {
    return value_.get_den();
  }

  int sign() const
  {
    return sgn(value_);
  }
  bool is_zero() const
  {
    return sign() == 0;
  }

  /// "num/den", or "num" when the denominator is 1.
  std::string str() const;
  /// Decimal rendering with the given number of significant digits.
  std::string decimal(int significant_digits = 12) const;
  double to_double() const
  {
    return value_.get_d();
  }

  mpq_class const &raw() const
  {
    return value_;
  }
  mpq_class &raw()
  {
    return value_;
  }

  Rational &operator+=(Rational const &o)
  {
    value_ += o.value_;
    return *this;
  }
  Rational &operator-=(Rational const &o)
  {
    value_ -= o.value_;
    return *this;
  }
  Rational &operator*=(Rational const &o)
  {
    value_ *= o.value_;
    return *this;
  }
  Rational &operator/=(Rational const &o)
  {
    if (o.is_zero())
    {
      throw std::domain_error("rational division by zero");
    }
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, Rational const &b)
  {
    return a += b;
  }
  friend Rational operator-(Rational a, Rational const &b)
  {
    return a -= b;
  }
  friend Rational operator*(Rational a, Rational const &b)
  {
    return a *= b;
  }
  friend Rational operator/(Rational a, Rational const &b)
  {
    return a /= b;
  }
  friend Rational operator-(Rational const &a)
  {
    return Rational(mpq_class(-a.value_));
  }

  friend bool operator==(Rational const &a, Rational const &b)
  {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(Rational const &a, Rational const &b)
  {
    int const c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  mpq_class value_{0};
};

Rational pow(Rational const &base, unsigned exponent);
Rational max(Rational const &a, Rational const &b);
Rational min(Rational const &a, Rational const &b);
/// [x]_+ = max{x, 0}
Rational positive_part(Rational const &x);
Rational abs(Rational const &x);

std::ostream &operator<<(std::ostream &os, Rational const &r);

}  // namespace twoitem
