#include "twoitem/rational.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace twoitem {

Rational::Rational(long num, long den)
{
  if (den == 0)
  {
    throw std::domain_error("rational with zero denominator");
  }
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

namespace {

bool all_digits(std::string_view s)
{
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

mpz_class parse_integer(std::string_view s, std::string_view whole)
{
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+'))
  {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
  {
    throw std::invalid_argument("not an exact rational: '" + std::string(whole) + "'");
  }
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

mpz_class pow10(unsigned long k)
{
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

}  // namespace

Rational Rational::parse(std::string_view text, bool allow_decimal)
{
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
  {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
  {
    text.remove_suffix(1);
  }
  std::string_view const whole = text;

  auto const slash = text.find('/');
  if (slash != std::string_view::npos)
  {
    mpz_class const num = parse_integer(text.substr(0, slash), whole);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text))
    {
      throw std::invalid_argument("not an exact rational: '" + std::string(whole) + "'");
    }
    mpz_class const den(std::string(den_text), 10);
    if (den == 0)
    {
      throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }

  auto const dot = text.find('.');
  if (dot != std::string_view::npos)
  {
    if (!allow_decimal)
    {
      throw std::invalid_argument("decimal input '" + std::string(whole) +
                                  "' is not accepted; write it as num/den");
    }
    std::string_view int_part  = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative              = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+'))
    {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
    {
      throw std::invalid_argument("not a decimal number: '" + std::string(whole) + "'");
    }
    mpz_class const scale = pow10(frac_part.size());
    mpz_class num         = int_part.empty() ? mpz_class(0) : mpz_class(std::string(int_part), 10);
    num *= scale;
    if (!frac_part.empty())
    {
      num += mpz_class(std::string(frac_part), 10);
    }
    if (negative)
    {
      num = -num;
    }
    mpq_class q(num, scale);
    q.canonicalize();
    return Rational(q);
  }

  return Rational(mpq_class(parse_integer(text, whole)));
}

std::string Rational::str() const
{
  if (value_.get_den() == 1)
  {
    return value_.get_num().get_str();
  }
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int significant_digits) const
{
  if (is_zero())
  {
    return "0";
  }
  significant_digits = std::max(significant_digits, 1);
  mpz_class num      = abs(value_.get_num());
  mpz_class const den = value_.get_den();

  // exponent e with 10^e <= |x| < 10^(e+1)
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
  auto ge_pow = [&](long k) {
    // |x| >= 10^k ?
    if (k >= 0)
    {
      return num >= den * pow10(static_cast<unsigned long>(k));
    }
    return num * pow10(static_cast<unsigned long>(-k)) >= den;
  };
  while (!ge_pow(e))
  {
    --e;
  }
  while (ge_pow(e + 1))
  {
    ++e;
  }

  // scaled = round(|x| * 10^(sd-1-e)), half away from zero
  long const shift = significant_digits - 1 - e;
  mpz_class scaled_num = num;
  mpz_class scaled_den = den;
  if (shift >= 0)
  {
    scaled_num *= pow10(static_cast<unsigned long>(shift));
  }
  else
  {
    scaled_den *= pow10(static_cast<unsigned long>(-shift));
  }
  mpz_class digits = (2 * scaled_num + scaled_den) / (2 * scaled_den);
  long point       = shift;  // digits * 10^-point
  std::string s    = digits.get_str();
  if (point <= 0)
  {
    s.append(static_cast<std::size_t>(-point), '0');
  }
  else
  {
    if (static_cast<long>(s.size()) <= point)
    {
      s.insert(0, static_cast<std::size_t>(point - static_cast<long>(s.size()) + 1), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(point), 1, '.');
    while (s.back() == '0')
    {
      s.pop_back();
    }
    if (s.back() == '.')
    {
      s.pop_back();
    }
  }
  return sign() < 0 ? "-" + s : s;
}

Rational pow(Rational const &base, unsigned exponent)
{
  Rational result(1);
  for (unsigned k = 0; k < exponent; ++k)
  {
    result *= base;
  }
  return result;
}

Rational max(Rational const &a, Rational const &b)
{
  return a < b ? b : a;
}

Rational min(Rational const &a, Rational const &b)
{
  return b < a ? b : a;
}

Rational positive_part(Rational const &x)
{
  return x.sign() > 0 ? x : Rational(0);
}

Rational abs(Rational const &x)
{
  return x.sign() < 0 ? -x : x;
}

std::ostream &operator<<(std::ostream &os, Rational const &r)
{
  return os << r.str();
}

}  // namespace twoitem
