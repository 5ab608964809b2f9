#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// the library's closed forms; profiles are walked with plain base-4 counters.

#include "twoitem/model.hpp"
#include "twoitem/rational.hpp"

#include <vector>

namespace oracle {

using twoitem::AuctionSpec;
using twoitem::Rational;

inline std::vector<Rational> const &p_grid()
{
  static std::vector<Rational> const grid{Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3),
                                          Rational(3, 4)};
  return grid;
}

inline Rational power(Rational const &x, int k)
{
  Rational r(1);
  for (int i = 0; i < k; ++i)
  {
    r = r * x;
  }
  return r;
}

/// Values of buyer `i`'s type digit d (0..3): item 1 high iff d >= 2.
inline Rational value(AuctionSpec const &s, int digit, int item)
{
  bool const high = item == 0 ? digit >= 2 : (digit % 2) == 1;
  return high ? s.b() : s.a();
}

/// Digits of profile k, buyer 1 first.
inline std::vector<int> digits(int n, long k)
{
  std::vector<int> d(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i)
  {
    d[static_cast<std::size_t>(i)] = static_cast<int>(k % 4);
    k /= 4;
  }
  return d;
}

inline long profiles(int n)
{
  long c = 1;
  for (int i = 0; i < n; ++i)
  {
    c *= 4;
  }
  return c;
}

inline Rational weight(AuctionSpec const &s, std::vector<int> const &d)
{
  Rational w(1);
  for (int t : d)
  {
    for (int item = 0; item < 2; ++item)
    {
      w = w * (value(s, t, item) == s.a() ? s.p() : Rational(1) - s.p());
    }
  }
  return w;
}

/// Class masses by enumeration: S0 all low; S1/S2 exactly one all-low column
/// and one/several buyers not of type (a,a).
struct Masses
{
  Rational p0, p1, p2;
};

inline Masses masses(AuctionSpec const &s)
{
  Masses m;
  for (long k = 0; k < profiles(s.n()); ++k)
  {
    auto const d = digits(s.n(), k);
    bool col_low[2] = {true, true};
    int  active     = 0;
    for (int t : d)
    {
      col_low[0] = col_low[0] && t < 2;
      col_low[1] = col_low[1] && t % 2 == 0;
      active += t != 0 ? 1 : 0;
    }
    Rational const w = weight(s, d);
    if (col_low[0] && col_low[1])
    {
      m.p0 = m.p0 + w;
    }
    else if (col_low[0] != col_low[1])
    {
      (active == 1 ? m.p1 : m.p2) = (active == 1 ? m.p1 : m.p2) + w;
    }
  }
  return m;
}

/// One item sold by the optimal single-item auction, taken as the expected
/// largest nonnegative virtual value; doubled for the two items.
inline Rational separate_sale(AuctionSpec const &s)
{
  Rational const phi_low = s.a() - (s.b() - s.a()) * (Rational(1) - s.p()) / s.p();
  Rational       per_item;
  for (long k = 0; k < (1L << s.n()); ++k)
  {
    Rational w(1);
    Rational best;
    for (int i = 0; i < s.n(); ++i)
    {
      bool const high = ((k >> i) & 1) != 0;
      w               = w * (high ? Rational(1) - s.p() : s.p());
      Rational const phi = high ? s.b() : phi_low;
      if (phi > best)
      {
        best = phi;
      }
    }
    per_item = per_item + w * best;
  }
  return Rational(2) * per_item;
}

/// Grand bundle at its best price among all bundle values seen, by
/// enumeration of profiles.
inline Rational grand_bundle(AuctionSpec const &s)
{
  std::vector<Rational> const prices{s.a() + s.a(), s.a() + s.b(), s.b() + s.b()};
  Rational                    best;
  for (auto const &price : prices)
  {
    Rational sold;
    for (long k = 0; k < profiles(s.n()); ++k)
    {
      auto const d   = digits(s.n(), k);
      bool       any = false;
      for (int t : d)
      {
        any = any || value(s, t, 0) + value(s, t, 1) >= price;
      }
      if (any)
      {
        sold = sold + weight(s, d);
      }
    }
    if (price * sold > best)
    {
      best = price * sold;
    }
  }
  return best;
}

}  // namespace oracle
