#include "twoitem/closed_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace twoitem {
namespace {

Rational one()
{
  return Rational(1);
}

// The three bracketed corrections shared by both revenue formulas.
struct Corrections
{
  Rational all_low;      // [2a - (1-p^2)/p^2 (b-a)]_+
  Rational half_ratio;   // [a - (1-p)/(2p) (b-a)]_+
  Rational full_ratio;   // [a - (1-p)/p (b-a)]_+
};

Corrections corrections(AuctionSpec const &spec)
{
  Rational const &p   = spec.p();
  Rational const &a   = spec.a();
  Rational const  gap = spec.b() - a;
  Rational const  p2  = p * p;
  Corrections     c;
  c.all_low    = positive_part(Rational(2) * a - (one() - p2) / p2 * gap);
  c.half_ratio = positive_part(a - (one() - p) / (Rational(2) * p) * gap);
  c.full_ratio = positive_part(a - (one() - p) / p * gap);
  return c;
}

}  // namespace

Breakpoints breakpoints(AuctionSpec const &spec)
{
  Rational const &p = spec.p();
  Rational const &a = spec.a();
  Breakpoints     bp;
  bp.v1 = (one() + p * p) / (one() - p * p) * a;
  bp.v2 = a / (one() - p);
  bp.v3 = (one() + p) / (one() - p) * a;
  return bp;
}

IndicatorFlags indicator_flags(AuctionSpec const &spec)
{
  auto const     bp = breakpoints(spec);
  IndicatorFlags f;
  f.alpha = spec.b() < bp.v1;
  f.beta  = spec.b() < bp.v3;
  f.gamma = spec.b() < bp.v2;
  return f;
}

Regime regime(AuctionSpec const &spec)
{
  auto const bp = breakpoints(spec);
  if (spec.b() < bp.v1)
  {
    return Regime::BelowV1;
  }
  if (spec.b() < bp.v2)
  {
    return Regime::V1ToV2;
  }
  if (spec.b() < bp.v3)
  {
    return Regime::V2ToV3;
  }
  return Regime::AboveV3;
}

char const *to_string(Regime r)
{
  switch (r)
  {
  case Regime::BelowV1:
    return "(a,v1)";
  case Regime::V1ToV2:
    return "[v1,v2)";
  case Regime::V2ToV3:
    return "[v2,v3)";
  case Regime::AboveV3:
    return "[v3,inf)";
  }
  return "?";
}

Rational price_b_revenue(AuctionSpec const &spec)
{
  return Rational(2) * (one() - pow(spec.p(), static_cast<unsigned>(spec.n()))) * spec.b();
}

Rational optimal_dic_revenue(AuctionSpec const &spec)
{
  auto const m = class_probabilities(spec);
  auto const c = corrections(spec);
  return price_b_revenue(spec) + m.p0 * c.all_low + m.p1 * c.half_ratio + m.p2 * c.full_ratio;
}

Rational optimal_bic_revenue(AuctionSpec const &spec)
{
  auto const m = class_probabilities(spec);
  auto const c = corrections(spec);
  return price_b_revenue(spec) + m.p0 * c.all_low + (m.p1 + m.p2) * c.half_ratio;
}

Rational separate_sale_revenue(AuctionSpec const &spec)
{
  auto const     n        = static_cast<unsigned>(spec.n());
  Rational const at_b     = (one() - pow(spec.p(), n)) * spec.b();
  Rational const pn1      = pow(spec.p(), n - 1);
  Rational const at_mixed = pn1 * spec.a() + (one() - pn1) * spec.b();
  return Rational(2) * max(at_b, at_mixed);
}

Rational grand_bundle_revenue(AuctionSpec const &spec)
{
  Rational const &p = spec.p();
  Rational const  q = one() - p;
  auto const      n = static_cast<unsigned>(spec.n());
  // per-buyer bundle value: 2a w.p. p^2, a+b w.p. 2pq, 2b w.p. q^2
  struct Atom
  {
    Rational price;
    Rational below;  // Pr{one buyer's bundle value < price}
  };
  std::vector<Atom> const atoms{
      {Rational(2) * spec.a(), Rational(0)},
      {spec.a() + spec.b(), p * p},
      {Rational(2) * spec.b(), p * p + Rational(2) * p * q},
  };
  Rational best;
  for (auto const &atom : atoms)
  {
    best = max(best, atom.price * (one() - pow(atom.below, n)));
  }
  return best;
}

RevenueReport revenue_report(AuctionSpec const &spec)
{
  RevenueReport r;
  r.dic      = optimal_dic_revenue(spec);
  r.bic      = optimal_bic_revenue(spec);
  r.separate = separate_sale_revenue(spec);
  r.price_b  = price_b_revenue(spec);
  r.bundle   = grand_bundle_revenue(spec);
  r.flags    = indicator_flags(spec);
  r.points   = breakpoints(spec);
  if (!(r.bic >= r.dic && r.dic >= r.separate && r.separate >= r.price_b))
  {
    throw std::logic_error("revenue ordering violated at " + spec.str());
  }
  return r;
}

std::vector<SweepRow> sweep_b(int n, Rational const &p, Rational const &a, Rational const &b_lo,
                              Rational const &b_hi, int steps)
{
  if (steps < 2)
  {
    throw SpecError("sweep needs at least 2 steps");
  }
  if (!(b_lo > a))
  {
    throw SpecError("sweep range must lie above a");
  }
  if (b_hi < b_lo)
  {
    throw SpecError("sweep range is empty");
  }
  // validates n and p
  AuctionSpec const probe(n, p, a, b_lo);
  auto const        bp = breakpoints(probe);

  std::vector<Rational> grid;
  for (int k = 0; k < steps; ++k)
  {
    grid.push_back(b_lo + (b_hi - b_lo) * Rational(k, steps - 1));
  }
  std::vector<Rational> special;
  for (auto const &v : {bp.v1, bp.v2, bp.v3})
  {
    if (v > a && std::find(special.begin(), special.end(), v) == special.end())
    {
      special.push_back(v);
    }
  }

  std::vector<SweepRow> rows;
  auto add = [&](Rational const &b, bool is_break) {
    for (auto &row : rows)
    {
      if (row.b == b)
      {
        row.breakpoint = row.breakpoint || is_break;
        return;
      }
    }
    AuctionSpec const spec(n, p, a, b);
    rows.push_back({b, optimal_dic_revenue(spec), optimal_bic_revenue(spec), separate_sale_revenue(spec),
                    indicator_flags(spec), is_break});
  };
  for (auto const &b : grid)
  {
    add(b, false);
  }
  for (auto const &b : special)
  {
    add(b, true);
  }
  std::sort(rows.begin(), rows.end(), [](SweepRow const &x, SweepRow const &y) { return x.b < y.b; });
  return rows;
}

std::vector<Rational> regime_samples(int n, Rational const &p, Rational const &a)
{
  AuctionSpec const probe(n, p, a, a + Rational(1));
  auto const        bp = breakpoints(probe);
  std::vector<Rational> out;
  Rational lo = a;
  for (auto const &hi : {bp.v1, bp.v2, bp.v3})
  {
    if (hi > lo)
    {
      for (long k = 1; k <= 3; ++k)
      {
        out.push_back(lo + (hi - lo) * Rational(k, 4));
      }
      lo = hi;
    }
  }
  Rational const unit = max(a, Rational(1));
  for (auto const &step : {Rational(1, 2), Rational(1), Rational(2)})
  {
    out.push_back(bp.v3 + step * unit);
  }
  for (auto const &v : {bp.v1, bp.v2, bp.v3})
  {
    if (v > a)
    {
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<AuctionSpec> certification_grid(std::vector<int> const &ns)
{
  std::vector<AuctionSpec> grid;
  for (int n : ns)
  {
    for (auto const &p : {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4)})
    {
      for (auto const &a : {Rational(0), Rational(1)})
      {
        for (auto const &b : regime_samples(n, p, a))
        {
          grid.emplace_back(n, p, a, b);
        }
      }
    }
  }
  return grid;
}

}  // namespace twoitem
