#pragma once

#include "twoitem/model.hpp"
#include "twoitem/rational.hpp"

#include <vector>

namespace twoitem {

/// Points on the b axis where the optimal revenue curves change slope:
/// v1 = (1+p^2)/(1-p^2) a, v2 = a/(1-p), v3 = (1+p)/(1-p) a.
struct Breakpoints
{
  Rational v1;
  Rational v2;
  Rational v3;
};

Breakpoints breakpoints(AuctionSpec const &spec);

/// alpha = [b < v1], beta = [b < v3], gamma = [b < v2].
struct IndicatorFlags
{
  bool alpha = false;
  bool beta  = false;
  bool gamma = false;
};

IndicatorFlags indicator_flags(AuctionSpec const &spec);

/// The four half-open pieces (a,v1), [v1,v2), [v2,v3), [v3,inf) of the b axis.
enum class Regime
{
  BelowV1 = 1,
  V1ToV2  = 2,
  V2ToV3  = 3,
  AboveV3 = 4,
};

Regime regime(AuctionSpec const &spec);
char const *to_string(Regime r);

/// Maximum revenue over IR and dominant-strategy IC mechanisms.
Rational optimal_dic_revenue(AuctionSpec const &spec);
/// Maximum revenue over BIR and Bayesian IC mechanisms.
Rational optimal_bic_revenue(AuctionSpec const &spec);
/// Each item sold separately by the optimal single-item auction:
/// 2 max{(1-p^n) b, p^(n-1) a + (1-p^(n-1)) b}.
Rational separate_sale_revenue(AuctionSpec const &spec);
/// Each item sold separately at price b: 2(1-p^n) b.
Rational price_b_revenue(AuctionSpec const &spec);
/// Best single posted price for the bundle of both items.
Rational grand_bundle_revenue(AuctionSpec const &spec);

struct RevenueReport
{
  Rational       dic;
  Rational       bic;
  Rational       separate;
  Rational       price_b;
  Rational       bundle;
  IndicatorFlags flags;
  Breakpoints    points;
};

/// Throws std::logic_error if bic >= dic >= separate >= price_b fails.
RevenueReport revenue_report(AuctionSpec const &spec);

struct SweepRow
{
  Rational       b;
  Rational       dic;
  Rational       bic;
  Rational       separate;
  IndicatorFlags flags;
  bool           breakpoint = false;
};

/// Evaluates the revenue curves at `steps` evenly spaced b values from
/// b_lo to b_hi inclusive, plus every breakpoint above a (even outside the
/// range), flagged; rows are sorted by b and never repeat a b value. Throws SpecError if b_lo <= a, b_hi < b_lo
/// or steps < 2.
std::vector<SweepRow> sweep_b(int n, Rational const &p, Rational const &a, Rational const &b_lo,
                              Rational const &b_hi, int steps);

/// Sample b values for (n, p, a): three interior points of each nonempty
/// piece (1/4, 1/2, 3/4 of the bounded ones; v3 + {1/2, 1, 2} max(a, 1) for
/// the last) followed by the breakpoints lying above a. Sorted, no repeats.
std::vector<Rational> regime_samples(int n, Rational const &p, Rational const &a);

/// n in {2, 3}, p in {1/4, 1/3, 1/2, 2/3, 3/4}, a in {0, 1}, b from
/// regime_samples; ordered by n, p, a, b.
std::vector<AuctionSpec> certification_grid(std::vector<int> const &ns = {2, 3});

}  // namespace twoitem
