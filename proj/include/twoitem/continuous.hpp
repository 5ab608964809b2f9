#pragma once

#include "twoitem/auction_lp.hpp"

#include <optional>
#include <vector>

namespace twoitem {

/// Per-item values uniform on [a, a+1] u [lambda a, lambda a + 1], IID across
/// buyers and items, approximated on `grid_m` midpoints per interval.
struct ContinuousSpec
{
  int      n = 2;
  Rational a;
  Rational lambda{2};
  int      grid_m = 1;

  /// Throws SpecError unless n == 2, lambda > 1, a > 1/(lambda-1) and
  /// 1 <= grid_m <= max_grid.
  void validate(int max_grid = 3) const;
};

inline constexpr int kDefaultMaxGrid = 3;

/// Atoms a + (s+1/2)/m and lambda a + (s+1/2)/m for s < m, weight 1/(2m) each.
FiniteInstance discretize(ContinuousSpec const &spec, int max_grid = kDefaultMaxGrid);

/// Exact LP optimum over the discretised instance.
Rational lp_over_grid(ContinuousSpec const &spec, Implementation impl, int max_grid = kDefaultMaxGrid);

/// The two-point instance (2, 1/2, 1, lambda) whose closed forms scale with a.
AuctionSpec normalized_two_point(ContinuousSpec const &spec);

struct ProbeRow
{
  Rational a;
  int      grid_m = 1;
  Rational lp_dic;
  Rational lp_bic;
  Rational dic_per_a;
  Rational bic_per_a;
  Rational target_dic;  // closed-form DIC revenue of the normalised instance
  Rational target_bic;
  /// Only reported for lambda = 2, where the bands
  /// [25/8 a, 25/8 a + 5/4] and [51/16 a, 51/16 a + 3/2] are known.
  /// Indicative: the LP value is for the discretised distribution.
  std::optional<bool> dic_in_band;
  std::optional<bool> bic_in_band;

  /// (lp_bic - lp_dic) / lp_dic
  Rational relative_gap() const
  {
    return (lp_bic - lp_dic) / lp_dic;
  }
};

std::vector<ProbeRow> scale_probe(std::vector<Rational> const &a_values, int grid_m,
                                       Rational const &lambda = Rational(2), int max_grid = kDefaultMaxGrid);

}  // namespace twoitem
