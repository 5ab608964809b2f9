#include "twoitem/continuous.hpp"

#include "twoitem/closed_form.hpp"

namespace twoitem {

void ContinuousSpec::validate(int max_grid) const
{
  if (n != 2)
  {
    throw SpecError("the discretisation harness supports n = 2 only");
  }
  if (!(lambda > Rational(1)))
  {
    throw SpecError("lambda must exceed 1");
  }
  if (!(a > Rational(1) / (lambda - Rational(1))))
  {
    throw SpecError("a must exceed 1/(lambda-1) so the two intervals are disjoint");
  }
  if (grid_m < 1)
  {
    throw SpecError("grid_m must be positive");
  }
  if (grid_m > max_grid)
  {
    throw CapExceeded("grid_m = " + std::to_string(grid_m) + " exceeds the cap of " + std::to_string(max_grid));
  }
}

FiniteInstance discretize(ContinuousSpec const &spec, int max_grid)
{
  spec.validate(max_grid);
  FiniteInstance inst;
  inst.buyers = static_cast<std::size_t>(spec.n);
  Rational const weight(1, 2L * spec.grid_m);
  for (Rational const &start : {spec.a, spec.lambda * spec.a})
  {
    for (int s = 0; s < spec.grid_m; ++s)
    {
      inst.values.push_back(start + Rational(2L * s + 1, 2L * spec.grid_m));
      inst.weights.push_back(weight);
    }
  }
  return inst;
}

Rational lp_over_grid(ContinuousSpec const &spec, Implementation impl, int max_grid)
{
  AuctionProgram const program(discretize(spec, max_grid), impl, BuildOptions{kDefaultProfileCap, true});
  return solve_optimum(program);
}

AuctionSpec normalized_two_point(ContinuousSpec const &spec)
{
  return AuctionSpec(spec.n, Rational(1, 2), Rational(1), spec.lambda);
}

std::vector<ProbeRow> scale_probe(std::vector<Rational> const &a_values, int grid_m, Rational const &lambda,
                                       int max_grid)
{
  std::vector<ProbeRow> rows;
  for (auto const &a : a_values)
  {
    ContinuousSpec const spec{2, a, lambda, grid_m};
    spec.validate(max_grid);
    AuctionSpec const norm = normalized_two_point(spec);
    ProbeRow          row;
    row.a          = a;
    row.grid_m     = grid_m;
    row.lp_dic     = lp_over_grid(spec, Implementation::Dominant, max_grid);
    row.lp_bic     = lp_over_grid(spec, Implementation::Bayesian, max_grid);
    row.dic_per_a  = row.lp_dic / a;
    row.bic_per_a  = row.lp_bic / a;
    row.target_dic = optimal_dic_revenue(norm);
    row.target_bic = optimal_bic_revenue(norm);
    if (lambda == Rational(2))
    {
      row.dic_in_band = row.lp_dic >= Rational(25, 8) * a && row.lp_dic <= Rational(25, 8) * a + Rational(5, 4);
      row.bic_in_band = row.lp_bic >= Rational(51, 16) * a && row.lp_bic <= Rational(51, 16) * a + Rational(3, 2);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace twoitem
