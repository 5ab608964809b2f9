#include "twoitem/closed_form.hpp"
#include "twoitem/continuous.hpp"

#include <doctest.h>

using namespace twoitem;

namespace {

Rational absolute(Rational const &x)
{
  return x.sign() < 0 ? -x : x;
}

}  // namespace

TEST_SUITE("continuous_lab")
{
  TEST_CASE("discretisation atoms")
  {
    auto const one = discretize({2, Rational(7), Rational(2), 1});
    CHECK(one.values == std::vector<Rational>{Rational(15, 2), Rational(29, 2)});
    CHECK(one.weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

    auto const two = discretize({2, Rational(6), Rational(2), 2});
    CHECK(two.values == std::vector<Rational>{Rational(25, 4), Rational(27, 4), Rational(49, 4), Rational(51, 4)});
    for (auto const &w : two.weights)
    {
      CHECK(w == Rational(1, 4));
    }

    for (int m = 1; m <= 3; ++m)
    {
      auto const inst = discretize({2, Rational(10), Rational(3), m});
      CHECK(inst.support() == static_cast<std::size_t>(2 * m));
      Rational total;
      Rational low_mass;
      for (std::size_t s = 0; s < inst.support(); ++s)
      {
        total += inst.weights[s];
        if (inst.values[s] <= Rational(11))
        {
          low_mass += inst.weights[s];
        }
        CHECK(inst.values[s] > Rational(10));
        CHECK(inst.values[s] < Rational(31));
      }
      CHECK(total == Rational(1));
      CHECK(low_mass == Rational(1, 2));
      CHECK_NOTHROW(inst.validate());
    }
  }

  TEST_CASE("spec validation")
  {
    CHECK_NOTHROW(ContinuousSpec{2, Rational(2), Rational(2), 1}.validate());
    CHECK_THROWS_AS(ContinuousSpec({3, Rational(10), Rational(2), 1}).validate(), SpecError);
    CHECK_THROWS_AS(ContinuousSpec({2, Rational(10), Rational(1), 1}).validate(), SpecError);
    CHECK_THROWS_AS(ContinuousSpec({2, Rational(1), Rational(2), 1}).validate(), SpecError);
    CHECK_THROWS_AS(ContinuousSpec({2, Rational(10), Rational(2), 0}).validate(), SpecError);
    CHECK_THROWS_AS(ContinuousSpec({2, Rational(10), Rational(2), 4}).validate(), CapExceeded);
    CHECK_NOTHROW(ContinuousSpec({2, Rational(10), Rational(2), 4}).validate(4));
    CHECK_THROWS_AS(discretize({2, Rational(10), Rational(2), 4}), CapExceeded);
    try
    {
      ContinuousSpec{2, Rational(10), Rational(2), 5}.validate();
    }
    catch (CapExceeded const &e)
    {
      CHECK(std::string(e.what()).find("grid_m = 5") != std::string::npos);
    }
  }

  TEST_CASE("single midpoint collapses to the two-point instance")
  {
    for (Rational a : {Rational(3), Rational(10), Rational(20)})
    {
      ContinuousSpec const c{2, a, Rational(2), 1};
      AuctionSpec const    collapsed(2, Rational(1, 2), a + Rational(1, 2), 2 * a + Rational(1, 2));
      Rational const       d = lp_over_grid(c, Implementation::Dominant);
      Rational const       b = lp_over_grid(c, Implementation::Bayesian);
      CHECK(d == optimal_dic_revenue(collapsed));
      CHECK(b == optimal_bic_revenue(collapsed));
      CHECK(d == solve_optimum(build_dic_lp(collapsed)));
      CHECK(b == solve_optimum(build_bic_lp(collapsed)));
    }
    CHECK(lp_over_grid({2, Rational(10), Rational(2), 1}, Implementation::Dominant) == Rational(515, 16));
    CHECK(lp_over_grid({2, Rational(10), Rational(2), 1}, Implementation::Bayesian) == Rational(525, 16));
  }

  TEST_CASE("normalised instance")
  {
    auto const s = normalized_two_point({2, Rational(20), Rational(3), 2});
    CHECK(s == AuctionSpec(2, Rational(1, 2), 1, 3));
  }

  TEST_CASE("probe rows at one midpoint")
  {
    auto const rows = scale_probe({Rational(10), Rational(40)}, 1);
    REQUIRE(rows.size() == 2);
    for (auto const &r : rows)
    {
      CHECK(r.grid_m == 1);
      CHECK(r.lp_bic >= r.lp_dic);
      CHECK(r.dic_per_a == r.lp_dic / r.a);
      CHECK(r.bic_per_a == r.lp_bic / r.a);
      CHECK(r.target_dic == Rational(25, 8));
      CHECK(r.target_bic == Rational(51, 16));
      REQUIRE(r.dic_in_band.has_value());
      REQUIRE(r.bic_in_band.has_value());
      CHECK(*r.dic_in_band == (r.lp_dic >= Rational(25, 8) * r.a && r.lp_dic <= Rational(25, 8) * r.a + Rational(5, 4)));
      CHECK(*r.bic_in_band ==
            (r.lp_bic >= Rational(51, 16) * r.a && r.lp_bic <= Rational(51, 16) * r.a + Rational(3, 2)));
    }
    // closer to the limiting ratio at the larger scale
    CHECK(absolute(rows[1].dic_per_a - Rational(25, 8)) <= absolute(rows[0].dic_per_a - Rational(25, 8)));
    CHECK(absolute(rows[1].bic_per_a - Rational(51, 16)) <= absolute(rows[0].bic_per_a - Rational(51, 16)));
    // the relative gap climbs toward 1/50
    Rational const target(1, 50);
    CHECK(absolute(rows[1].relative_gap() - target) < absolute(rows[0].relative_gap() - target));

    auto const other = scale_probe({Rational(10)}, 1, Rational(3));
    REQUIRE(other.size() == 1);
    CHECK_FALSE(other[0].dic_in_band.has_value());
    CHECK_FALSE(other[0].bic_in_band.has_value());
    CHECK(other[0].target_dic == optimal_dic_revenue(AuctionSpec(2, Rational(1, 2), 1, 3)));
  }

  TEST_CASE("two midpoints per interval at a = 20")
  {
    auto const rows = scale_probe({Rational(20)}, 2);
    REQUIRE(rows.size() == 1);
    auto const &r = rows[0];
    CHECK(r.lp_bic > r.lp_dic);
    CHECK(r.lp_dic == Rational(32305, 512));
    CHECK(r.lp_bic == Rational(4119, 64));
    CHECK(r.dic_in_band == std::optional<bool>(true));
    CHECK(r.bic_in_band == std::optional<bool>(true));
  }
}
