#include "support.hpp"

#include "twoitem/model.hpp"

#include <doctest.h>

#include <set>

using namespace twoitem;

namespace {

TypeProfile prof(std::initializer_list<char const *> rows)
{
  TypeProfile t;
  for (auto const *r : rows)
  {
    t.rows.push_back(BuyerType::parse(r));
  }
  return t;
}

std::string spec_error(int n, Rational p, Rational a, Rational b)
{
  try
  {
    AuctionSpec(n, p, a, b);
  }
  catch (SpecError const &e)
  {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("rational")
{
  TEST_CASE("lowest terms and sign")
  {
    CHECK(Rational(6, 4).str() == "3/2");
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(8, 4).str() == "2");
    CHECK(Rational(0, 5).str() == "0");
  }

  TEST_CASE("parse exact strings")
  {
    CHECK(Rational::parse("1/2") == Rational(1, 2));
    CHECK(Rational::parse("5/3") == Rational(5, 3));
    CHECK(Rational::parse("2") == Rational(2));
    CHECK(Rational::parse("-4/6") == Rational(-2, 3));
    CHECK(Rational::parse(" 7/14 ") == Rational(1, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
  }

  TEST_CASE("decimals only on request")
  {
    CHECK_THROWS_AS(Rational::parse("0.25"), std::invalid_argument);
    CHECK(Rational::parse("0.25", true) == Rational(1, 4));
    CHECK(Rational::parse("-1.5", true) == Rational(-3, 2));
    CHECK(Rational::parse("3.", true) == Rational(3));
  }

  TEST_CASE("decimal rendering")
  {
    CHECK(Rational(25, 8).decimal() == "3.125");
    CHECK(Rational(1, 3).decimal() == "0.333333333333");
    CHECK(Rational(5, 3).decimal() == "1.66666666667");
    CHECK(Rational(-2, 3).decimal() == "-0.666666666667");
    CHECK(Rational(0).decimal() == "0");
    CHECK(Rational(9, 2).decimal() == "4.5");
    CHECK(Rational(1, 50).decimal() == "0.02");
    CHECK(Rational(2, 3).decimal(3) == "0.667");
  }

  TEST_CASE("exact arithmetic")
  {
    Rational const x(1, 3);
    CHECK(x + x + x == Rational(1));
    CHECK((Rational(51, 16) - Rational(25, 8)) / Rational(25, 8) == Rational(1, 50));
    CHECK(pow(Rational(1, 2), 4) == Rational(1, 16));
    CHECK(positive_part(Rational(-3)) == Rational(0));
    CHECK(positive_part(Rational(3, 7)) == Rational(3, 7));
    CHECK(max(Rational(1, 2), Rational(2, 3)) == Rational(2, 3));
    CHECK(min(Rational(1, 2), Rational(2, 3)) == Rational(1, 2));
    CHECK(abs(Rational(-5, 4)) == Rational(5, 4));
    CHECK(Rational(1, 3) < Rational(1, 2));
  }
}

TEST_SUITE("core_model")
{
  TEST_CASE("spec validation")
  {
    CHECK(spec_error(2, 1, 1, 2) == "p must lie in (0,1)");
    CHECK(spec_error(2, 0, 1, 2) == "p must lie in (0,1)");
    CHECK(spec_error(1, Rational(1, 2), 1, 2) == "n must be at least 2");
    CHECK(spec_error(2, Rational(1, 2), -1, 2) == "a must be nonnegative");
    CHECK(spec_error(2, Rational(1, 2), 2, 2) == "b must exceed a");
    CHECK(spec_error(2, Rational(1, 2), 0, 1).empty());
    CHECK(AuctionSpec::exploratory(1, Rational(1, 2), 1, 2).is_exploratory());
    CHECK_THROWS_AS(AuctionSpec::exploratory(0, Rational(1, 2), 1, 2), SpecError);
  }

  TEST_CASE("buyer types")
  {
    CHECK(kAA.index() == 0);
    CHECK(kAB.index() == 1);
    CHECK(kBA.index() == 2);
    CHECK(kBB.index() == 3);
    for (std::size_t k = 0; k < 4; ++k)
    {
      auto const t = BuyerType::from_index(k);
      CHECK(BuyerType::parse(t.str()) == t);
    }
    CHECK(kAB.swapped() == kBA);
    CHECK_THROWS_AS(BuyerType::parse("ac"), SpecError);
  }

  TEST_CASE("enumeration at n=2, p=1/2 is uniform")
  {
    AuctionSpec const s(2, Rational(1, 2), 1, 2);
    auto const        all = enumerate_profiles(s);
    REQUIRE(all.size() == 16);
    for (auto const &wp : all)
    {
      CHECK(wp.probability == Rational(1, 16));
    }
    CHECK(all[0].profile == prof({"aa", "aa"}));
    CHECK(all[1].profile == prof({"aa", "ab"}));
    CHECK(all[4].profile == prof({"ab", "aa"}));
    CHECK(all[15].profile == prof({"bb", "bb"}));
  }

  TEST_CASE("enumeration order, index round trip and weights")
  {
    for (int n : {2, 3, 4})
    {
      for (auto const &p : oracle::p_grid())
      {
        AuctionSpec const s(n, p, 1, 3);
        auto const        all = enumerate_profiles(s);
        REQUIRE(static_cast<long>(all.size()) == oracle::profiles(n));
        Rational total;
        for (std::size_t k = 0; k < all.size(); ++k)
        {
          auto const d = oracle::digits(n, static_cast<long>(k));
          for (int i = 0; i < n; ++i)
          {
            CHECK(all[k].profile[static_cast<std::size_t>(i)].index() == static_cast<std::size_t>(d[static_cast<std::size_t>(i)]));
          }
          CHECK(profile_index(all[k].profile) == k);
          CHECK(profile_at(static_cast<std::size_t>(n), k) == all[k].profile);
          CHECK(all[k].probability == oracle::weight(s, d));
          CHECK(all[k].probability == profile_probability(s, all[k].profile));
          total += all[k].probability;
        }
        CHECK(total == Rational(1));
      }
    }
  }

  TEST_CASE("all-low profile has weight p^4 at n=2")
  {
    for (auto const &p : oracle::p_grid())
    {
      AuctionSpec const s(2, p, 1, 2);
      CHECK(enumerate_profiles(s)[0].probability == pow(p, 4));
    }
  }

  TEST_CASE("enumeration cap")
  {
    AuctionSpec const s(3, Rational(1, 2), 1, 2);
    CHECK_THROWS_AS(enumerate_profiles(s, 16), CapExceeded);
    CHECK(enumerate_profiles(s, 64).size() == 64);
    AuctionSpec const big(11, Rational(1, 2), 1, 2);
    try
    {
      enumerate_profiles(big);
      FAIL("expected CapExceeded");
    }
    catch (CapExceeded const &e)
    {
      CHECK(std::string(e.what()).find("instance too large for exhaustive mode") != std::string::npos);
    }
    CHECK(profile_count(10) == std::optional<std::size_t>(std::size_t{1} << 20));
    CHECK_FALSE(profile_count(11).has_value());
  }

  TEST_CASE("hierarchy examples")
  {
    auto const h1 = HierarchyScheme::ranked({kBB, kBA, kAB, kAA});
    auto const h2 = HierarchyScheme::ranked({kBB, kAB, kBA, kAA});
    auto const s1 = allocate_hierarchy(h1, prof({"ba", "bb"}));
    CHECK(s1[0] == Rational(0));
    CHECK(s1[1] == Rational(1));
    auto const s2 = allocate_hierarchy(h2, prof({"ab", "ab"}));
    CHECK(s2[0] == Rational(1, 2));
    CHECK(s2[1] == Rational(1, 2));
    auto const short_h = HierarchyScheme::ranked({kBB, kBA});
    auto const s3      = allocate_hierarchy(short_h, prof({"ab", "ab"}));
    CHECK(s3[0] == Rational(0));
    CHECK(s3[1] == Rational(0));
    CHECK(short_h.rank(kAB) == std::nullopt);
    CHECK(short_h.rank(kBB) == std::optional<std::size_t>(1));
    CHECK(short_h.rank(kBA) == std::optional<std::size_t>(2));
  }

  TEST_CASE("hierarchy with a shared level")
  {
    HierarchyScheme const h({{kBB}, {kAB, kBA}});
    auto const            s = allocate_hierarchy(h, prof({"ab", "ba", "aa"}));
    CHECK(s[0] == Rational(1, 2));
    CHECK(s[1] == Rational(1, 2));
    CHECK(s[2] == Rational(0));
  }

  TEST_CASE("hierarchy rejects repeated types")
  {
    CHECK_THROWS_AS(HierarchyScheme({{kBB}, {kAB, kBB}}), SpecError);
    CHECK_THROWS_AS(HierarchyScheme::ranked({kAB, kAB}), SpecError);
  }

  TEST_CASE("hierarchy allocations respect supply")
  {
    std::vector<HierarchyScheme> const schemes{
        HierarchyScheme::ranked({kBB, kBA, kAB, kAA}), HierarchyScheme::ranked({kBB, kAB, kBA}),
        HierarchyScheme::ranked({kBB, kBA}), HierarchyScheme({{kAA, kBB}, {kAB}}), HierarchyScheme()};
    for (std::size_t n : {2U, 3U, 4U})
    {
      for (std::size_t k = 0; k < static_cast<std::size_t>(oracle::profiles(static_cast<int>(n))); ++k)
      {
        auto const t = profile_at(n, k);
        for (auto const &h : schemes)
        {
          auto const shares = allocate_hierarchy(h, t);
          Rational   total;
          bool       any_ranked = false;
          for (std::size_t i = 0; i < n; ++i)
          {
            CHECK(shares[i] >= Rational(0));
            total += shares[i];
            any_ranked = any_ranked || h.rank(t[i]).has_value();
          }
          CHECK(total == (any_ranked ? Rational(1) : Rational(0)));
        }
        Allocation const alloc = allocate_hierarchies(schemes[0], schemes[1], t);
        CHECK(alloc.feasible());
      }
    }
  }

  TEST_CASE("classification examples")
  {
    auto const s0 = classify_profile(prof({"aa", "aa", "aa"}));
    CHECK(s0.cls == ProfileClass::S0);
    CHECK(s0.cheap[0]);
    CHECK(s0.cheap[1]);
    CHECK(s0.active.empty());

    auto const s1 = classify_profile(prof({"ba", "aa"}));
    CHECK(s1.cls == ProfileClass::S1);
    CHECK_FALSE(s1.cheap[0]);
    CHECK(s1.cheap[1]);
    CHECK(s1.active.size() == 1);

    auto const s2 = classify_profile(prof({"ab", "ab"}));
    CHECK(s2.cls == ProfileClass::S2);
    CHECK(s2.cheap[0]);
    CHECK_FALSE(s2.cheap[1]);
    CHECK(s2.active.size() == 2);

    auto const other = classify_profile(prof({"ab", "ba"}));
    CHECK(other.cls == ProfileClass::Other);
    CHECK(other.cheap_count() == 0);

    CHECK(is_one_cheap({kAB, kAA}));
    CHECK_FALSE(is_one_cheap({kAA, kAA}));
    CHECK_FALSE(is_one_cheap({kBB}));
    CHECK(count_active({kAB, kAA, kBB}) == 2);
  }

  TEST_CASE("class structure: one S0 profile, 2n S1 profiles")
  {
    for (std::size_t n : {2U, 3U, 4U})
    {
      std::size_t counts[4] = {0, 0, 0, 0};
      for (std::size_t k = 0; k < static_cast<std::size_t>(oracle::profiles(static_cast<int>(n))); ++k)
      {
        auto const c = classify_profile(profile_at(n, k));
        ++counts[static_cast<int>(c.cls)];
        if (c.cls == ProfileClass::S1 || c.cls == ProfileClass::S2)
        {
          CHECK(c.cheap_count() == 1);
        }
      }
      CHECK(counts[0] == 1);
      CHECK(counts[1] == 2 * n);
    }
  }

  TEST_CASE("class probabilities")
  {
    auto const half = class_probabilities(AuctionSpec(2, Rational(1, 2), 1, 2));
    CHECK(half.p0 == Rational(1, 16));
    CHECK(half.p1 == Rational(1, 4));
    CHECK(half.p2 == Rational(1, 8));
    auto const third = class_probabilities(AuctionSpec(2, Rational(1, 3), 1, 2));
    CHECK(third.p0 == Rational(1, 81));
    CHECK(third.p1 == Rational(8, 81));
    CHECK(third.p2 == Rational(8, 81));
  }

  TEST_CASE("class probabilities equal enumerated masses")
  {
    for (int n : {2, 3, 4})
    {
      for (auto const &p : oracle::p_grid())
      {
        AuctionSpec const s(n, p, 1, 2);
        auto const        closed = class_probabilities(s);
        auto const        counted = oracle::masses(s);
        CHECK(closed.p0 == counted.p0);
        CHECK(closed.p1 == counted.p1);
        CHECK(closed.p2 == counted.p2);
        CHECK(closed.p2 >= Rational(0));
      }
    }
  }

  TEST_CASE("profile helpers")
  {
    auto const t = prof({"ab", "ba", "aa"});
    CHECK(t.count_low_entries() == 4);
    CHECK(t.with(2, kBB) == prof({"ab", "ba", "bb"}));
    CHECK(t.items_swapped() == prof({"ba", "ab", "aa"}));
    CHECK(t.str() == "ab,ba,aa");
  }
}
