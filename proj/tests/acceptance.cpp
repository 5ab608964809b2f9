// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "cli_app.hpp"

#include "twoitem/audit.hpp"
#include "twoitem/auction_lp.hpp"
#include "twoitem/closed_form.hpp"
#include "twoitem/continuous.hpp"
#include "twoitem/mechanism.hpp"
#include "twoitem/serialize.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace twoitem;

namespace {

struct Outcome
{
  bool        ok = true;
  std::string detail;

  void fail(std::string const &why)
  {
    if (ok)
    {
      detail = why;
    }
    ok = false;
  }
  void expect(bool cond, std::string const &why)
  {
    if (!cond)
    {
      fail(why);
    }
  }
};

std::string cli(std::vector<std::string> args, int &code)
{
  std::ostringstream out;
  std::ostringstream err;
  code = cli::run(std::move(args), out, err);
  return out.str();
}

std::vector<std::vector<std::string>> csv_rows(std::string const &text)
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream                    is(text);
  for (std::string line; std::getline(is, line);)
  {
    std::vector<std::string> cells;
    std::istringstream       ls(line);
    for (std::string cell; std::getline(ls, cell, ',');)
    {
      cells.push_back(cell);
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

Rational frac(std::string const &num, std::string const &den)
{
  return Rational::parse(num + "/" + den);
}

Outcome example_values()
{
  Outcome o;
  int     code = 0;
  auto    j    = Json::parse(cli({"--format", "json", "formulas", "--n", "2", "--p", "1/2", "--a", "1", "--b", "2"}, code));
  o.expect(code == 0, "formulas exited nonzero");
  o.expect(j.at("r_dic") == "25/8", "r_D is " + j.at("r_dic").get<std::string>());
  o.expect(j.at("r_bic") == "51/16", "r_B is " + j.at("r_bic").get<std::string>());
  o.expect(j.at("srev") == "3/1", "SREV is " + j.at("srev").get<std::string>());
  o.expect(j.at("bundle") == "45/16", "bundle is " + j.at("bundle").get<std::string>());
  return o;
}

Outcome two_percent()
{
  Outcome           o;
  AuctionSpec const s(2, Rational(1, 2), 1, 2);
  Rational const    gap = (optimal_bic_revenue(s) - optimal_dic_revenue(s)) / optimal_dic_revenue(s);
  o.expect(gap == Rational(1, 50), "gap is " + gap.str());
  return o;
}

Outcome certification(std::vector<AuctionSpec> const &grid)
{
  Outcome o;
  for (auto const &s : grid)
  {
    auto const r = certify_revenue_formulas(s);
    o.expect(r.equal_dic, "lp_D " + r.lp_dic.str() + " != r_D " + r.formula_dic.str() + " at " + s.str());
    o.expect(r.equal_bic, "lp_B " + r.lp_bic.str() + " != r_B " + r.formula_bic.str() + " at " + s.str());
  }
  o.detail = o.ok ? std::to_string(grid.size()) + " specs" : o.detail;
  return o;
}

Outcome achievability(std::vector<AuctionSpec> const &grid)
{
  Outcome o;
  for (auto const &s : grid)
  {
    auto const d = build_dic_optimal(s);
    auto const b = build_bic_optimal(s);
    o.expect(expected_revenue(d) == optimal_dic_revenue(s), "M_D revenue off at " + s.str());
    o.expect(expected_revenue(b) == optimal_bic_revenue(s), "M_B revenue off at " + s.str());
    o.expect(check_ir(d).passed && check_dic(d).passed, "M_D fails IR or DIC at " + s.str());
    o.expect(check_ir(b).passed && check_bic(b).passed && check_bir(b).passed,
             "M_B fails IR, BIC or BIR at " + s.str());
  }
  return o;
}

Outcome dic_witness(std::vector<AuctionSpec> const &grid)
{
  Outcome     o;
  std::size_t below = 0;
  for (auto const &s : grid)
  {
    auto const report = check_dic(build_bic_optimal(s));
    if (s.b() >= breakpoints(s).v3)
    {
      o.expect(report.passed, "M_B violates DIC at " + s.str());
      continue;
    }
    ++below;
    std::vector<BuyerType> others(static_cast<std::size_t>(s.n() - 1), kAA);
    others[0]  = kAB;
    bool found = false;
    for (auto const &v : report.violations)
    {
      found = found || (v.buyer == 0 && v.true_type == kBB && v.reported == kAB && v.others == others);
    }
    o.expect(!report.passed && found, "witness row missing at " + s.str());
  }
  o.detail = o.ok ? std::to_string(below) + " specs below v3" : o.detail;
  return o;
}

Outcome mass_equalities(std::vector<AuctionSpec> const &grid)
{
  Outcome o;
  for (auto const &s : grid)
  {
    auto const     f      = indicator_flags(s);
    auto const     masses = class_probabilities(s);
    Rational const gap    = s.b() - s.a();
    Rational const r      = (1 - s.p()) / s.p();

    // class masses by enumeration
    Rational p0;
    Rational p1;
    Rational p2;
    for (auto const &w : enumerate_profiles(s))
    {
      switch (classify_profile(w.profile).cls)
      {
      case ProfileClass::S0:
        p0 += w.probability;
        break;
      case ProfileClass::S1:
        p1 += w.probability;
        break;
      case ProfileClass::S2:
        p2 += w.probability;
        break;
      case ProfileClass::Other:
        break;
      }
    }
    o.expect(p0 == masses.p0 && p1 == masses.p1 && p2 == masses.p2, "class masses off at " + s.str());

    for (bool bic : {false, true})
    {
      auto const     st    = qu_statistics(bic ? build_bic_optimal(s) : build_dic_optimal(s));
      Rational const alpha = f.alpha ? 1 : 0;
      Rational const beta  = f.beta ? 1 : 0;
      Rational const gamma = f.gamma ? 1 : 0;
      std::string const where = (bic ? "M_B at " : "M_D at ") + s.str();
      o.expect(st.Q(ProfileSet::S0) == 2 * masses.p0 * alpha, "Q(S0) off for " + where);
      o.expect(st.Q(ProfileSet::S1) == masses.p1 * beta, "Q(S1) off for " + where);
      o.expect(st.Q(ProfileSet::S2) == masses.p2 * (bic ? beta : gamma), "Q(S2) off for " + where);
      o.expect(st.U(ProfileSet::S1) == gap * r * st.Q(ProfileSet::S0), "U(S1) off for " + where);
      o.expect(st.U(ProfileSet::S1Bumped) == gap / 2 * (r * r * st.Q(ProfileSet::S0) + r * st.Q(ProfileSet::S1)),
               "U(S1') off for " + where);
      o.expect(st.U(ProfileSet::S2Bumped) == (bic ? gap * r / 2 : gap * r) * st.Q(ProfileSet::S2),
               "U(S2') off for " + where);
      o.expect(st.bumped_sets_well_formed, "bumped sets malformed for " + where);
    }
  }
  return o;
}

Outcome piecewise()
{
  Outcome o;
  int     code = 0;
  auto    rows = csv_rows(cli({"sweep", "--n", "2", "--p", "1/2", "--a", "1", "--b-lo", "21/20", "--b-hi", "4", "--steps", "60"}, code));
  o.expect(code == 0 && rows.size() > 2, "sweep failed");
  std::vector<std::pair<Rational, Rational>> segment;
  std::size_t                                merged = 0;
  for (std::size_t k = 1; k < rows.size(); ++k)
  {
    auto const    &c  = rows[k];
    Rational const b  = frac(c[0], c[1]);
    Rational const rd = frac(c[3], c[4]);
    Rational const rb = frac(c[6], c[7]);
    Rational const sr = frac(c[9], c[10]);
    o.expect(rb >= rd && rd >= sr, "ordering broken at b = " + b.str());
    if (b >= Rational(2) && b < Rational(3))
    {
      segment.emplace_back(b, rd);
      o.expect(rd == (3 + 11 * b) / 8, "r_D off the segment at b = " + b.str());
    }
    if (b >= Rational(3))
    {
      ++merged;
      o.expect(rd == rb && rb == sr, "curves apart at b = " + b.str());
    }
  }
  for (std::size_t k = 1; k < segment.size(); ++k)
  {
    Rational const slope = (segment[k].second - segment[k - 1].second) / (segment[k].first - segment[k - 1].first);
    o.expect(slope == Rational(11, 8), "slope " + slope.str() + " on [2,3)");
  }
  o.expect(segment.size() >= 2 && merged >= 2, "too few samples");
  if (o.ok)
  {
    o.detail = std::to_string(segment.size()) + " rows on [2,3), " + std::to_string(merged) + " rows merged";
  }
  return o;
}

Outcome continuous()
{
  Outcome                     o;
  std::vector<Rational> const as{Rational(10), Rational(20), Rational(40)};
  std::ostringstream          summary;
  for (int m : {1, 2})
  {
    auto const rows = scale_probe(as, m);
    for (auto const &r : rows)
    {
      o.expect(r.lp_bic > r.lp_dic, "no gap at a = " + r.a.str() + ", grid_m = " + std::to_string(m));
      summary << " m=" << m << ",a=" << r.a.str() << ":" << r.relative_gap().decimal(4);
      if (m == 1)
      {
        ContinuousSpec const c{2, r.a, Rational(2), 1};
        AuctionSpec const    two(2, Rational(1, 2), r.a + Rational(1, 2), 2 * r.a + Rational(1, 2));
        o.expect(r.lp_dic == solve_optimum(build_dic_lp(two)) && r.lp_bic == solve_optimum(build_bic_lp(two)),
                 "collapse mismatch at a = " + r.a.str());
      }
    }
    auto dist = [](Rational const &x) { return x.sign() < 0 ? -x : x; };
    Rational const far  = dist(rows.front().dic_per_a - Rational(25, 8));
    Rational const near = dist(rows.back().dic_per_a - Rational(25, 8));
    o.expect(near <= far, "no convergence at grid_m = " + std::to_string(m));
  }
  if (o.ok)
  {
    o.detail = "relative gaps" + summary.str();
  }
  return o;
}

Outcome interim_facts(std::vector<AuctionSpec> const &grid)
{
  Outcome o;
  for (auto const &s : grid)
  {
    auto const        mech = build_bic_optimal(s);
    Rational const    gap  = s.b() - s.a();
    std::size_t const aa = kAA.index(), ab = kAB.index(), ba = kBA.index(), bb = kBB.index();
    for (std::size_t i = 0; i < mech.buyers(); ++i)
    {
      auto const  t = interim(mech, i);
      auto const &q = t.allocation;
      auto const &u = t.utility;
      auto geq      = [](auto const &x, auto const &y) { return x[0] >= y[0] && x[1] >= y[1]; };
      o.expect(geq(q[bb], q[ab]) && geq(q[bb], q[ba]) && geq(q[ab], q[aa]) && geq(q[ba], q[aa]),
               "monotonicity fails at " + s.str());
      o.expect(u[ab] - u[aa] == gap * q[aa][1] && u[bb] - u[ab] == gap * q[ab][0], "utility steps off at " + s.str());
      o.expect(q[ab][0] <= q[ab][1] && q[ba][0] >= q[ba][1], "item comparison fails at " + s.str());
    }
  }
  return o;
}

}  // namespace

int main()
{
  auto const grid = certification_grid({2, 3});

  std::vector<std::pair<std::string, std::function<Outcome()>>> const criteria{
      {"example values", example_values},
      {"two percent gap", two_percent},
      {"LP certification grid", [&] { return certification(grid); }},
      {"mechanism achievability and audits", [&] { return achievability(grid); }},
      {"DIC violation witness", [&] { return dic_witness(grid); }},
      {"allocation and utility mass equalities", [&] { return mass_equalities(grid); }},
      {"piecewise structure of the sweep", piecewise},
      {"continuous exploration", continuous},
      {"interim facts", [&] { return interim_facts(grid); }},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k)
  {
    auto const start = std::chrono::steady_clock::now();
    Outcome    o;
    try
    {
      o = criteria[k].second();
    }
    catch (std::exception const &e)
    {
      o.fail(std::string("exception: ") + e.what());
    }
    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.ok ? 0 : 1;
    std::ostringstream line;
    line.precision(3);
    line << "criterion " << (k + 1) << " " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[k].first << " (" << std::fixed
         << secs << " s)";
    if (!o.detail.empty())
    {
      line << ": " << o.detail;
    }
    std::cout << line.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
