#include "twoitem/audit.hpp"

#include <algorithm>
#include <set>

namespace twoitem {

char const *to_string(Condition c)
{
  switch (c)
  {
  case Condition::IR:
    return "IR";
  case Condition::DIC:
    return "DIC";
  case Condition::BIR:
    return "BIR";
  case Condition::BIC:
    return "BIC";
  }
  return "?";
}

char const *to_string(ProfileSet s)
{
  switch (s)
  {
  case ProfileSet::S0:
    return "S0";
  case ProfileSet::S1:
    return "S1";
  case ProfileSet::S2:
    return "S2";
  case ProfileSet::S1Bumped:
    return "S1'";
  case ProfileSet::S2Bumped:
    return "S2'";
  }
  return "?";
}

std::string Violation::str() const
{
  std::string s = "buyer " + std::to_string(buyer + 1) + " type " + true_type.str();
  if (!(reported == true_type))
  {
    s += " reporting " + reported.str();
  }
  if (averaged)
  {
    s += " (averaged)";
  }
  else if (!others.empty())
  {
    s += " against ";
    for (std::size_t k = 0; k < others.size(); ++k)
    {
      s += (k == 0 ? "" : ",") + others[k].str();
    }
  }
  return s + ": " + lhs.str() + " < " + rhs.str();
}

namespace {

std::size_t stride(std::size_t n, std::size_t buyer)
{
  std::size_t s = 1;
  for (std::size_t k = buyer + 1; k < n; ++k)
  {
    s *= 4;
  }
  return s;
}

// Profile index with buyer's digit replaced.
std::size_t substitute(std::size_t index, std::size_t n, std::size_t buyer, BuyerType type)
{
  std::size_t const s     = stride(n, buyer);
  std::size_t const digit = (index / s) % 4;
  return index - digit * s + type.index() * s;
}

std::vector<BuyerType> others_of(TypeProfile const &t, std::size_t buyer)
{
  std::vector<BuyerType> rest;
  for (std::size_t k = 0; k < t.size(); ++k)
  {
    if (k != buyer)
    {
      rest.push_back(t[k]);
    }
  }
  return rest;
}

// Profiles whose `buyer` digit is (a,a), standing for every t_-i in order.
std::vector<std::size_t> base_profiles(Mechanism const &mech, std::size_t buyer)
{
  std::vector<std::size_t> out;
  std::size_t const        s = stride(mech.buyers(), buyer);
  for (std::size_t k = 0; k < mech.profile_count(); ++k)
  {
    if ((k / s) % 4 == 0)
    {
      out.push_back(k);
    }
  }
  return out;
}

Rational type_probability(AuctionSpec const &spec, BuyerType t)
{
  Rational const p = spec.p();
  Rational const q = Rational(1) - p;
  return (t.item1 == Level::Low ? p : q) * (t.item2 == Level::Low ? p : q);
}

// (t - t') . q  for a buyer's two-item allocation
Rational value_difference(AuctionSpec const &spec, BuyerType t, BuyerType tp, std::array<Rational, kItems> const &q)
{
  Rational const d1 = value_of(spec, t.item1) - value_of(spec, tp.item1);
  Rational const d2 = value_of(spec, t.item2) - value_of(spec, tp.item2);
  return d1 * q[0] + d2 * q[1];
}

AuditReport finish(AuditReport report)
{
  report.passed = report.violations.empty();
  return report;
}

}  // namespace

Rational expected_revenue(Mechanism const &mech)
{
  Rational total;
  for (std::size_t k = 0; k < mech.profile_count(); ++k)
  {
    Rational sum;
    for (std::size_t i = 0; i < mech.buyers(); ++i)
    {
      sum += mech.payment(i, k);
    }
    total += mech.probability(k) * sum;
  }
  return total;
}

AuditReport check_ir(Mechanism const &mech)
{
  AuditReport report;
  report.condition = Condition::IR;
  for (std::size_t i = 0; i < mech.buyers(); ++i)
  {
    for (std::size_t k = 0; k < mech.profile_count(); ++k)
    {
      ++report.checked;
      if (mech.utility(i, k).sign() < 0)
      {
        TypeProfile const &t = mech.profile(k);
        report.violations.push_back({i, t[i], t[i], others_of(t, i), false, mech.utility(i, k), Rational(0)});
      }
    }
  }
  return finish(std::move(report));
}

AuditReport check_dic(Mechanism const &mech)
{
  AuditReport report;
  report.condition       = Condition::DIC;
  std::size_t const n    = mech.buyers();
  auto const       &spec = mech.spec();
  for (std::size_t i = 0; i < n; ++i)
  {
    auto const bases = base_profiles(mech, i);
    for (std::size_t ti = 0; ti < 4; ++ti)
    {
      for (std::size_t tp = 0; tp < 4; ++tp)
      {
        if (ti == tp)
        {
          continue;
        }
        BuyerType const truth  = BuyerType::from_index(ti);
        BuyerType const report_type = BuyerType::from_index(tp);
        for (std::size_t base : bases)
        {
          std::size_t const k_true = substitute(base, n, i, truth);
          std::size_t const k_lie  = substitute(base, n, i, report_type);
          ++report.checked;
          Rational const lhs = mech.utility(i, k_true);
          Rational const rhs =
              mech.utility(i, k_lie) + value_difference(spec, truth, report_type, mech.allocation(k_lie).shares[i]);
          if (lhs < rhs)
          {
            report.violations.push_back({i, truth, report_type, others_of(mech.profile(base), i), false, lhs, rhs});
          }
        }
      }
    }
  }
  return finish(std::move(report));
}

InterimTable interim(Mechanism const &mech, std::size_t buyer)
{
  InterimTable table;
  auto const   bases = base_profiles(mech, buyer);
  auto const  &spec  = mech.spec();
  for (std::size_t ti = 0; ti < 4; ++ti)
  {
    BuyerType const t      = BuyerType::from_index(ti);
    Rational const  own_pr = type_probability(spec, t);
    Rational        u;
    Rational        q1;
    Rational        q2;
    for (std::size_t base : bases)
    {
      std::size_t const k  = substitute(base, mech.buyers(), buyer, t);
      Rational const    pr = mech.probability(k) / own_pr;
      u += pr * mech.utility(buyer, k);
      q1 += pr * mech.share(buyer, 0, k);
      q2 += pr * mech.share(buyer, 1, k);
    }
    table.utility[ti]    = u;
    table.allocation[ti] = {q1, q2};
  }
  return table;
}

AuditReport check_bir(Mechanism const &mech)
{
  AuditReport report;
  report.condition = Condition::BIR;
  for (std::size_t i = 0; i < mech.buyers(); ++i)
  {
    auto const table = interim(mech, i);
    for (std::size_t ti = 0; ti < 4; ++ti)
    {
      ++report.checked;
      if (table.utility[ti].sign() < 0)
      {
        BuyerType const t = BuyerType::from_index(ti);
        report.violations.push_back({i, t, t, {}, true, table.utility[ti], Rational(0)});
      }
    }
  }
  return finish(std::move(report));
}

AuditReport check_bic(Mechanism const &mech)
{
  AuditReport report;
  report.condition = Condition::BIC;
  for (std::size_t i = 0; i < mech.buyers(); ++i)
  {
    auto const table = interim(mech, i);
    for (std::size_t ti = 0; ti < 4; ++ti)
    {
      for (std::size_t tp = 0; tp < 4; ++tp)
      {
        if (ti == tp)
        {
          continue;
        }
        BuyerType const truth       = BuyerType::from_index(ti);
        BuyerType const report_type = BuyerType::from_index(tp);
        ++report.checked;
        Rational const lhs = table.utility[ti];
        Rational const rhs =
            table.utility[tp] + value_difference(mech.spec(), truth, report_type, table.allocation[tp]);
        if (lhs < rhs)
        {
          report.violations.push_back({i, truth, report_type, {}, true, lhs, rhs});
        }
      }
    }
  }
  return finish(std::move(report));
}

Violation evaluate_constraint(Mechanism const &mech, Condition condition, std::size_t buyer, BuyerType true_type,
                              BuyerType reported, std::vector<BuyerType> const &others)
{
  Violation v{buyer, true_type, reported, others, false, {}, {}};
  if (condition == Condition::BIR || condition == Condition::BIC)
  {
    auto const table = interim(mech, buyer);
    v.others.clear();
    v.averaged = true;
    v.lhs      = table.utility[true_type.index()];
    v.rhs      = condition == Condition::BIR
                     ? Rational(0)
                     : table.utility[reported.index()] +
                      value_difference(mech.spec(), true_type, reported, table.allocation[reported.index()]);
    return v;
  }
  if (others.size() + 1 != mech.buyers())
  {
    throw std::invalid_argument("others must list every other buyer");
  }
  TypeProfile t;
  t.rows = others;
  t.rows.insert(t.rows.begin() + static_cast<std::ptrdiff_t>(buyer), true_type);
  std::size_t const k_true = profile_index(t);
  v.lhs                    = mech.utility(buyer, k_true);
  if (condition == Condition::IR)
  {
    v.rhs = Rational(0);
    return v;
  }
  std::size_t const k_lie = substitute(k_true, mech.buyers(), buyer, reported);
  v.rhs = mech.utility(buyer, k_lie) + value_difference(mech.spec(), true_type, reported, mech.allocation(k_lie).shares[buyer]);
  return v;
}

bool transfer_equation_check(Mechanism const &mech)
{
  auto const       &spec = mech.spec();
  std::size_t const n    = mech.buyers();
  for (std::size_t i = 0; i < n; ++i)
  {
    auto const bases = base_profiles(mech, i);
    auto const table = interim(mech, i);
    for (std::size_t ti = 0; ti < 4; ++ti)
    {
      BuyerType const truth = BuyerType::from_index(ti);
      for (std::size_t tp = 0; tp < 4; ++tp)
      {
        BuyerType const lie = BuyerType::from_index(tp);
        Rational        averaged;
        for (std::size_t base : bases)
        {
          std::size_t const k_lie = substitute(base, n, i, lie);
          auto const       &q     = mech.allocation(k_lie).shares[i];
          // misreport utility from its definition: true value of the bundle received minus the price paid
          Rational const misreport =
              q[0] * value_of(spec, truth.item1) + q[1] * value_of(spec, truth.item2) - mech.payment(i, k_lie);
          Rational const transfer = mech.utility(i, k_lie) + value_difference(spec, truth, lie, q);
          if (misreport != transfer)
          {
            return false;
          }
          if (ti == tp && misreport != mech.utility(i, k_lie))
          {
            return false;
          }
          averaged += mech.probability(k_lie) / type_probability(spec, lie) * misreport;
        }
        if (averaged != table.utility[tp] + value_difference(spec, truth, lie, table.allocation[tp]))
        {
          return false;
        }
      }
    }
  }
  return true;
}

Rational cheap_allocation(Mechanism const &mech, std::size_t profile)
{
  auto const c = classify_profile(mech.profile(profile));
  Rational   total;
  for (std::size_t j = 0; j < kItems; ++j)
  {
    if (c.cheap[j])
    {
      total += mech.allocation(profile).item_total(j);
    }
  }
  return total;
}

QuStatistics qu_statistics(Mechanism const &mech)
{
  QuStatistics      stats;
  std::size_t const n = mech.buyers();
  std::array<std::set<std::size_t>, 5> sets;

  auto put = [&](ProfileSet s, std::size_t k) { sets[static_cast<std::size_t>(s)].insert(k); };

  for (std::size_t k = 0; k < mech.profile_count(); ++k)
  {
    TypeProfile const &t = mech.profile(k);
    auto const         c = classify_profile(t);
    switch (c.cls)
    {
    case ProfileClass::S0:
      put(ProfileSet::S0, k);
      break;
    case ProfileClass::S1:
      put(ProfileSet::S1, k);
      break;
    case ProfileClass::S2:
    {
      put(ProfileSet::S2, k);
      std::size_t const cheap_item = c.cheap[0] ? 0 : 1;
      for (std::size_t i = 0; i < n; ++i)
      {
        TypeProfile bumped = t;
        (cheap_item == 0 ? bumped.rows[i].item1 : bumped.rows[i].item2) = Level::High;
        put(ProfileSet::S2Bumped, profile_index(bumped));
      }
      break;
    }
    case ProfileClass::Other:
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t ip = 0; ip < n; ++ip)
    {
      TypeProfile t = mech.profile(0);
      t.rows[i].item1  = Level::High;
      t.rows[ip].item2 = Level::High;
      put(ProfileSet::S1Bumped, profile_index(t));
    }
  }

  for (std::size_t s = 0; s < 5; ++s)
  {
    for (std::size_t k : sets[s])
    {
      Rational u_sum;
      for (std::size_t i = 0; i < n; ++i)
      {
        u_sum += mech.utility(i, k);
      }
      stats.q[s] += mech.probability(k) * cheap_allocation(mech, k);
      stats.u[s] += mech.probability(k) * u_sum;
    }
    stats.members[s].assign(sets[s].begin(), sets[s].end());
  }

  auto const &s1b = sets[static_cast<std::size_t>(ProfileSet::S1Bumped)];
  auto const &s2b = sets[static_cast<std::size_t>(ProfileSet::S2Bumped)];
  bool        ok  = std::none_of(s1b.begin(), s1b.end(), [&](std::size_t k) { return s2b.count(k) != 0; });
  for (auto const *set : {&s1b, &s2b})
  {
    for (std::size_t k : *set)
    {
      ok = ok && classify_profile(mech.profile(k)).cheap_count() == 0;
    }
  }
  stats.bumped_sets_well_formed = ok;
  return stats;
}

char others_family(std::vector<BuyerType> const &others)
{
  bool cheap1 = true;
  bool cheap2 = true;
  bool any_bb = false;
  for (auto const &t : others)
  {
    cheap1 = cheap1 && t.item1 == Level::Low;
    cheap2 = cheap2 && t.item2 == Level::Low;
    any_bb = any_bb || t.is_high();
  }
  if (cheap1 && cheap2)
  {
    return 'A';
  }
  if (cheap1)
  {
    return 'B';
  }
  if (cheap2)
  {
    return 'C';
  }
  return any_bb ? 'E' : 'D';
}

}  // namespace twoitem
