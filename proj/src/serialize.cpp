#include "twoitem/serialize.hpp"

namespace twoitem {

std::string canonical(Rational const &r)
{
  mpq_class const &q = r.raw();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_json(Json const &j)
{
  if (j.is_number_integer())
  {
    return Rational(j.get<long>());
  }
  if (!j.is_string())
  {
    throw SpecError("expected a rational string");
  }
  return Rational::parse(j.get<std::string>());
}

Json to_json(AuctionSpec const &spec)
{
  return Json{{"n", spec.n()}, {"p", canonical(spec.p())}, {"a", canonical(spec.a())}, {"b", canonical(spec.b())}};
}

Json to_json(BuyerType t)
{
  return t.str();
}

Json to_json(TypeProfile const &profile)
{
  Json j = Json::array();
  for (auto const &t : profile.rows)
  {
    j.push_back(t.str());
  }
  return j;
}

Json to_json(HierarchyScheme const &scheme)
{
  Json j = Json::array();
  for (auto const &level : scheme.levels())
  {
    Json l = Json::array();
    for (auto const &t : level)
    {
      l.push_back(t.str());
    }
    j.push_back(std::move(l));
  }
  return j;
}

Json to_json(Allocation const &allocation)
{
  Json j = Json::array();
  for (auto const &row : allocation.shares)
  {
    j.push_back(Json::array({canonical(row[0]), canonical(row[1])}));
  }
  return j;
}

Json to_json(RevenueReport const &r)
{
  return Json{
      {"r_dic", canonical(r.dic)},
      {"r_bic", canonical(r.bic)},
      {"srev", canonical(r.separate)},
      {"s_b", canonical(r.price_b)},
      {"bundle", canonical(r.bundle)},
      {"flags", {{"alpha", r.flags.alpha}, {"beta", r.flags.beta}, {"gamma", r.flags.gamma}}},
      {"breakpoints", {{"v1", canonical(r.points.v1)}, {"v2", canonical(r.points.v2)}, {"v3", canonical(r.points.v3)}}},
  };
}

Json to_json(Violation const &v)
{
  Json j{{"buyer", v.buyer + 1}, {"type", v.true_type.str()}, {"reported", v.reported.str()}};
  if (v.averaged)
  {
    j["averaged"] = true;
  }
  else
  {
    Json others = Json::array();
    for (auto const &t : v.others)
    {
      others.push_back(t.str());
    }
    j["others"] = std::move(others);
  }
  j["lhs"] = canonical(v.lhs);
  j["rhs"] = canonical(v.rhs);
  return j;
}

Json to_json(AuditReport const &report)
{
  Json violations = Json::array();
  for (auto const &v : report.violations)
  {
    violations.push_back(to_json(v));
  }
  return Json{{"condition", to_string(report.condition)},
              {"passed", report.passed},
              {"checked", report.checked},
              {"violations", std::move(violations)}};
}

Json to_json(CertificationReport const &r)
{
  return Json{{"spec", to_json(r.spec)},
              {"lp_dic", canonical(r.lp_dic)},
              {"r_dic", canonical(r.formula_dic)},
              {"dic_equal", r.equal_dic},
              {"lp_bic", canonical(r.lp_bic)},
              {"r_bic", canonical(r.formula_bic)},
              {"bic_equal", r.equal_bic},
              {"pivots", r.pivots}};
}

Json to_json(Mechanism const &mech)
{
  Json profiles = Json::array();
  for (std::size_t k = 0; k < mech.profile_count(); ++k)
  {
    Json u = Json::array();
    Json s = Json::array();
    for (std::size_t i = 0; i < mech.buyers(); ++i)
    {
      u.push_back(canonical(mech.utility(i, k)));
      s.push_back(canonical(mech.payment(i, k)));
    }
    profiles.push_back(Json{{"profile", to_json(mech.profile(k))},
                            {"probability", canonical(mech.probability(k))},
                            {"q", to_json(mech.allocation(k))},
                            {"u", std::move(u)},
                            {"s", std::move(s)}});
  }
  return Json{{"spec", to_json(mech.spec())}, {"label", to_string(mech.label())}, {"profiles", std::move(profiles)}};
}

AuctionSpec spec_from_json(Json const &j)
{
  return AuctionSpec(j.at("n").get<int>(), rational_from_json(j.at("p")), rational_from_json(j.at("a")),
                     rational_from_json(j.at("b")));
}

BuyerType type_from_json(Json const &j)
{
  return BuyerType::parse(j.get<std::string>());
}

TypeProfile profile_from_json(Json const &j)
{
  TypeProfile p;
  for (auto const &t : j)
  {
    p.rows.push_back(type_from_json(t));
  }
  return p;
}

HierarchyScheme scheme_from_json(Json const &j)
{
  std::vector<std::vector<BuyerType>> levels;
  for (auto const &level : j)
  {
    std::vector<BuyerType> l;
    for (auto const &t : level)
    {
      l.push_back(type_from_json(t));
    }
    levels.push_back(std::move(l));
  }
  return HierarchyScheme(std::move(levels));
}

Mechanism mechanism_from_json(Json const &j)
{
  AuctionSpec const spec = spec_from_json(j.at("spec"));
  MechanismLabel    label = MechanismLabel::Custom;
  std::string const name  = j.value("label", std::string(to_string(MechanismLabel::Custom)));
  for (auto candidate : {MechanismLabel::DicOptimal, MechanismLabel::BicOptimal})
  {
    if (name == to_string(candidate))
    {
      label = candidate;
    }
  }
  Mechanism   mech(spec, label);
  auto const &rows = j.at("profiles");
  if (rows.size() != mech.profile_count())
  {
    throw SpecError("mechanism JSON has the wrong number of profiles");
  }
  for (std::size_t k = 0; k < mech.profile_count(); ++k)
  {
    auto const &row = rows[k];
    if (!(profile_from_json(row.at("profile")) == mech.profile(k)))
    {
      throw SpecError("mechanism JSON profiles are not in enumeration order");
    }
    for (std::size_t i = 0; i < mech.buyers(); ++i)
    {
      for (std::size_t item = 0; item < kItems; ++item)
      {
        mech.set_share(i, item, k, rational_from_json(row.at("q").at(i).at(item)));
      }
      mech.set_utility(i, k, rational_from_json(row.at("u").at(i)));
    }
  }
  return mech;
}

}  // namespace twoitem
