#include "twoitem/mechanism.hpp"

namespace twoitem {

char const *to_string(MechanismLabel label)
{
  switch (label)
  {
  case MechanismLabel::DicOptimal:
    return "DIC-optimal";
  case MechanismLabel::BicOptimal:
    return "BIC-optimal";
  case MechanismLabel::Custom:
    return "custom";
  }
  return "?";
}

Mechanism::Mechanism(AuctionSpec spec, MechanismLabel label, std::size_t cap)
  : spec_(std::move(spec))
  , label_(label)
  , profiles_(enumerate_profiles(spec_, cap))
  , allocation_(profiles_.size(), Allocation(static_cast<std::size_t>(spec_.n())))
  , utility_(profiles_.size(), std::vector<Rational>(static_cast<std::size_t>(spec_.n())))
{}

void Mechanism::set_allocation(std::size_t profile, Allocation allocation)
{
  if (allocation.buyers() != buyers())
  {
    throw std::invalid_argument("allocation has the wrong number of buyers");
  }
  allocation_.at(profile) = std::move(allocation);
}

void Mechanism::set_share(std::size_t buyer, std::size_t item, std::size_t profile, Rational value)
{
  allocation_.at(profile).shares.at(buyer).at(item) = std::move(value);
}

void Mechanism::set_utility(std::size_t buyer, std::size_t profile, Rational value)
{
  utility_.at(profile).at(buyer) = std::move(value);
}

Rational Mechanism::allocated_value(std::size_t buyer, std::size_t profile) const
{
  BuyerType const t = profiles_[profile].profile[buyer];
  auto const     &q = allocation_[profile].shares[buyer];
  return q[0] * value_of(spec_, t.item1) + q[1] * value_of(spec_, t.item2);
}

Rational Mechanism::payment(std::size_t buyer, std::size_t profile) const
{
  return allocated_value(buyer, profile) - utility_[profile][buyer];
}

bool Mechanism::feasible() const
{
  for (auto const &a : allocation_)
  {
    if (!a.feasible())
    {
      return false;
    }
  }
  return true;
}

bool Mechanism::same_tables(Mechanism const &other) const
{
  return allocation_ == other.allocation_ && utility_ == other.utility_;
}

std::pair<HierarchyScheme, HierarchyScheme> optimal_hierarchies(Regime regime)
{
  switch (regime)
  {
  case Regime::BelowV1:
    return {HierarchyScheme::ranked({kBB, kBA, kAB, kAA}), HierarchyScheme::ranked({kBB, kAB, kBA, kAA})};
  case Regime::V1ToV2:
    return {HierarchyScheme::ranked({kBB, kBA, kAB}), HierarchyScheme::ranked({kBB, kAB, kBA})};
  case Regime::V2ToV3:
  case Regime::AboveV3:
    return {HierarchyScheme::ranked({kBB, kBA}), HierarchyScheme::ranked({kBB, kAB})};
  }
  throw std::logic_error("unknown regime");
}

namespace {

std::vector<BuyerType> others_of(TypeProfile const &t, std::size_t buyer)
{
  std::vector<BuyerType> rest;
  rest.reserve(t.size() - 1);
  for (std::size_t k = 0; k < t.size(); ++k)
  {
    if (k != buyer)
    {
      rest.push_back(t[k]);
    }
  }
  return rest;
}

bool all_low(std::vector<BuyerType> const &rows)
{
  return count_active(rows) == 0;
}

// Utility table shared by both mechanisms; `bic_exception` switches the
// (b,b)-against-one-cheap branch to half the beta-weighted share.
Rational utility_rule(AuctionSpec const &spec, IndicatorFlags const &f, TypeProfile const &t, std::size_t buyer,
                      bool bic_exception)
{
  Rational const         gap    = spec.b() - spec.a();
  Rational const         n      = Rational(spec.n());
  Rational const         alpha  = f.alpha ? Rational(1) : Rational(0);
  Rational const         beta   = f.beta ? Rational(1) : Rational(0);
  Rational const         gamma  = f.gamma ? Rational(1) : Rational(0);
  BuyerType const        own    = t[buyer];
  auto const             others = others_of(t, buyer);

  if (all_low(others))
  {
    if (own == kAB || own == kBA)
    {
      return gap * alpha / n;
    }
    if (own == kBB)
    {
      return gap * (alpha / n + beta);
    }
    return Rational(0);
  }
  if (own == kBB && is_one_cheap(others))
  {
    Rational const ways(static_cast<long>(1 + count_active(others)));
    if (bic_exception)
    {
      return Rational(1, 2) * gap * beta / ways;
    }
    return gap * gamma / ways;
  }
  return Rational(0);
}

Allocation dic_allocation(Regime r, std::pair<HierarchyScheme, HierarchyScheme> const &h, TypeProfile const &t)
{
  if (r == Regime::V2ToV3)
  {
    // one non-low buyer against an all-low field buys the bundle at a+b
    auto const c = classify_profile(t);
    if (c.active.size() == 1)
    {
      Allocation out(t.size());
      out.shares[c.active.front()] = {Rational(1), Rational(1)};
      return out;
    }
    if (c.active.empty())
    {
      return Allocation(t.size());
    }
  }
  return allocate_hierarchies(h.first, h.second, t);
}

}  // namespace

Mechanism build_dic_optimal(AuctionSpec const &spec, std::size_t cap)
{
  Mechanism  mech(spec, MechanismLabel::DicOptimal, cap);
  auto const r     = regime(spec);
  auto const h     = optimal_hierarchies(r);
  auto const flags = indicator_flags(spec);
  for (std::size_t k = 0; k < mech.profile_count(); ++k)
  {
    TypeProfile const &t = mech.profile(k);
    mech.set_allocation(k, dic_allocation(r, h, t));
    for (std::size_t i = 0; i < mech.buyers(); ++i)
    {
      mech.set_utility(i, k, utility_rule(spec, flags, t, i, false));
    }
  }
  return mech;
}

Mechanism build_bic_optimal(AuctionSpec const &spec, std::size_t cap)
{
  auto const r = regime(spec);
  if (r == Regime::AboveV3)
  {
    Mechanism mech = build_dic_optimal(spec, cap);
    mech.set_label(MechanismLabel::BicOptimal);
    return mech;
  }
  Mechanism  mech(spec, MechanismLabel::BicOptimal, cap);
  auto const h     = optimal_hierarchies(r == Regime::BelowV1 ? Regime::BelowV1 : Regime::V1ToV2);
  auto const flags = indicator_flags(spec);
  for (std::size_t k = 0; k < mech.profile_count(); ++k)
  {
    TypeProfile const &t = mech.profile(k);
    mech.set_allocation(k, allocate_hierarchies(h.first, h.second, t));
    for (std::size_t i = 0; i < mech.buyers(); ++i)
    {
      mech.set_utility(i, k, utility_rule(spec, flags, t, i, true));
    }
  }
  return mech;
}

std::vector<std::vector<Rational>> payments(Mechanism const &mech)
{
  std::vector<std::vector<Rational>> out(mech.profile_count(), std::vector<Rational>(mech.buyers()));
  for (std::size_t k = 0; k < mech.profile_count(); ++k)
  {
    for (std::size_t i = 0; i < mech.buyers(); ++i)
    {
      out[k][i] = mech.payment(i, k);
    }
  }
  return out;
}

}  // namespace twoitem
