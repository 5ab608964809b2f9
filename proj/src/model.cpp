#include "twoitem/model.hpp"

#include <algorithm>
#include <sstream>

namespace twoitem {

AuctionSpec::AuctionSpec(Unchecked, int n, Rational p, Rational a, Rational b)
  : n_(n)
  , p_(std::move(p))
  , a_(std::move(a))
  , b_(std::move(b))
{
  if (n_ < 1)
  {
    throw SpecError("n must be a positive integer");
  }
  if (p_.sign() <= 0 || p_ >= Rational(1))
  {
    throw SpecError("p must lie in (0,1)");
  }
  if (a_.sign() < 0)
  {
    throw SpecError("a must be nonnegative");
  }
  if (!(a_ < b_))
  {
    throw SpecError("b must exceed a");
  }
}

AuctionSpec::AuctionSpec(int n, Rational p, Rational a, Rational b)
  : AuctionSpec(Unchecked{}, n, std::move(p), std::move(a), std::move(b))
{
  if (n_ < 2)
  {
    throw SpecError("n must be at least 2");
  }
}

AuctionSpec AuctionSpec::exploratory(int n, Rational p, Rational a, Rational b)
{
  return AuctionSpec(Unchecked{}, n, std::move(p), std::move(a), std::move(b));
}

std::string AuctionSpec::str() const
{
  return "(" + std::to_string(n_) + ", " + p_.str() + ", " + a_.str() + ", " + b_.str() + ")";
}

BuyerType BuyerType::from_index(std::size_t index)
{
  return {(index & 2U) != 0 ? Level::High : Level::Low, (index & 1U) != 0 ? Level::High : Level::Low};
}

BuyerType BuyerType::parse(std::string const &text)
{
  auto level = [&](char c) {
    if (c == 'a')
    {
      return Level::Low;
    }
    if (c == 'b')
    {
      return Level::High;
    }
    throw SpecError("buyer type must be one of aa, ab, ba, bb; got '" + text + "'");
  };
  if (text.size() != 2)
  {
    throw SpecError("buyer type must be one of aa, ab, ba, bb; got '" + text + "'");
  }
  return {level(text[0]), level(text[1])};
}

std::string BuyerType::str() const
{
  std::string s(2, 'a');
  s[0] = item1 == Level::High ? 'b' : 'a';
  s[1] = item2 == Level::High ? 'b' : 'a';
  return s;
}

Rational const &value_of(AuctionSpec const &spec, Level level)
{
  return level == Level::Low ? spec.a() : spec.b();
}

std::size_t TypeProfile::count_low_entries() const
{
  std::size_t count = 0;
  for (auto const &t : rows)
  {
    count += static_cast<std::size_t>(t.item1 == Level::Low) + static_cast<std::size_t>(t.item2 == Level::Low);
  }
  return count;
}

TypeProfile TypeProfile::with(std::size_t buyer, BuyerType type) const
{
  TypeProfile copy = *this;
  copy.rows.at(buyer) = type;
  return copy;
}

TypeProfile TypeProfile::items_swapped() const
{
  TypeProfile copy = *this;
  for (auto &t : copy.rows)
  {
    t = t.swapped();
  }
  return copy;
}

std::string TypeProfile::str() const
{
  std::string s;
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    if (i != 0)
    {
      s += ',';
    }
    s += rows[i].str();
  }
  return s;
}

Rational profile_probability(AuctionSpec const &spec, TypeProfile const &profile)
{
  auto const low  = static_cast<unsigned>(profile.count_low_entries());
  auto const high = static_cast<unsigned>(2 * profile.size()) - low;
  return pow(spec.p(), low) * pow(Rational(1) - spec.p(), high);
}

std::size_t profile_index(TypeProfile const &profile)
{
  std::size_t index = 0;
  for (auto const &t : profile.rows)
  {
    index = 4 * index + t.index();
  }
  return index;
}

TypeProfile profile_at(std::size_t n, std::size_t index)
{
  TypeProfile profile;
  profile.rows.resize(n);
  for (std::size_t i = n; i-- > 0;)
  {
    profile.rows[i] = BuyerType::from_index(index % 4);
    index /= 4;
  }
  return profile;
}

std::optional<std::size_t> profile_count(std::size_t n, std::size_t cap)
{
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i)
  {
    if (count > cap / 4)
    {
      return std::nullopt;
    }
    count *= 4;
  }
  if (count > cap)
  {
    return std::nullopt;
  }
  return count;
}

std::vector<WeightedProfile> enumerate_profiles(AuctionSpec const &spec, std::size_t cap)
{
  auto const n     = static_cast<std::size_t>(spec.n());
  auto const count = profile_count(n, cap);
  if (!count)
  {
    throw CapExceeded("instance too large for exhaustive mode: 4^" + std::to_string(n) +
                      " profiles exceed the cap of " + std::to_string(cap));
  }
  // weights depend only on the number of low entries
  std::vector<Rational> by_low(2 * n + 1);
  for (std::size_t k = 0; k <= 2 * n; ++k)
  {
    by_low[k] = pow(spec.p(), static_cast<unsigned>(k)) *
                pow(Rational(1) - spec.p(), static_cast<unsigned>(2 * n - k));
  }
  std::vector<WeightedProfile> out;
  out.reserve(*count);
  for (std::size_t index = 0; index < *count; ++index)
  {
    TypeProfile profile = profile_at(n, index);
    Rational    weight  = by_low[profile.count_low_entries()];
    out.push_back({std::move(profile), std::move(weight)});
  }
  return out;
}

HierarchyScheme::HierarchyScheme(std::vector<std::vector<BuyerType>> levels)
  : levels_(std::move(levels))
{
  std::array<bool, 4> seen{};
  for (auto const &level : levels_)
  {
    for (auto const &t : level)
    {
      if (seen[t.index()])
      {
        throw SpecError("type " + t.str() + " appears in two hierarchy levels");
      }
      seen[t.index()] = true;
    }
  }
}

HierarchyScheme HierarchyScheme::ranked(std::vector<BuyerType> order)
{
  std::vector<std::vector<BuyerType>> levels;
  levels.reserve(order.size());
  for (auto const &t : order)
  {
    levels.push_back({t});
  }
  return HierarchyScheme(std::move(levels));
}

std::optional<std::size_t> HierarchyScheme::rank(BuyerType type) const
{
  for (std::size_t d = 0; d < levels_.size(); ++d)
  {
    if (std::find(levels_[d].begin(), levels_[d].end(), type) != levels_[d].end())
    {
      return d + 1;
    }
  }
  return std::nullopt;
}

std::string HierarchyScheme::str() const
{
  std::string s = "[";
  for (std::size_t d = 0; d < levels_.size(); ++d)
  {
    if (d != 0)
    {
      s += "; ";
    }
    for (std::size_t m = 0; m < levels_[d].size(); ++m)
    {
      if (m != 0)
      {
        s += ", ";
      }
      s += levels_[d][m].str();
    }
  }
  return s + "]";
}

std::vector<Rational> allocate_hierarchy(HierarchyScheme const &scheme, TypeProfile const &profile)
{
  std::vector<std::optional<std::size_t>> ranks;
  ranks.reserve(profile.size());
  std::optional<std::size_t> best;
  for (auto const &t : profile.rows)
  {
    ranks.push_back(scheme.rank(t));
    if (ranks.back() && (!best || *ranks.back() < *best))
    {
      best = ranks.back();
    }
  }
  std::vector<Rational> shares(profile.size());
  if (!best)
  {
    return shares;
  }
  long const winners = std::count(ranks.begin(), ranks.end(), best);
  Rational const share(1, winners);
  for (std::size_t i = 0; i < ranks.size(); ++i)
  {
    if (ranks[i] == best)
    {
      shares[i] = share;
    }
  }
  return shares;
}

Rational Allocation::item_total(std::size_t item) const
{
  Rational total;
  for (auto const &s : shares)
  {
    total += s[item];
  }
  return total;
}

bool Allocation::feasible() const
{
  for (auto const &s : shares)
  {
    for (auto const &q : s)
    {
      if (q.sign() < 0 || q > Rational(1))
      {
        return false;
      }
    }
  }
  return item_total(0) <= Rational(1) && item_total(1) <= Rational(1);
}

Allocation allocate_hierarchies(HierarchyScheme const &item1, HierarchyScheme const &item2,
                                TypeProfile const &profile)
{
  auto const first  = allocate_hierarchy(item1, profile);
  auto const second = allocate_hierarchy(item2, profile);
  Allocation out(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i)
  {
    out.shares[i] = {first[i], second[i]};
  }
  return out;
}

char const *to_string(ProfileClass cls)
{
  switch (cls)
  {
  case ProfileClass::S0:
    return "S0";
  case ProfileClass::S1:
    return "S1";
  case ProfileClass::S2:
    return "S2";
  case ProfileClass::Other:
    return "other";
  }
  return "?";
}

std::size_t count_active(std::vector<BuyerType> const &rows)
{
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](BuyerType t) { return !t.is_low(); }));
}

bool is_one_cheap(std::vector<BuyerType> const &rows)
{
  bool cheap1 = true;
  bool cheap2 = true;
  for (auto const &t : rows)
  {
    cheap1 = cheap1 && t.item1 == Level::Low;
    cheap2 = cheap2 && t.item2 == Level::Low;
  }
  return cheap1 != cheap2;
}

Classification classify_profile(TypeProfile const &profile)
{
  Classification c;
  c.cheap = {true, true};
  for (std::size_t i = 0; i < profile.size(); ++i)
  {
    BuyerType const t = profile[i];
    c.cheap[0]        = c.cheap[0] && t.item1 == Level::Low;
    c.cheap[1]        = c.cheap[1] && t.item2 == Level::Low;
    if (!t.is_low())
    {
      c.active.push_back(i);
    }
  }
  switch (c.cheap_count())
  {
  case 2:
    c.cls = ProfileClass::S0;
    break;
  case 1:
    c.cls = c.active.size() == 1 ? ProfileClass::S1 : ProfileClass::S2;
    break;
  default:
    c.cls = ProfileClass::Other;
  }
  return c;
}

ClassMasses class_probabilities(AuctionSpec const &spec)
{
  auto const     n = static_cast<unsigned>(spec.n());
  Rational const p = spec.p();
  Rational const q = Rational(1) - p;
  ClassMasses    m;
  m.p0 = pow(p, 2 * n);
  m.p1 = Rational(2 * static_cast<long>(n)) * pow(p, 2 * n - 1) * q;
  m.p2 = Rational(2) * pow(p, n) * (Rational(1) - pow(p, n) - Rational(static_cast<long>(n)) * pow(p, n - 1) * q);
  return m;
}

}  // namespace twoitem
