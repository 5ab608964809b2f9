#pragma once

#include "twoitem/closed_form.hpp"
#include "twoitem/model.hpp"
#include "twoitem/rational.hpp"

#include <string>
#include <vector>

namespace twoitem {

enum class MechanismLabel
{
  DicOptimal,
  BicOptimal,
  Custom,
};

char const *to_string(MechanismLabel label);

/// A direct mechanism given by its allocation and utility tables over all
/// 4^n profiles (lexicographic order). Payments are always derived:
/// s_i(t) = sum_j q_i^j(t) t_i^j - u_i(t).
class Mechanism
{
public:
  /// All-zero allocation and utility (the no-trade mechanism).
  Mechanism(AuctionSpec spec, MechanismLabel label = MechanismLabel::Custom,
            std::size_t cap = kDefaultProfileCap);

  AuctionSpec const &spec() const
  {
    return spec_;
  }
  MechanismLabel label() const
  {
    return label_;
  }
  void set_label(MechanismLabel label)
  {
    label_ = label;
  }

  std::size_t buyers() const
  {
    return static_cast<std::size_t>(spec_.n());
  }
  std::size_t profile_count() const
  {
    return profiles_.size();
  }
  TypeProfile const &profile(std::size_t index) const
  {
    return profiles_[index].profile;
  }
  Rational const &probability(std::size_t index) const
  {
    return profiles_[index].probability;
  }

  Allocation const &allocation(std::size_t profile) const
  {
    return allocation_[profile];
  }
  Rational const &share(std::size_t buyer, std::size_t item, std::size_t profile) const
  {
    return allocation_[profile].shares[buyer][item];
  }
  Rational const &utility(std::size_t buyer, std::size_t profile) const
  {
    return utility_[profile][buyer];
  }

  void set_allocation(std::size_t profile, Allocation allocation);
  void set_share(std::size_t buyer, std::size_t item, std::size_t profile, Rational value);
  void set_utility(std::size_t buyer, std::size_t profile, Rational value);

  /// Buyer's value for its allocation at the profile: t_i . q_i(t).
  Rational allocated_value(std::size_t buyer, std::size_t profile) const;
  Rational payment(std::size_t buyer, std::size_t profile) const;

  /// Every allocation within supply.
  bool feasible() const;

  /// Same tables (spec and label ignored).
  bool same_tables(Mechanism const &other) const;

private:
  AuctionSpec                        spec_;
  MechanismLabel                     label_;
  std::vector<WeightedProfile>       profiles_;
  std::vector<Allocation>            allocation_;
  std::vector<std::vector<Rational>> utility_;
};

/// The hierarchy pair (item 1, item 2) used on the given piece of the b axis.
std::pair<HierarchyScheme, HierarchyScheme> optimal_hierarchies(Regime regime);

/// Revenue-optimal IR and dominant-strategy IC mechanism.
Mechanism build_dic_optimal(AuctionSpec const &spec, std::size_t cap = kDefaultProfileCap);
/// Revenue-optimal IR and Bayesian IC mechanism. Coincides with the
/// dominant-strategy one once b >= v3.
Mechanism build_bic_optimal(AuctionSpec const &spec, std::size_t cap = kDefaultProfileCap);

/// payments[profile][buyer]
std::vector<std::vector<Rational>> payments(Mechanism const &mech);

}  // namespace twoitem
