#pragma once

#include "twoitem/mechanism.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace twoitem {

enum class Condition
{
  IR,
  DIC,
  BIR,
  BIC,
};

char const *to_string(Condition c);

/// A failed constraint written as lhs >= rhs with lhs < rhs.
struct Violation
{
  std::size_t buyer = 0;
  BuyerType   true_type;
  /// Equal to true_type for IR and BIR rows.
  BuyerType reported;
  /// Types of the other buyers in buyer order; empty for interim rows.
  std::vector<BuyerType> others;
  bool                   averaged = false;
  Rational               lhs;
  Rational               rhs;

  std::string str() const;
};

struct AuditReport
{
  Condition              condition = Condition::IR;
  bool                   passed    = true;
  std::size_t            checked   = 0;
  std::vector<Violation> violations;
};

/// sum_t Pr{t} sum_i s_i(t), with payments derived from (q, u).
Rational expected_revenue(Mechanism const &mech);

AuditReport check_ir(Mechanism const &mech);
/// Every buyer, ordered type pair and profile of the others:
/// u_i(t_i,t_-i) >= u_i(t'_i,t_-i) + (t_i - t'_i) . q_i(t'_i,t_-i).
AuditReport check_dic(Mechanism const &mech);
AuditReport check_bir(Mechanism const &mech);
/// Interim form of the DIC rows, averaged over the others' types.
AuditReport check_bic(Mechanism const &mech);

/// Re-evaluates one constraint. `others` is ignored for interim conditions.
Violation evaluate_constraint(Mechanism const &mech, Condition condition, std::size_t buyer, BuyerType true_type,
                              BuyerType reported, std::vector<BuyerType> const &others);

/// Interim quantities for one buyer: expectations over the others' types.
struct InterimTable
{
  std::array<Rational, 4>                       utility;     // by type index
  std::array<std::array<Rational, kItems>, 4>   allocation;  // by type index, item
};

InterimTable interim(Mechanism const &mech, std::size_t buyer);

/// Checks u_i(t_i <- t'_i, t_-i) = u_i(t'_i, t_-i) + (t_i - t'_i) . q_i(t'_i, t_-i)
/// for every buyer, type pair and t_-i, with the left side computed from the
/// derived payment, and the averaged form after interim aggregation.
bool transfer_equation_check(Mechanism const &mech);

/// Profile sets used by the revenue decomposition.
enum class ProfileSet
{
  S0,
  S1,
  S2,
  S1Bumped,  // tau_{i,i'}: one b in each column, all else a
  S2Bumped,  // one-cheap profiles of S2 with one cheap entry raised to b
};

char const *to_string(ProfileSet s);

struct QuStatistics
{
  std::array<Rational, 5> q;  // indexed by ProfileSet
  std::array<Rational, 5> u;
  /// S1Bumped and S2Bumped are disjoint and contain no cheap items.
  bool bumped_sets_well_formed = false;
  /// Profile indices of each set.
  std::array<std::vector<std::size_t>, 5> members;

  Rational const &Q(ProfileSet s) const
  {
    return q[static_cast<std::size_t>(s)];
  }
  Rational const &U(ProfileSet s) const
  {
    return u[static_cast<std::size_t>(s)];
  }
};

/// Cheap-item allocation mass Q(S) and utility mass U(S) per set.
QuStatistics qu_statistics(Mechanism const &mech);

/// Total cheap-item allocation sum_{i,j} q'_i^j at one profile.
Rational cheap_allocation(Mechanism const &mech, std::size_t profile);

/// Family of the others' profile t_-i used to organise the DIC rows:
/// 'A' all low, 'B' item 1 cheap, 'C' item 2 cheap, 'D' no (b,b) and both
/// items non-cheap, 'E' some (b,b).
char others_family(std::vector<BuyerType> const &others);

}  // namespace twoitem
