#pragma once

#include "twoitem/lp.hpp"
#include "twoitem/mechanism.hpp"
#include "twoitem/model.hpp"

#include <string>
#include <vector>

namespace twoitem {

/// n buyers, two items, every valuation an IID draw from a finite support.
/// A buyer type is a pair of support indices (v1, v2), numbered v1*K + v2.
/// Profiles are numbered lexicographically with buyer 1 outermost.
struct FiniteInstance
{
  std::size_t           buyers = 2;
  std::vector<Rational> values;
  std::vector<Rational> weights;

  static FiniteInstance two_point(AuctionSpec const &spec);

  std::size_t support() const
  {
    return values.size();
  }
  std::size_t types() const
  {
    return support() * support();
  }
  /// types()^buyers, or throws CapExceeded above cap.
  std::size_t profiles(std::size_t cap = kDefaultProfileCap) const;

  Rational const &type_value(std::size_t type, std::size_t item) const
  {
    return values[item == 0 ? type / support() : type % support()];
  }
  Rational type_weight(std::size_t type) const
  {
    return weights[type / support()] * weights[type % support()];
  }

  /// Throws SpecError on empty or mismatched supports, nonpositive weights
  /// or weights not summing to 1.
  void validate() const;
};

enum class Implementation
{
  Dominant,
  Bayesian,
};

char const *to_string(Implementation impl);

/// Default profile cap for the LP builders (n <= 4 on the two-point support).
inline constexpr std::size_t kDefaultLpProfileCap = 256;

struct BuildOptions
{
  std::size_t cap = kDefaultLpProfileCap;
  /// Restrict to tables invariant under buyer permutations and the item
  /// swap; one LP variable per orbit.
  bool symmetrize = false;
};

/// The revenue LP over full allocation and utility tables. Variables are
/// q_i^j(t) >= 0 for every buyer, item and profile, then u_i(t); the
/// objective is sum_t Pr{t} sum_i (t_i . q_i(t) - u_i(t)).
class AuctionProgram
{
public:
  AuctionProgram(FiniteInstance instance, Implementation impl, BuildOptions const &options = {});

  lp::LinearProgram const &program() const
  {
    return program_;
  }
  FiniteInstance const &instance() const
  {
    return instance_;
  }
  Implementation implementation() const
  {
    return impl_;
  }
  bool symmetrized() const
  {
    return symmetrized_;
  }

  std::size_t profile_count() const
  {
    return profiles_;
  }
  /// Index of q_i^j(t) / u_i(t) in the full (unreduced) table layout.
  std::size_t q_slot(std::size_t buyer, std::size_t item, std::size_t profile) const
  {
    return (profile * instance_.buyers + buyer) * 2 + item;
  }
  std::size_t u_slot(std::size_t buyer, std::size_t profile) const
  {
    return 2 * instance_.buyers * profiles_ + profile * instance_.buyers + buyer;
  }
  std::size_t slot_count() const
  {
    return 3 * instance_.buyers * profiles_;
  }

  /// Expands an LP assignment to one value per table slot.
  std::vector<Rational> expand(std::vector<Rational> const &assignment) const;

private:
  FiniteInstance           instance_;
  Implementation           impl_;
  bool                     symmetrized_ = false;
  std::size_t              profiles_    = 0;
  std::vector<std::size_t> slot_to_var_;
  lp::LinearProgram        program_;
};

AuctionProgram build_dic_lp(AuctionSpec const &spec, BuildOptions const &options = {});
AuctionProgram build_bic_lp(AuctionSpec const &spec, BuildOptions const &options = {});

/// Allocation and utility tables of an optimal LP solution as a mechanism
/// on the two-point instance the program was built from.
Mechanism extract_mechanism(AuctionProgram const &program, AuctionSpec const &spec, lp::Solution const &solution);

struct CertificationReport
{
  AuctionSpec spec;
  Rational    lp_dic;
  Rational    formula_dic;
  bool        equal_dic = false;
  Rational    lp_bic;
  Rational    formula_bic;
  bool        equal_bic = false;
  std::size_t pivots    = 0;

  bool ok() const
  {
    return equal_dic && equal_bic;
  }
};

/// Solves both programs exactly and compares with the closed forms.
/// Throws std::runtime_error if either program is not solved to optimality.
CertificationReport certify_revenue_formulas(AuctionSpec const &spec, BuildOptions const &options = {});

/// Optimum of one program; throws std::runtime_error unless optimal.
Rational solve_optimum(AuctionProgram const &program, lp::Solution *out = nullptr);

}  // namespace twoitem
