#pragma once

#include "twoitem/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace twoitem {
namespace lp {

enum class Relation
{
  LessEqual,
  GreaterEqual,
  Equal,
};

enum class Domain
{
  NonNegative,
  Free,
};

struct Term
{
  std::size_t var;
  Rational    coef;
};

struct Variable
{
  std::string name;
  Domain      domain = Domain::NonNegative;
};

struct Constraint
{
  std::vector<Term> terms;
  Relation          relation = Relation::LessEqual;
  Rational          rhs;
  std::string       name;
};

/// Maximisation problem over exact rational data.
class LinearProgram
{
public:
  std::size_t add_variable(std::string name, Domain domain = Domain::NonNegative);
  /// Terms with a zero coefficient are dropped; repeated variables are merged.
  std::size_t add_constraint(std::vector<Term> terms, Relation relation, Rational rhs,
                             std::string name = {});
  void        set_objective(std::vector<Term> terms);

  std::vector<Variable> const &variables() const
  {
    return variables_;
  }
  std::vector<Constraint> const &constraints() const
  {
    return constraints_;
  }
  std::vector<Term> const &objective() const
  {
    return objective_;
  }

  std::size_t count_constraints_named(std::string const &prefix) const;

  /// Throws std::invalid_argument if a term references an undeclared variable.
  void validate() const;

  /// Value of the objective at an assignment (one entry per variable).
  Rational evaluate_objective(std::vector<Rational> const &assignment) const;
  /// Left-hand side of a constraint at an assignment.
  Rational evaluate(Constraint const &row, std::vector<Rational> const &assignment) const;

private:
  std::vector<Variable>   variables_;
  std::vector<Constraint> constraints_;
  std::vector<Term>       objective_;
};

enum class Status
{
  Optimal,
  Infeasible,
  Unbounded,
};

char const *to_string(Status status);

struct Solution
{
  Status                status = Status::Infeasible;
  Rational              optimum;
  std::vector<Rational> assignment;
  std::size_t           pivots = 0;
};

struct SolveOptions
{
  /// Use Bland's rule for every pivot.
  bool pure_bland = false;
  /// Re-substitute the optimum into every constraint and the objective.
  bool verify = true;
};

/// Exact primal simplex (two-phase). Entering columns are priced by largest
/// reduced cost. When no artificial rows are needed, ties in the ratio test
/// are broken lexicographically; otherwise Bland's smallest-index rule takes
/// over after a degenerate pivot until the objective strictly improves.
/// Either way the method cannot cycle.
/// Throws std::logic_error if verification of an optimal solution fails.
Solution solve(LinearProgram const &program, SolveOptions const &options = {});

/// True when every constraint and the nonnegativity domains hold exactly at
/// the assignment and the objective equals the reported optimum.
bool certify(LinearProgram const &program, Solution const &solution);

/// Writes the program in CPLEX LP text format. Coefficients in the body are
/// decimals; each row is preceded by a comment carrying the exact fractions.
void write_cplex_lp(std::ostream &os, LinearProgram const &program);

}  // namespace lp
}  // namespace twoitem
