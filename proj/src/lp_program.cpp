#include "twoitem/lp.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace twoitem {
namespace lp {
namespace {

std::vector<Term> normalize(std::vector<Term> terms)
{
  std::sort(terms.begin(), terms.end(), [](Term const &x, Term const &y) { return x.var < y.var; });
  std::vector<Term> merged;
  for (auto &t : terms)
  {
    if (!merged.empty() && merged.back().var == t.var)
    {
      merged.back().coef += t.coef;
    }
    else
    {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](Term const &t) { return t.coef.is_zero(); });
  return merged;
}

}  // namespace

std::size_t LinearProgram::add_variable(std::string name, Domain domain)
{
  variables_.push_back({std::move(name), domain});
  return variables_.size() - 1;
}

std::size_t LinearProgram::add_constraint(std::vector<Term> terms, Relation relation, Rational rhs,
                                          std::string name)
{
  constraints_.push_back({normalize(std::move(terms)), relation, std::move(rhs), std::move(name)});
  return constraints_.size() - 1;
}

void LinearProgram::set_objective(std::vector<Term> terms)
{
  objective_ = normalize(std::move(terms));
}

std::size_t LinearProgram::count_constraints_named(std::string const &prefix) const
{
  return static_cast<std::size_t>(std::count_if(constraints_.begin(), constraints_.end(), [&](Constraint const &c) {
    return c.name.compare(0, prefix.size(), prefix) == 0;
  }));
}

void LinearProgram::validate() const
{
  auto check = [this](std::vector<Term> const &terms, std::string const &where) {
    for (auto const &t : terms)
    {
      if (t.var >= variables_.size())
      {
        throw std::invalid_argument("undeclared variable referenced in " + where);
      }
    }
  };
  check(objective_, "objective");
  for (auto const &c : constraints_)
  {
    check(c.terms, c.name.empty() ? std::string("constraint") : c.name);
  }
}

Rational LinearProgram::evaluate_objective(std::vector<Rational> const &assignment) const
{
  Rational z;
  for (auto const &t : objective_)
  {
    z += t.coef * assignment.at(t.var);
  }
  return z;
}

Rational LinearProgram::evaluate(Constraint const &row, std::vector<Rational> const &assignment) const
{
  Rational lhs;
  for (auto const &t : row.terms)
  {
    lhs += t.coef * assignment.at(t.var);
  }
  return lhs;
}

namespace {

void write_terms(std::ostream &os, LinearProgram const &program, std::vector<Term> const &terms, bool exact)
{
  if (terms.empty())
  {
    os << " 0 " << program.variables().front().name;
    return;
  }
  bool first = true;
  for (auto const &t : terms)
  {
    Rational const mag = abs(t.coef);
    os << (t.coef.sign() < 0 ? " - " : (first ? " " : " + "));
    os << (exact ? mag.str() : mag.decimal(17)) << ' ' << program.variables()[t.var].name;
    first = false;
  }
}

char const *relation_text(Relation r)
{
  switch (r)
  {
  case Relation::LessEqual:
    return "<=";
  case Relation::GreaterEqual:
    return ">=";
  case Relation::Equal:
    return "=";
  }
  return "?";
}

}  // namespace

void write_cplex_lp(std::ostream &os, LinearProgram const &program)
{
  os << "\\ exact rational data in comments; decimals rendered to 17 significant digits\n";
  os << "Maximize\n";
  os << "\\ exact:";
  write_terms(os, program, program.objective(), true);
  os << "\n obj:";
  write_terms(os, program, program.objective(), false);
  os << "\nSubject To\n";
  std::size_t row = 0;
  for (auto const &c : program.constraints())
  {
    std::string const name = c.name.empty() ? "r" + std::to_string(row) : c.name;
    os << "\\ exact:";
    write_terms(os, program, c.terms, true);
    os << ' ' << relation_text(c.relation) << ' ' << c.rhs.str() << '\n';
    os << ' ' << name << ':';
    write_terms(os, program, c.terms, false);
    os << ' ' << relation_text(c.relation) << ' ' << c.rhs.decimal(17) << '\n';
    ++row;
  }
  bool any_free = std::any_of(program.variables().begin(), program.variables().end(),
                              [](Variable const &v) { return v.domain == Domain::Free; });
  if (any_free)
  {
    os << "Bounds\n";
    for (auto const &v : program.variables())
    {
      if (v.domain == Domain::Free)
      {
        os << ' ' << v.name << " free\n";
      }
    }
  }
  os << "End\n";
}

}  // namespace lp
}  // namespace twoitem
