#include "twoitem/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace twoitem {
namespace lp {
namespace {

struct SparseRow
{
  std::vector<std::size_t> idx;
  std::vector<mpq_class>   val;

  mpq_class const *find(std::size_t col) const
  {
    auto it = std::lower_bound(idx.begin(), idx.end(), col);
    if (it == idx.end() || *it != col)
    {
      return nullptr;
    }
    return &val[static_cast<std::size_t>(it - idx.begin())];
  }
};

// Dictionary-free tableau: every row reads sum_j row[j] x_j = rhs with the
// basic variable of the row carrying coefficient 1. The objective row holds
// reduced costs so that z = z0 + sum_j rc[j] x_j over the nonbasic columns.
class Tableau
{
public:
  explicit Tableau(std::size_t columns)
    : rc_(columns)
    , blocked_(columns, false)
  {}

  std::size_t add_row(SparseRow row, mpq_class rhs, std::size_t basic)
  {
    rows_.push_back(std::move(row));
    rhs_.push_back(std::move(rhs));
    basis_.push_back(basic);
    return rows_.size() - 1;
  }

  std::size_t columns() const
  {
    return rc_.size();
  }
  std::size_t rows() const
  {
    return rows_.size();
  }

  void block(std::size_t col)
  {
    blocked_[col] = true;
  }

  // Enables the lexicographic ratio test. Columns from `begin` on must form
  // the identity in the current (starting) basis.
  void use_lexicographic(std::size_t begin)
  {
    lex_begin_ = begin;
  }

  // Installs objective sum_j cost[j] x_j, pricing out the current basis.
  void set_objective(std::vector<mpq_class> const &cost)
  {
    rc_ = cost;
    z0_ = 0;
    mpq_class t;
    for (std::size_t r = 0; r < rows_.size(); ++r)
    {
      mpq_class const &cb = cost[basis_[r]];
      if (sgn(cb) == 0)
      {
        continue;
      }
      auto const &row = rows_[r];
      for (std::size_t k = 0; k < row.idx.size(); ++k)
      {
        mpq_mul(t.get_mpq_t(), cb.get_mpq_t(), row.val[k].get_mpq_t());
        mpq_sub(rc_[row.idx[k]].get_mpq_t(), rc_[row.idx[k]].get_mpq_t(), t.get_mpq_t());
      }
      mpq_mul(t.get_mpq_t(), cb.get_mpq_t(), rhs_[r].get_mpq_t());
      mpq_add(z0_.get_mpq_t(), z0_.get_mpq_t(), t.get_mpq_t());
    }
  }

  enum class Outcome
  {
    Optimal,
    Unbounded,
  };

  Outcome optimize(bool pure_bland, std::size_t &pivots)
  {
    bool bland = pure_bland;
    for (;;)
    {
      std::size_t const entering = choose_entering(bland);
      if (entering == npos)
      {
        return Outcome::Optimal;
      }
      std::size_t const leaving = ratio_test(entering);
      if (leaving == npos)
      {
        return Outcome::Unbounded;
      }
      bool const degenerate = sgn(rhs_[leaving]) == 0;
      pivot(leaving, entering);
      ++pivots;
      bland = pure_bland || (degenerate && lex_begin_ == npos);
    }
  }

  void pivot(std::size_t prow, std::size_t entering)
  {
    SparseRow &p = rows_[prow];
    {
      mpq_class const piv = *p.find(entering);
      for (auto &v : p.val)
      {
        mpq_div(v.get_mpq_t(), v.get_mpq_t(), piv.get_mpq_t());
      }
      mpq_div(rhs_[prow].get_mpq_t(), rhs_[prow].get_mpq_t(), piv.get_mpq_t());
    }

    mpq_class factor;
    mpq_class t;
    for (std::size_t r = 0; r < rows_.size(); ++r)
    {
      if (r == prow)
      {
        continue;
      }
      mpq_class const *a = rows_[r].find(entering);
      if (a == nullptr)
      {
        continue;
      }
      factor = *a;
      eliminate(rows_[r], p, factor, entering);
      mpq_mul(t.get_mpq_t(), factor.get_mpq_t(), rhs_[prow].get_mpq_t());
      mpq_sub(rhs_[r].get_mpq_t(), rhs_[r].get_mpq_t(), t.get_mpq_t());
    }

    if (sgn(rc_[entering]) != 0)
    {
      factor = rc_[entering];
      for (std::size_t k = 0; k < p.idx.size(); ++k)
      {
        mpq_mul(t.get_mpq_t(), factor.get_mpq_t(), p.val[k].get_mpq_t());
        mpq_sub(rc_[p.idx[k]].get_mpq_t(), rc_[p.idx[k]].get_mpq_t(), t.get_mpq_t());
      }
      mpq_mul(t.get_mpq_t(), factor.get_mpq_t(), rhs_[prow].get_mpq_t());
      mpq_add(z0_.get_mpq_t(), z0_.get_mpq_t(), t.get_mpq_t());
    }
    basis_[prow] = entering;
  }

  // Pivots basic columns satisfying `is_artificial` out of the basis where
  // possible; rows where no other column is available are redundant and
  // are removed.
  template <typename Pred>
  void expel(Pred is_artificial)
  {
    for (std::size_t r = 0; r < rows_.size();)
    {
      if (!is_artificial(basis_[r]))
      {
        ++r;
        continue;
      }
      std::size_t replacement = npos;
      auto const &row         = rows_[r];
      for (std::size_t k = 0; k < row.idx.size(); ++k)
      {
        if (!is_artificial(row.idx[k]) && !blocked_[row.idx[k]] && sgn(row.val[k]) != 0)
        {
          replacement = row.idx[k];
          break;
        }
      }
      if (replacement == npos)
      {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      pivot(r, replacement);
      ++r;
    }
  }

  mpq_class const &objective_value() const
  {
    return z0_;
  }

  std::vector<mpq_class> primal() const
  {
    std::vector<mpq_class> x(columns());
    for (std::size_t r = 0; r < rows_.size(); ++r)
    {
      x[basis_[r]] = rhs_[r];
    }
    return x;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  std::size_t choose_entering(bool bland) const
  {
    std::size_t best = npos;
    for (std::size_t j = 0; j < rc_.size(); ++j)
    {
      if (blocked_[j] || sgn(rc_[j]) <= 0)
      {
        continue;
      }
      if (bland)
      {
        return j;
      }
      if (best == npos || cmp(rc_[j], rc_[best]) > 0)
      {
        best = j;
      }
    }
    return best;
  }

  std::size_t ratio_test(std::size_t entering)
  {
    std::size_t best = npos;
    mpq_class const *best_a = nullptr;
    mpq_class lhs;
    mpq_class rhs;
    for (std::size_t r = 0; r < rows_.size(); ++r)
    {
      mpq_class const *a = rows_[r].find(entering);
      if (a == nullptr || sgn(*a) <= 0)
      {
        continue;
      }
      if (best == npos)
      {
        best   = r;
        best_a = a;
        continue;
      }
      // rhs_r / a_r  vs  rhs_best / a_best, both pivots positive
      mpq_mul(lhs.get_mpq_t(), rhs_[r].get_mpq_t(), best_a->get_mpq_t());
      mpq_mul(rhs.get_mpq_t(), rhs_[best].get_mpq_t(), a->get_mpq_t());
      int c = cmp(lhs, rhs);
      if (c == 0)
      {
        c = lex_begin_ == npos ? (basis_[r] < basis_[best] ? -1 : 1) : lex_compare(r, *a, best, *best_a);
      }
      if (c < 0)
      {
        best   = r;
        best_a = a;
      }
    }
    return best;
  }

  // Compares row r / ar with row q / aq over the starting-basis columns.
  int lex_compare(std::size_t r, mpq_class const &ar, std::size_t q, mpq_class const &aq)
  {
    auto const &x = rows_[r];
    auto const &y = rows_[q];
    auto i = std::lower_bound(x.idx.begin(), x.idx.end(), lex_begin_) - x.idx.begin();
    auto k = std::lower_bound(y.idx.begin(), y.idx.end(), lex_begin_) - y.idx.begin();
    auto const xn = static_cast<std::ptrdiff_t>(x.idx.size());
    auto const yn = static_cast<std::ptrdiff_t>(y.idx.size());
    while (i < xn || k < yn)
    {
      std::size_t const xi = i < xn ? x.idx[i] : npos;
      std::size_t const yi = k < yn ? y.idx[k] : npos;
      int c = 0;
      if (xi < yi)
      {
        c = sgn(x.val[i]);
        ++i;
      }
      else if (yi < xi)
      {
        c = -sgn(y.val[k]);
        ++k;
      }
      else
      {
        // x/ar vs y/aq with ar, aq > 0
        mpq_mul(tmp_.get_mpq_t(), x.val[i].get_mpq_t(), aq.get_mpq_t());
        mpq_mul(tmp2_.get_mpq_t(), y.val[k].get_mpq_t(), ar.get_mpq_t());
        c = cmp(tmp_, tmp2_);
        ++i;
        ++k;
      }
      if (c != 0)
      {
        return c;
      }
    }
    return 0;
  }

  // target -= factor * source, dropping the eliminated column.
  void eliminate(SparseRow &target, SparseRow const &source, mpq_class const &factor,
                 std::size_t eliminated)
  {
    scratch_.idx.clear();
    scratch_.val.clear();
    scratch_.idx.reserve(target.idx.size() + source.idx.size());
    scratch_.val.reserve(target.idx.size() + source.idx.size());
    std::size_t i = 0;
    std::size_t k = 0;
    while (i < target.idx.size() || k < source.idx.size())
    {
      std::size_t const ti = i < target.idx.size() ? target.idx[i] : npos;
      std::size_t const si = k < source.idx.size() ? source.idx[k] : npos;
      if (ti < si)
      {
        scratch_.idx.push_back(ti);
        scratch_.val.push_back(std::move(target.val[i]));
        ++i;
      }
      else if (si < ti)
      {
        scratch_.idx.push_back(si);
        scratch_.val.emplace_back();
        mpq_mul(scratch_.val.back().get_mpq_t(), factor.get_mpq_t(), source.val[k].get_mpq_t());
        mpq_neg(scratch_.val.back().get_mpq_t(), scratch_.val.back().get_mpq_t());
        ++k;
      }
      else
      {
        if (ti != eliminated)
        {
          mpq_mul(tmp_.get_mpq_t(), factor.get_mpq_t(), source.val[k].get_mpq_t());
          mpq_sub(target.val[i].get_mpq_t(), target.val[i].get_mpq_t(), tmp_.get_mpq_t());
          if (sgn(target.val[i]) != 0)
          {
            scratch_.idx.push_back(ti);
            scratch_.val.push_back(std::move(target.val[i]));
          }
        }
        ++i;
        ++k;
      }
    }
    std::swap(target.idx, scratch_.idx);
    std::swap(target.val, scratch_.val);
  }

  std::vector<SparseRow>   rows_;
  std::vector<mpq_class>   rhs_;
  std::vector<std::size_t> basis_;
  std::vector<mpq_class>   rc_;
  mpq_class                z0_;
  std::vector<bool>        blocked_;
  SparseRow                scratch_;
  mpq_class                tmp_;
  mpq_class                tmp2_;
  std::size_t              lex_begin_ = npos;
};

struct ColumnMap
{
  std::size_t plus  = 0;
  std::size_t minus = Tableau::npos;  // set for free variables
};

bool is_implied_bound(Constraint const &c, std::vector<Variable> const &vars)
{
  if (c.terms.size() != 1 || c.rhs.sign() != 0 || vars[c.terms[0].var].domain != Domain::NonNegative)
  {
    return false;
  }
  int const s = c.terms[0].coef.sign();
  return (c.relation == Relation::GreaterEqual && s > 0) || (c.relation == Relation::LessEqual && s < 0);
}

}  // namespace

char const *to_string(Status status)
{
  switch (status)
  {
  case Status::Optimal:
    return "optimal";
  case Status::Infeasible:
    return "infeasible";
  case Status::Unbounded:
    return "unbounded";
  }
  return "unknown";
}

Solution solve(LinearProgram const &program, SolveOptions const &options)
{
  program.validate();
  auto const &vars = program.variables();

  std::vector<ColumnMap> colmap(vars.size());
  std::size_t            structural = 0;
  for (std::size_t v = 0; v < vars.size(); ++v)
  {
    colmap[v].plus = structural++;
    if (vars[v].domain == Domain::Free)
    {
      colmap[v].minus = structural++;
    }
  }

  struct PendingRow
  {
    SparseRow row;
    mpq_class rhs;
    Relation  relation;
  };
  std::vector<PendingRow> pending;
  Solution                infeasible;
  infeasible.status = Status::Infeasible;

  for (auto const &c : program.constraints())
  {
    if (is_implied_bound(c, vars))
    {
      continue;
    }
    std::vector<std::pair<std::size_t, mpq_class>> entries;
    for (auto const &t : c.terms)
    {
      entries.emplace_back(colmap[t.var].plus, t.coef.raw());
      if (colmap[t.var].minus != Tableau::npos)
      {
        entries.emplace_back(colmap[t.var].minus, mpq_class(-t.coef.raw()));
      }
    }
    std::sort(entries.begin(), entries.end(), [](auto const &x, auto const &y) { return x.first < y.first; });
    PendingRow pr;
    pr.rhs      = c.rhs.raw();
    pr.relation = c.relation;
    if (sgn(pr.rhs) < 0)
    {
      pr.rhs = -pr.rhs;
      for (auto &e : entries)
      {
        e.second = -e.second;
      }
      if (pr.relation == Relation::LessEqual)
      {
        pr.relation = Relation::GreaterEqual;
      }
      else if (pr.relation == Relation::GreaterEqual)
      {
        pr.relation = Relation::LessEqual;
      }
    }
    if (entries.empty())
    {
      bool const ok = pr.relation == Relation::LessEqual || sgn(pr.rhs) == 0;
      if (!ok)
      {
        return infeasible;
      }
      continue;
    }
    // a >= 0 row with zero rhs is a <= row after negation; no artificial needed
    if (pr.relation == Relation::GreaterEqual && sgn(pr.rhs) == 0)
    {
      for (auto &e : entries)
      {
        e.second = -e.second;
      }
      pr.relation = Relation::LessEqual;
    }
    for (auto &e : entries)
    {
      pr.row.idx.push_back(e.first);
      pr.row.val.push_back(std::move(e.second));
    }
    pending.push_back(std::move(pr));
  }

  // column layout: structural | slack or surplus per inequality row | artificials
  std::size_t col = structural;
  std::vector<std::size_t> logical(pending.size(), Tableau::npos);
  for (std::size_t r = 0; r < pending.size(); ++r)
  {
    if (pending[r].relation != Relation::Equal)
    {
      logical[r] = col++;
    }
  }
  std::size_t const first_artificial = col;
  std::vector<std::size_t> artificial(pending.size(), Tableau::npos);
  for (std::size_t r = 0; r < pending.size(); ++r)
  {
    if (pending[r].relation != Relation::LessEqual)
    {
      artificial[r] = col++;
    }
  }

  Tableau tableau(col);
  for (std::size_t r = 0; r < pending.size(); ++r)
  {
    auto &pr = pending[r];
    std::size_t basic = Tableau::npos;
    if (pr.relation == Relation::LessEqual)
    {
      pr.row.idx.push_back(logical[r]);
      pr.row.val.emplace_back(1);
      basic = logical[r];
    }
    else
    {
      if (pr.relation == Relation::GreaterEqual)
      {
        pr.row.idx.push_back(logical[r]);
        pr.row.val.emplace_back(-1);
      }
      pr.row.idx.push_back(artificial[r]);
      pr.row.val.emplace_back(1);
      basic = artificial[r];
    }
    tableau.add_row(std::move(pr.row), std::move(pr.rhs), basic);
  }

  Solution solution;
  if (first_artificial == col && !options.pure_bland)
  {
    tableau.use_lexicographic(structural);
  }
  if (first_artificial != col)
  {
    std::vector<mpq_class> phase1(col);
    for (std::size_t j = first_artificial; j < col; ++j)
    {
      phase1[j] = -1;
    }
    tableau.set_objective(phase1);
    tableau.optimize(options.pure_bland, solution.pivots);
    if (sgn(tableau.objective_value()) < 0)
    {
      infeasible.pivots = solution.pivots;
      return infeasible;
    }
    auto const is_art = [first_artificial](std::size_t j) { return j >= first_artificial; };
    tableau.expel(is_art);
    for (std::size_t j = first_artificial; j < col; ++j)
    {
      tableau.block(j);
    }
  }

  std::vector<mpq_class> cost(col);
  for (auto const &t : program.objective())
  {
    cost[colmap[t.var].plus] += t.coef.raw();
    if (colmap[t.var].minus != Tableau::npos)
    {
      cost[colmap[t.var].minus] -= t.coef.raw();
    }
  }
  tableau.set_objective(cost);
  if (tableau.optimize(options.pure_bland, solution.pivots) == Tableau::Outcome::Unbounded)
  {
    solution.status = Status::Unbounded;
    return solution;
  }

  auto const x = tableau.primal();
  solution.status = Status::Optimal;
  solution.optimum = Rational(tableau.objective_value());
  solution.assignment.resize(vars.size());
  for (std::size_t v = 0; v < vars.size(); ++v)
  {
    mpq_class value = x[colmap[v].plus];
    if (colmap[v].minus != Tableau::npos)
    {
      value -= x[colmap[v].minus];
    }
    solution.assignment[v] = Rational(std::move(value));
  }

  if (options.verify && !certify(program, solution))
  {
    throw std::logic_error("simplex produced an assignment that fails exact verification");
  }
  return solution;
}

bool certify(LinearProgram const &program, Solution const &solution)
{
  if (solution.status != Status::Optimal || solution.assignment.size() != program.variables().size())
  {
    return false;
  }
  auto const &vars = program.variables();
  for (std::size_t v = 0; v < vars.size(); ++v)
  {
    if (vars[v].domain == Domain::NonNegative && solution.assignment[v].sign() < 0)
    {
      return false;
    }
  }
  for (auto const &c : program.constraints())
  {
    Rational const lhs = program.evaluate(c, solution.assignment);
    bool ok            = false;
    switch (c.relation)
    {
    case Relation::LessEqual:
      ok = lhs <= c.rhs;
      break;
    case Relation::GreaterEqual:
      ok = lhs >= c.rhs;
      break;
    case Relation::Equal:
      ok = lhs == c.rhs;
      break;
    }
    if (!ok)
    {
      return false;
    }
  }
  return program.evaluate_objective(solution.assignment) == solution.optimum;
}

}  // namespace lp
}  // namespace twoitem
