#include "twoitem/auction_lp.hpp"

#include "twoitem/closed_form.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace twoitem {

FiniteInstance FiniteInstance::two_point(AuctionSpec const &spec)
{
  FiniteInstance inst;
  inst.buyers  = static_cast<std::size_t>(spec.n());
  inst.values  = {spec.a(), spec.b()};
  inst.weights = {spec.p(), Rational(1) - spec.p()};
  return inst;
}

std::size_t FiniteInstance::profiles(std::size_t cap) const
{
  std::size_t count = 1;
  for (std::size_t i = 0; i < buyers; ++i)
  {
    if (count > cap / types())
    {
      throw CapExceeded("instance too large for exhaustive mode: " + std::to_string(types()) + "^" +
                        std::to_string(buyers) + " profiles exceed the cap of " + std::to_string(cap));
    }
    count *= types();
  }
  return count;
}

void FiniteInstance::validate() const
{
  if (buyers < 1)
  {
    throw SpecError("at least one buyer is required");
  }
  if (values.empty() || values.size() != weights.size())
  {
    throw SpecError("support values and weights must be nonempty and of equal length");
  }
  Rational total;
  for (auto const &w : weights)
  {
    if (w.sign() <= 0)
    {
      throw SpecError("support weights must be positive");
    }
    total += w;
  }
  if (total != Rational(1))
  {
    throw SpecError("support weights must sum to 1");
  }
}

char const *to_string(Implementation impl)
{
  return impl == Implementation::Dominant ? "DIC" : "BIC";
}

namespace {

struct Layout
{
  std::size_t n;
  std::size_t types;
  std::size_t profiles;

  std::size_t stride(std::size_t buyer) const
  {
    std::size_t s = 1;
    for (std::size_t k = buyer + 1; k < n; ++k)
    {
      s *= types;
    }
    return s;
  }
  std::size_t digit(std::size_t profile, std::size_t buyer) const
  {
    return (profile / stride(buyer)) % types;
  }
  std::size_t substitute(std::size_t profile, std::size_t buyer, std::size_t type) const
  {
    std::size_t const s = stride(buyer);
    return profile - digit(profile, buyer) * s + type * s;
  }
};

// Union-find over table slots, merged along the generators of the symmetry
// group (adjacent buyer transpositions and the item swap).
class Orbits
{
public:
  explicit Orbits(std::size_t size)
    : parent_(size)
  {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x)
  {
    while (parent_[x] != x)
    {
      parent_[x] = parent_[parent_[x]];
      x          = parent_[x];
    }
    return x;
  }
  void merge(std::size_t x, std::size_t y)
  {
    x = find(x);
    y = find(y);
    if (x != y)
    {
      parent_[std::max(x, y)] = std::min(x, y);
    }
  }

private:
  std::vector<std::size_t> parent_;
};

std::string row_key(lp::Constraint const &c)
{
  std::ostringstream os;
  os << static_cast<int>(c.relation) << '|' << c.rhs.str();
  for (auto const &t : c.terms)
  {
    os << '|' << t.var << ':' << t.coef.str();
  }
  return os.str();
}

}  // namespace

AuctionProgram::AuctionProgram(FiniteInstance instance, Implementation impl, BuildOptions const &options)
  : instance_(std::move(instance))
  , impl_(impl)
  , symmetrized_(options.symmetrize)
{
  instance_.validate();
  profiles_ = instance_.profiles(options.cap);
  Layout const L{instance_.buyers, instance_.types(), profiles_};
  std::size_t const n = L.n;
  std::size_t const T = L.types;

  std::vector<Rational> type_weight(T);
  for (std::size_t t = 0; t < T; ++t)
  {
    type_weight[t] = instance_.type_weight(t);
  }
  std::vector<Rational> profile_weight(profiles_);
  for (std::size_t k = 0; k < profiles_; ++k)
  {
    Rational w(1);
    for (std::size_t i = 0; i < n; ++i)
    {
      w *= type_weight[L.digit(k, i)];
    }
    profile_weight[k] = w;
  }

  // slot -> LP variable
  slot_to_var_.assign(slot_count(), 0);
  if (symmetrized_)
  {
    Orbits orbits(slot_count());
    std::size_t const K = instance_.support();
    auto swap_type      = [K](std::size_t t) { return (t % K) * K + t / K; };
    for (std::size_t k = 0; k < profiles_; ++k)
    {
      std::size_t swapped = 0;
      for (std::size_t i = 0; i < n; ++i)
      {
        swapped = swapped * T + swap_type(L.digit(k, i));
      }
      for (std::size_t i = 0; i < n; ++i)
      {
        orbits.merge(q_slot(i, 0, k), q_slot(i, 1, swapped));
        orbits.merge(q_slot(i, 1, k), q_slot(i, 0, swapped));
        orbits.merge(u_slot(i, k), u_slot(i, swapped));
      }
      for (std::size_t i = 0; i + 1 < n; ++i)
      {
        std::size_t const exchanged = L.substitute(L.substitute(k, i, L.digit(k, i + 1)), i + 1, L.digit(k, i));
        for (std::size_t j = 0; j < 2; ++j)
        {
          orbits.merge(q_slot(i, j, k), q_slot(i + 1, j, exchanged));
          orbits.merge(q_slot(i + 1, j, k), q_slot(i, j, exchanged));
        }
        orbits.merge(u_slot(i, k), u_slot(i + 1, exchanged));
        orbits.merge(u_slot(i + 1, k), u_slot(i, exchanged));
      }
    }
    for (std::size_t s = 0; s < slot_count(); ++s)
    {
      slot_to_var_[s] = orbits.find(s);
    }
    // number orbits in slot order
    std::vector<std::size_t> numbering(slot_count(), static_cast<std::size_t>(-1));
    std::size_t              next = 0;
    for (std::size_t s = 0; s < slot_count(); ++s)
    {
      std::size_t const r = slot_to_var_[s];
      if (numbering[r] == static_cast<std::size_t>(-1))
      {
        numbering[r] = next++;
      }
      slot_to_var_[s] = numbering[r];
    }
  }
  else
  {
    std::iota(slot_to_var_.begin(), slot_to_var_.end(), std::size_t{0});
  }

  // declare variables in slot order of their first occurrence
  std::size_t declared = 0;
  auto const  u_domain = impl_ == Implementation::Dominant ? lp::Domain::NonNegative : lp::Domain::Free;
  for (std::size_t s = 0; s < slot_count(); ++s)
  {
    if (slot_to_var_[s] != declared)
    {
      continue;
    }
    std::string name;
    lp::Domain  domain = lp::Domain::NonNegative;
    if (s < 2 * n * profiles_)
    {
      std::size_t const item  = s % 2;
      std::size_t const buyer = (s / 2) % n;
      std::size_t const k     = s / (2 * n);
      name = "q_" + std::to_string(buyer + 1) + "_" + std::to_string(item + 1) + "_" + std::to_string(k);
    }
    else
    {
      std::size_t const rel   = s - 2 * n * profiles_;
      std::size_t const buyer = rel % n;
      std::size_t const k     = rel / n;
      name   = "u_" + std::to_string(buyer + 1) + "_" + std::to_string(k);
      domain = u_domain;
    }
    program_.add_variable(std::move(name), domain);
    ++declared;
  }

  auto q = [&](std::size_t i, std::size_t j, std::size_t k, Rational coef) {
    return lp::Term{slot_to_var_[q_slot(i, j, k)], std::move(coef)};
  };
  auto u = [&](std::size_t i, std::size_t k, Rational coef) {
    return lp::Term{slot_to_var_[u_slot(i, k)], std::move(coef)};
  };

  std::set<std::string> seen;
  auto add_row = [&](std::vector<lp::Term> terms, lp::Relation rel, Rational rhs, std::string name) {
    if (!symmetrized_)
    {
      program_.add_constraint(std::move(terms), rel, std::move(rhs), std::move(name));
      return;
    }
    // merge terms that landed on the same orbit so duplicate rows compare equal
    lp::Constraint        probe{std::move(terms), rel, std::move(rhs), std::move(name)};
    std::vector<lp::Term> merged = probe.terms;
    std::sort(merged.begin(), merged.end(), [](lp::Term const &x, lp::Term const &y) { return x.var < y.var; });
    std::vector<lp::Term> compact;
    for (auto &t : merged)
    {
      if (!compact.empty() && compact.back().var == t.var)
      {
        compact.back().coef += t.coef;
      }
      else
      {
        compact.push_back(t);
      }
    }
    std::erase_if(compact, [](lp::Term const &t) { return t.coef.is_zero(); });
    probe.terms = compact;
    if (compact.empty() || !seen.insert(row_key(probe)).second)
    {
      return;
    }
    program_.add_constraint(std::move(probe.terms), probe.relation, std::move(probe.rhs), std::move(probe.name));
  };

  auto value_gap = [&](std::size_t t, std::size_t tp, std::size_t j) {
    return instance_.type_value(t, j) - instance_.type_value(tp, j);
  };

  // profiles where `buyer` holds type 0 enumerate t_-i in order
  auto bases = [&](std::size_t buyer) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < profiles_; ++k)
    {
      if (L.digit(k, buyer) == 0)
      {
        out.push_back(k);
      }
    }
    return out;
  };

  if (impl_ == Implementation::Dominant)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      auto const others = bases(i);
      for (std::size_t t = 0; t < T; ++t)
      {
        for (std::size_t tp = 0; tp < T; ++tp)
        {
          if (t == tp)
          {
            continue;
          }
          for (std::size_t base : others)
          {
            std::size_t const k_true = L.substitute(base, i, t);
            std::size_t const k_lie  = L.substitute(base, i, tp);
            add_row({u(i, k_true, 1), u(i, k_lie, -1), q(i, 0, k_lie, -value_gap(t, tp, 0)),
                     q(i, 1, k_lie, -value_gap(t, tp, 1))},
                    lp::Relation::GreaterEqual, 0,
                    "dic_" + std::to_string(i + 1) + "_" + std::to_string(t) + "_" + std::to_string(tp) + "_" +
                        std::to_string(base));
          }
        }
      }
    }
    for (std::size_t k = 0; k < profiles_; ++k)
    {
      for (std::size_t i = 0; i < n; ++i)
      {
        add_row({u(i, k, 1)}, lp::Relation::GreaterEqual, 0, "ir_" + std::to_string(i + 1) + "_" + std::to_string(k));
      }
    }
  }
  else
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      auto const others = bases(i);
      for (std::size_t t = 0; t < T; ++t)
      {
        for (std::size_t tp = 0; tp < T; ++tp)
        {
          if (t == tp)
          {
            continue;
          }
          std::vector<lp::Term> terms;
          for (std::size_t base : others)
          {
            std::size_t const k_true = L.substitute(base, i, t);
            std::size_t const k_lie  = L.substitute(base, i, tp);
            Rational const    w      = profile_weight[k_true] / type_weight[t];
            terms.push_back(u(i, k_true, w));
            terms.push_back(u(i, k_lie, -w));
            terms.push_back(q(i, 0, k_lie, -w * value_gap(t, tp, 0)));
            terms.push_back(q(i, 1, k_lie, -w * value_gap(t, tp, 1)));
          }
          add_row(std::move(terms), lp::Relation::GreaterEqual, 0,
                  "bic_" + std::to_string(i + 1) + "_" + std::to_string(t) + "_" + std::to_string(tp));
        }
      }
      for (std::size_t t = 0; t < T; ++t)
      {
        std::vector<lp::Term> terms;
        for (std::size_t base : others)
        {
          std::size_t const k = L.substitute(base, i, t);
          terms.push_back(u(i, k, profile_weight[k] / type_weight[t]));
        }
        add_row(std::move(terms), lp::Relation::GreaterEqual, 0,
                "bir_" + std::to_string(i + 1) + "_" + std::to_string(t));
      }
    }
  }

  for (std::size_t k = 0; k < profiles_; ++k)
  {
    for (std::size_t j = 0; j < 2; ++j)
    {
      std::vector<lp::Term> terms;
      for (std::size_t i = 0; i < n; ++i)
      {
        terms.push_back(q(i, j, k, 1));
      }
      add_row(std::move(terms), lp::Relation::LessEqual, 1,
              "supply_" + std::to_string(j + 1) + "_" + std::to_string(k));
    }
  }

  std::vector<lp::Term> objective;
  for (std::size_t k = 0; k < profiles_; ++k)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      std::size_t const t = L.digit(k, i);
      for (std::size_t j = 0; j < 2; ++j)
      {
        objective.push_back(q(i, j, k, profile_weight[k] * instance_.type_value(t, j)));
      }
      objective.push_back(u(i, k, -profile_weight[k]));
    }
  }
  program_.set_objective(std::move(objective));
}

std::vector<Rational> AuctionProgram::expand(std::vector<Rational> const &assignment) const
{
  std::vector<Rational> out(slot_count());
  for (std::size_t s = 0; s < slot_count(); ++s)
  {
    out[s] = assignment.at(slot_to_var_[s]);
  }
  return out;
}

AuctionProgram build_dic_lp(AuctionSpec const &spec, BuildOptions const &options)
{
  return AuctionProgram(FiniteInstance::two_point(spec), Implementation::Dominant, options);
}

AuctionProgram build_bic_lp(AuctionSpec const &spec, BuildOptions const &options)
{
  return AuctionProgram(FiniteInstance::two_point(spec), Implementation::Bayesian, options);
}

Mechanism extract_mechanism(AuctionProgram const &program, AuctionSpec const &spec, lp::Solution const &solution)
{
  if (solution.status != lp::Status::Optimal)
  {
    throw std::invalid_argument("cannot extract a mechanism from a non-optimal solution");
  }
  if (!(program.instance().values == FiniteInstance::two_point(spec).values) ||
      program.instance().buyers != static_cast<std::size_t>(spec.n()))
  {
    throw std::invalid_argument("program was not built for this instance");
  }
  auto const slots = program.expand(solution.assignment);
  Mechanism  mech(spec, MechanismLabel::Custom);
  for (std::size_t k = 0; k < program.profile_count(); ++k)
  {
    for (std::size_t i = 0; i < mech.buyers(); ++i)
    {
      mech.set_share(i, 0, k, slots[program.q_slot(i, 0, k)]);
      mech.set_share(i, 1, k, slots[program.q_slot(i, 1, k)]);
      mech.set_utility(i, k, slots[program.u_slot(i, k)]);
    }
  }
  return mech;
}

Rational solve_optimum(AuctionProgram const &program, lp::Solution *out)
{
  lp::Solution solution = lp::solve(program.program());
  if (solution.status != lp::Status::Optimal)
  {
    throw std::runtime_error(std::string("revenue program ended ") + lp::to_string(solution.status));
  }
  Rational value = solution.optimum;
  if (out != nullptr)
  {
    *out = std::move(solution);
  }
  return value;
}

CertificationReport certify_revenue_formulas(AuctionSpec const &spec, BuildOptions const &options)
{
  CertificationReport report{spec, {}, {}, false, {}, {}, false, 0};
  lp::Solution        dic;
  lp::Solution        bic;
  report.lp_dic      = solve_optimum(build_dic_lp(spec, options), &dic);
  report.lp_bic      = solve_optimum(build_bic_lp(spec, options), &bic);
  report.pivots      = dic.pivots + bic.pivots;
  report.formula_dic = optimal_dic_revenue(spec);
  report.formula_bic = optimal_bic_revenue(spec);
  report.equal_dic   = report.lp_dic == report.formula_dic;
  report.equal_bic   = report.lp_bic == report.formula_bic;
  return report;
}

}  // namespace twoitem
