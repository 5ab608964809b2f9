#include "cli_app.hpp"

#include "twoitem/audit.hpp"
#include "twoitem/auction_lp.hpp"
#include "twoitem/closed_form.hpp"
#include "twoitem/continuous.hpp"
#include "twoitem/mechanism.hpp"
#include "twoitem/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace twoitem::cli {
namespace {

enum class Format
{
  Text,
  Csv,
  Json,
};

struct Settings
{
  std::string                format;
  std::string                output;
  std::optional<std::size_t> cap;
  int                        max_grid      = kDefaultMaxGrid;
  bool                       allow_decimal = false;
};

struct SpecArgs
{
  int         n = 2;
  std::string p;
  std::string a;
  std::string b;
};

class UsageError : public std::runtime_error
{
  using std::runtime_error::runtime_error;
};

std::string dec(Rational const &r)
{
  return r.decimal(12);
}

Format resolve_format(Settings const &s, Format fallback)
{
  if (s.format.empty())
  {
    return fallback;
  }
  if (s.format == "text")
  {
    return Format::Text;
  }
  if (s.format == "csv")
  {
    return Format::Csv;
  }
  return Format::Json;
}

std::optional<std::size_t> env_cap()
{
  char const *raw = std::getenv(kCapEnv);
  if (raw == nullptr || *raw == '\0')
  {
    return std::nullopt;
  }
  try
  {
    std::size_t used  = 0;
    long long   value = std::stoll(raw, &used);
    if (used != std::string(raw).size() || value <= 0)
    {
      throw std::invalid_argument(raw);
    }
    return static_cast<std::size_t>(value);
  }
  catch (std::exception const &)
  {
    throw UsageError(std::string(kCapEnv) + " must be a positive integer");
  }
}

std::size_t cap_or(Settings const &s, std::size_t fallback)
{
  if (s.cap)
  {
    return *s.cap;
  }
  return env_cap().value_or(fallback);
}

Rational parse_rational(std::string const &text, Settings const &s, char const *what)
{
  try
  {
    return Rational::parse(text, s.allow_decimal);
  }
  catch (std::invalid_argument const &e)
  {
    throw UsageError(std::string("--") + what + ": " + e.what());
  }
}

AuctionSpec read_spec(SpecArgs const &args, Settings const &s)
{
  return AuctionSpec(args.n, parse_rational(args.p, s, "p"), parse_rational(args.a, s, "a"),
                     parse_rational(args.b, s, "b"));
}

void add_spec_options(CLI::App *cmd, SpecArgs &args, bool with_b = true)
{
  cmd->add_option("--n", args.n, "number of buyers")->required();
  cmd->add_option("--p", args.p, "probability of the low value")->required();
  cmd->add_option("--a", args.a, "low value")->required();
  if (with_b)
  {
    cmd->add_option("--b", args.b, "high value")->required();
  }
}

// ---- formulas -------------------------------------------------------------

void emit_formulas(AuctionSpec const &spec, Format format, std::ostream &out)
{
  RevenueReport const r = revenue_report(spec);
  if (format == Format::Json)
  {
    Json j{{"spec", to_json(spec)}, {"regime", to_string(regime(spec))}};
    j.update(to_json(r));
    out << j.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, Rational>> const values{
      {"r_D", r.dic},         {"r_B", r.bic},         {"SREV", r.separate},   {"s_b", r.price_b},
      {"bundle", r.bundle},   {"v1", r.points.v1},    {"v2", r.points.v2},    {"v3", r.points.v3},
  };
  std::vector<std::pair<std::string, bool>> const flags{
      {"alpha", r.flags.alpha}, {"beta", r.flags.beta}, {"gamma", r.flags.gamma}};
  if (format == Format::Csv)
  {
    out << "quantity,num,den,decimal\n";
    for (auto const &[name, v] : values)
    {
      out << name << ',' << v.numerator().get_str() << ',' << v.denominator().get_str() << ',' << dec(v) << '\n';
    }
    for (auto const &[name, f] : flags)
    {
      out << name << ',' << (f ? 1 : 0) << ",1," << (f ? 1 : 0) << '\n';
    }
    return;
  }
  out << std::left << std::setw(8) << "spec" << spec.str() << '\n';
  out << std::setw(8) << "regime" << to_string(regime(spec)) << '\n';
  for (auto const &[name, v] : values)
  {
    out << std::setw(8) << name << std::setw(16) << v.str() << dec(v) << '\n';
  }
  out << std::setw(8) << "flags";
  for (auto const &[name, f] : flags)
  {
    out << name << '=' << (f ? 1 : 0) << (name == "gamma" ? "\n" : " ");
  }
}

// ---- mechanism ------------------------------------------------------------

struct CheckResult
{
  std::string name;
  bool        ok       = true;
  bool        required = true;
  std::string detail;
};

std::string join_violations(AuditReport const &report, std::size_t limit)
{
  std::string s;
  for (std::size_t k = 0; k < report.violations.size() && k < limit; ++k)
  {
    s += "  " + report.violations[k].str() + "\n";
  }
  if (report.violations.size() > limit)
  {
    s += "  ... " + std::to_string(report.violations.size() - limit) + " more\n";
  }
  return s;
}

Violation const *dic_witness(AuditReport const &report)
{
  for (auto const &v : report.violations)
  {
    if (v.buyer != 0 || !(v.true_type == kBB) || !(v.reported == kAB) || v.others.empty() || !(v.others[0] == kAB))
    {
      continue;
    }
    if (std::all_of(v.others.begin() + 1, v.others.end(), [](BuyerType t) { return t == kAA; }))
    {
      return &v;
    }
  }
  return report.violations.empty() ? nullptr : &report.violations.front();
}

int run_mechanism(SpecArgs const &args, std::string const &impl, bool check, Settings const &s, std::ostream &out,
                  std::ostream &err)
{
  AuctionSpec const spec = read_spec(args, s);
  std::size_t const cap  = cap_or(s, kDefaultProfileCap);
  bool const        dic  = impl == "dic";
  Mechanism const   mech = dic ? build_dic_optimal(spec, cap) : build_bic_optimal(spec, cap);
  Format const      fmt  = resolve_format(s, Format::Json);

  std::vector<AuditReport> reports;
  std::vector<CheckResult> checks;
  std::string              summary;
  if (check)
  {
    std::vector<AuditReport (*)(Mechanism const &)> required{check_ir};
    if (dic)
    {
      required.push_back(check_dic);
    }
    else
    {
      required.push_back(check_bic);
      required.push_back(check_bir);
    }
    for (auto fn : required)
    {
      reports.push_back(fn(mech));
      auto const &r = reports.back();
      checks.push_back({to_string(r.condition), r.passed, true, join_violations(r, 10)});
    }
    Rational const revenue = expected_revenue(mech);
    Rational const formula = dic ? optimal_dic_revenue(spec) : optimal_bic_revenue(spec);
    std::string const tag  = dic ? "r_D" : "r_B";
    checks.push_back({"revenue " + revenue.str() + (revenue == formula ? " = " : " != ") + tag, revenue == formula,
                      true, revenue == formula ? "" : "  formula " + tag + " = " + formula.str() + "\n"});
    if (!dic)
    {
      reports.push_back(check_dic(mech));
      auto const &r = reports.back();
      std::string detail;
      if (!r.passed)
      {
        detail = "witness " + dic_witness(r)->str();
      }
      checks.push_back({"DIC", r.passed, false, detail});
    }

    std::string head;
    std::string tail;
    for (auto const &c : checks)
    {
      if (c.required)
      {
        head += (head.empty() ? "" : ", ") + c.name + (c.ok ? " ok" : " FAILED");
      }
      else
      {
        tail = c.ok ? "; " + c.name + " ok" : "; " + c.name + " violated at " + c.detail;
      }
    }
    summary = head + tail;
  }

  bool const all_ok = std::all_of(checks.begin(), checks.end(), [](CheckResult const &c) { return c.ok || !c.required; });

  if (fmt == Format::Json)
  {
    Json j = to_json(mech);
    if (check)
    {
      Json audits = Json::array();
      for (auto const &r : reports)
      {
        audits.push_back(to_json(r));
      }
      j["audit"] = Json{{"summary", summary},
                        {"passed", all_ok},
                        {"revenue", canonical(expected_revenue(mech))},
                        {"reports", std::move(audits)}};
      err << summary << '\n';
    }
    out << j.dump(2) << '\n';
  }
  else
  {
    if (fmt == Format::Csv)
    {
      out << "profile,probability";
      for (std::size_t i = 1; i <= mech.buyers(); ++i)
      {
        out << ",q" << i << "_1,q" << i << "_2,u" << i << ",s" << i;
      }
      out << '\n';
    }
    else
    {
      out << to_string(mech.label()) << " mechanism for " << spec.str() << '\n';
    }
    for (std::size_t k = 0; k < mech.profile_count(); ++k)
    {
      if (fmt == Format::Csv)
      {
        out << '"' << mech.profile(k).str() << "\"," << mech.probability(k).str();
        for (std::size_t i = 0; i < mech.buyers(); ++i)
        {
          out << ',' << mech.share(i, 0, k).str() << ',' << mech.share(i, 1, k).str() << ','
              << mech.utility(i, k).str() << ',' << mech.payment(i, k).str();
        }
        out << '\n';
        continue;
      }
      out << std::left << std::setw(4 * static_cast<int>(mech.buyers()) + 2) << mech.profile(k).str()
          << std::setw(10) << mech.probability(k).str();
      for (std::size_t i = 0; i < mech.buyers(); ++i)
      {
        out << " | q=(" << mech.share(i, 0, k).str() << ',' << mech.share(i, 1, k).str()
            << ") u=" << mech.utility(i, k).str() << " s=" << mech.payment(i, k).str();
      }
      out << '\n';
    }
    if (check)
    {
      std::ostream &sink = fmt == Format::Text ? out : err;
      sink << summary << '\n';
      for (auto const &c : checks)
      {
        if (!c.ok && c.required)
        {
          sink << c.name << " violations:\n" << c.detail;
        }
      }
    }
  }
  return all_ok ? kOk : kAuditFailure;
}

// ---- certify --------------------------------------------------------------

int run_certify(SpecArgs const &args, bool grid, std::vector<int> const &grid_n, bool symmetrize,
                std::string const &lp_export, Settings const &s, std::ostream &out, std::ostream &err)
{
  BuildOptions opts;
  opts.cap        = cap_or(s, kDefaultLpProfileCap);
  opts.symmetrize = symmetrize;

  std::vector<AuctionSpec> specs;
  if (grid)
  {
    if (!lp_export.empty())
    {
      throw UsageError("--lp-export needs a single spec, not --grid");
    }
    specs = certification_grid(grid_n);
  }
  else
  {
    if (args.p.empty() || args.a.empty() || args.b.empty())
    {
      throw UsageError("certify needs --n --p --a --b or --grid");
    }
    specs.push_back(read_spec(args, s));
  }

  if (!lp_export.empty())
  {
    for (auto impl : {Implementation::Dominant, Implementation::Bayesian})
    {
      AuctionProgram const program(FiniteInstance::two_point(specs.front()), impl, opts);
      std::string const    path = lp_export + (impl == Implementation::Dominant ? "_dic.lp" : "_bic.lp");
      std::ofstream        file(path);
      if (!file)
      {
        throw UsageError("cannot write " + path);
      }
      lp::write_cplex_lp(file, program.program());
      err << "wrote " << path << '\n';
    }
  }

  std::vector<CertificationReport> reports;
  for (auto const &spec : specs)
  {
    reports.push_back(certify_revenue_formulas(spec, opts));
  }
  bool const all_ok = std::all_of(reports.begin(), reports.end(), [](auto const &r) { return r.ok(); });

  Format const fmt = resolve_format(s, Format::Text);
  if (fmt == Format::Json)
  {
    Json rows = Json::array();
    for (auto const &r : reports)
    {
      rows.push_back(to_json(r));
    }
    out << Json{{"all_equal", all_ok}, {"specs", reports.size()}, {"results", std::move(rows)}}.dump(2) << '\n';
  }
  else if (fmt == Format::Csv)
  {
    out << "n,p,a,b,lp_dic,r_dic,dic_equal,lp_bic,r_bic,bic_equal\n";
    for (auto const &r : reports)
    {
      out << r.spec.n() << ',' << r.spec.p().str() << ',' << r.spec.a().str() << ',' << r.spec.b().str() << ','
          << r.lp_dic.str() << ',' << r.formula_dic.str() << ',' << r.equal_dic << ',' << r.lp_bic.str() << ','
          << r.formula_bic.str() << ',' << r.equal_bic << '\n';
    }
  }
  else
  {
    out << std::left << std::setw(26) << "spec" << std::setw(10) << "regime" << std::setw(16) << "lp_D"
        << std::setw(16) << "r_D" << std::setw(6) << "D" << std::setw(16) << "lp_B" << std::setw(16) << "r_B"
        << "B\n";
    for (auto const &r : reports)
    {
      out << std::setw(26) << r.spec.str() << std::setw(10) << to_string(regime(r.spec)) << std::setw(16)
          << r.lp_dic.str() << std::setw(16) << r.formula_dic.str() << std::setw(6) << (r.equal_dic ? "ok" : "DIFF")
          << std::setw(16) << r.lp_bic.str() << std::setw(16) << r.formula_bic.str()
          << (r.equal_bic ? "ok" : "DIFF") << '\n';
    }
    out << (all_ok ? "all equal" : "MISMATCH") << " (" << reports.size() << (reports.size() == 1 ? " spec)\n" : " specs)\n");
  }
  return all_ok ? kOk : kOracleMismatch;
}

// ---- sweep ----------------------------------------------------------------

void csv_rational(std::ostream &out, Rational const &r)
{
  out << r.numerator().get_str() << ',' << r.denominator().get_str() << ',' << dec(r);
}

int run_sweep(SpecArgs const &args, std::string const &b_lo, std::string const &b_hi, int steps, Settings const &s,
              std::ostream &out)
{
  auto const rows = sweep_b(args.n, parse_rational(args.p, s, "p"), parse_rational(args.a, s, "a"),
                            parse_rational(b_lo, s, "b-lo"), parse_rational(b_hi, s, "b-hi"), steps);
  if (resolve_format(s, Format::Csv) == Format::Json)
  {
    Json j = Json::array();
    for (auto const &r : rows)
    {
      j.push_back(Json{{"b", canonical(r.b)},
                       {"r_dic", canonical(r.dic)},
                       {"r_bic", canonical(r.bic)},
                       {"srev", canonical(r.separate)},
                       {"alpha", r.flags.alpha},
                       {"beta", r.flags.beta},
                       {"gamma", r.flags.gamma},
                       {"breakpoint", r.breakpoint}});
    }
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "b_num,b_den,b_dec,rD_num,rD_den,rD_dec,rB_num,rB_den,rB_dec,srev_num,srev_den,srev_dec,alpha,beta,gamma,"
         "breakpoint\n";
  for (auto const &r : rows)
  {
    csv_rational(out, r.b);
    out << ',';
    csv_rational(out, r.dic);
    out << ',';
    csv_rational(out, r.bic);
    out << ',';
    csv_rational(out, r.separate);
    out << ',' << r.flags.alpha << ',' << r.flags.beta << ',' << r.flags.gamma << ',' << r.breakpoint << '\n';
  }
  return kOk;
}

// ---- continuous -----------------------------------------------------------

constexpr char const *kDiscretizationNote =
    "midpoint discretization, 2*grid_m equal-weight atoms; band membership is indicative only";

int run_continuous(std::vector<std::string> const &a_list, std::string const &lambda_text, int grid_m,
                   std::string const &impl, Settings const &s, std::ostream &out, std::ostream &err)
{
  Rational const        lambda = parse_rational(lambda_text, s, "lambda");
  std::vector<Rational> as;
  for (auto const &text : a_list)
  {
    as.push_back(parse_rational(text, s, "a"));
  }
  if (as.empty())
  {
    throw UsageError("--a needs at least one value");
  }
  Format const fmt = resolve_format(s, Format::Csv);

  struct Cell
  {
    Rational                a;
    Implementation          impl;
    Rational                optimum;
  };
  std::vector<Cell>     cells;
  std::vector<ProbeRow> probe;
  if (impl == "both")
  {
    probe = scale_probe(as, grid_m, lambda, s.max_grid);
    for (auto const &row : probe)
    {
      cells.push_back({row.a, Implementation::Dominant, row.lp_dic});
      cells.push_back({row.a, Implementation::Bayesian, row.lp_bic});
    }
  }
  else
  {
    auto const which = impl == "dic" ? Implementation::Dominant : Implementation::Bayesian;
    for (auto const &a : as)
    {
      cells.push_back({a, which, lp_over_grid(ContinuousSpec{2, a, lambda, grid_m}, which, s.max_grid)});
    }
  }

  auto impl_name = [](Implementation i) { return i == Implementation::Dominant ? "dic" : "bic"; };
  if (fmt == Format::Json)
  {
    Json rows = Json::array();
    for (auto const &c : cells)
    {
      rows.push_back(Json{{"a", canonical(c.a)},
                          {"grid_m", grid_m},
                          {"impl", impl_name(c.impl)},
                          {"optimum", canonical(c.optimum)},
                          {"ratio_to_a", canonical(c.optimum / c.a)}});
    }
    Json j{{"lambda", canonical(lambda)}, {"note", kDiscretizationNote}, {"cells", std::move(rows)}};
    if (!probe.empty())
    {
      Json p = Json::array();
      for (auto const &r : probe)
      {
        Json row{{"a", canonical(r.a)},
                 {"relative_gap", canonical(r.relative_gap())},
                 {"target_dic", canonical(r.target_dic)},
                 {"target_bic", canonical(r.target_bic)}};
        if (r.dic_in_band)
        {
          row["dic_in_band"] = *r.dic_in_band;
          row["bic_in_band"] = *r.bic_in_band;
        }
        p.push_back(std::move(row));
      }
      j["probe"] = std::move(p);
    }
    out << j.dump(2) << '\n';
    return kOk;
  }
  if (fmt == Format::Csv)
  {
    err << "note: " << kDiscretizationNote << '\n';
    out << "a,grid_m,impl,optimum_num,optimum_den,optimum_decimal,ratio_to_a\n";
    for (auto const &c : cells)
    {
      out << c.a.str() << ',' << grid_m << ',' << impl_name(c.impl) << ',' << c.optimum.numerator().get_str() << ','
          << c.optimum.denominator().get_str() << ',' << dec(c.optimum) << ',' << dec(c.optimum / c.a) << '\n';
    }
    return kOk;
  }
  out << "# " << kDiscretizationNote << '\n';
  out << "# lambda=" << lambda.str() << " grid_m=" << grid_m << '\n';
  for (auto const &c : cells)
  {
    out << std::left << "a=" << std::setw(8) << c.a.str() << std::setw(5) << impl_name(c.impl) << std::setw(24)
        << c.optimum.str() << std::setw(16) << dec(c.optimum) << "per a " << dec(c.optimum / c.a) << '\n';
  }
  for (auto const &r : probe)
  {
    out << "a=" << std::setw(8) << r.a.str() << "gap " << std::setw(16) << dec(r.relative_gap()) << "targets "
        << r.target_dic.str() << ", " << r.target_bic.str();
    if (r.dic_in_band)
    {
      out << "  bands " << (*r.dic_in_band ? "in" : "out") << '/' << (*r.bic_in_band ? "in" : "out");
    }
    out << '\n';
  }
  return kOk;
}

}  // namespace

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Exact revenue formulas, mechanisms, audits and LP certification for two-item auctions"};
  app.name("twoitem");
  app.require_subcommand(1);
  app.fallthrough();

  Settings settings;
  app.add_option("--format", settings.format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("-o,--output", settings.output, "write output to a file");
  app.add_option("--cap", settings.cap, "profile cap override")->check(CLI::PositiveNumber);
  app.add_option("--max-grid", settings.max_grid, "largest grid_m accepted by continuous")
      ->check(CLI::PositiveNumber);
  app.add_flag("--allow-decimal", settings.allow_decimal, "accept terminating decimals as exact inputs");

  SpecArgs spec_args;

  auto *formulas = app.add_subcommand("formulas", "closed-form revenues, flags and breakpoints");
  add_spec_options(formulas, spec_args);

  std::string impl;
  bool        check = false;
  auto       *mechanism = app.add_subcommand("mechanism", "export the optimal mechanism tables");
  add_spec_options(mechanism, spec_args);
  mechanism->add_option("--impl", impl, "dic or bic")->required()->check(CLI::IsMember({"dic", "bic"}));
  mechanism->add_flag("--check", check, "run the matching audits and the revenue check");

  bool             grid = false;
  std::vector<int> grid_n{2, 3};
  bool             symmetrize = false;
  std::string      lp_export;
  auto            *certify = app.add_subcommand("certify", "compare exact LP optima with the closed forms");
  certify->add_option("--n", spec_args.n, "number of buyers");
  certify->add_option("--p", spec_args.p, "probability of the low value");
  certify->add_option("--a", spec_args.a, "low value");
  certify->add_option("--b", spec_args.b, "high value");
  certify->add_flag("--grid", grid, "run the built-in grid");
  certify->add_option("--grid-n", grid_n, "buyer counts used by --grid")->delimiter(',');
  certify->add_flag("--symmetrize", symmetrize, "solve the symmetry-reduced programs");
  certify->add_option("--lp-export", lp_export, "write PREFIX_dic.lp and PREFIX_bic.lp");

  std::string b_lo;
  std::string b_hi;
  int         steps = 60;
  auto       *sweep = app.add_subcommand("sweep", "revenue curves as functions of b");
  add_spec_options(sweep, spec_args, false);
  sweep->add_option("--b-lo", b_lo, "first b")->required();
  sweep->add_option("--b-hi", b_hi, "last b")->required();
  sweep->add_option("--steps", steps, "evenly spaced points, ends included");

  std::vector<std::string> a_list;
  std::string              lambda = "2";
  int                      grid_m = 1;
  std::string              cimpl  = "both";
  auto *continuous = app.add_subcommand("continuous", "LP optima for discretized two-interval uniform values");
  continuous->add_option("--a", a_list, "values of a, comma separated")->required()->delimiter(',');
  continuous->add_option("--lambda", lambda, "ratio of the interval starts");
  continuous->add_option("--grid-m", grid_m, "points per interval");
  continuous->add_option("--impl", cimpl, "dic, bic or both")->check(CLI::IsMember({"dic", "bic", "both"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::ostringstream buffer;
  int                code = kOk;
  try
  {
    if (*formulas)
    {
      emit_formulas(read_spec(spec_args, settings), resolve_format(settings, Format::Text), buffer);
    }
    else if (*mechanism)
    {
      code = run_mechanism(spec_args, impl, check, settings, buffer, err);
    }
    else if (*certify)
    {
      code = run_certify(spec_args, grid, grid_n, symmetrize, lp_export, settings, buffer, err);
    }
    else if (*sweep)
    {
      code = run_sweep(spec_args, b_lo, b_hi, steps, settings, buffer);
    }
    else if (*continuous)
    {
      code = run_continuous(a_list, lambda, grid_m, cimpl, settings, buffer, err);
    }
  }
  catch (CapExceeded const &e)
  {
    err << "error: " << e.what() << " (raise it with "
        << (*continuous ? std::string("--max-grid") : std::string("--cap or ") + kCapEnv) << ")\n";
    return kCapExceeded;
  }
  catch (UsageError const &e)
  {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  catch (std::invalid_argument const &e)
  {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (settings.output.empty())
  {
    out << buffer.str();
  }
  else
  {
    std::ofstream file(settings.output, std::ios::binary);
    if (!file)
    {
      err << "error: cannot write " << settings.output << '\n';
      return kUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace twoitem::cli
