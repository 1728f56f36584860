#include "motivic/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "motivic/oracles.hpp"

namespace motivic::cli {

namespace {

std::vector<long> parse_long_list(const std::string& text, const char* what) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw UsageError(std::string("malformed ") + what + " '" + text + "'");
    out.push_back(value);
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what);
  return out;
}

ResolutionGraph load_graph(const std::string& path) { return ResolutionGraph::build(load_graph_description(path)); }

std::size_t series_arity(const std::string& series, const ResolutionGraph& g) {
  return series == "pg" ? static_cast<std::size_t>(g.branch_count()) : static_cast<std::size_t>(g.size());
}

std::string rational_list(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

std::string long_list(const std::vector<long>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + ")";
}

template <class T>
nlohmann::json matrix_json(const Matrix<T>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t a = 0; a < m.rows(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t b = 0; b < m.cols(); ++b) {
      if constexpr (std::is_same_v<T, Integer>) row.push_back(m(a, b).get_si());
      else row.push_back(to_string(m(a, b)));
    }
    rows.push_back(row);
  }
  return rows;
}

template <class T>
void print_matrix(std::ostream& out, const std::string& title, const Matrix<T>& m) {
  std::size_t width = 1;
  for (std::size_t a = 0; a < m.rows(); ++a)
    for (std::size_t b = 0; b < m.cols(); ++b) width = std::max(width, to_string(m(a, b)).size());
  out << title << "\n";
  for (std::size_t a = 0; a < m.rows(); ++a) {
    for (std::size_t b = 0; b < m.cols(); ++b) out << (b ? " " : "") << std::setw(int(width) + 1) << to_string(m(a, b));
    out << "\n";
  }
}

template <class Coeff>
void print_series(std::ostream& out, const Series<Coeff>& s) {
  std::size_t width = 0;
  for (const auto& [e, c] : s.terms()) width = std::max(width, e.to_text().size());
  for (const auto& [e, c] : s.terms())
    out << std::left << std::setw(int(width)) << e.to_text() << std::right << " : " << detail::coeff_text(c) << "\n";
}

void report_warnings(const ResolutionGraph& g, std::ostream& err) {
  for (const auto& w : g.warnings()) err << "warning: [" << w.code << "] " << w.message << "\n";
}

int cmd_matrices(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ResolutionGraph g = load_graph(cfg.input);
  report_warnings(g, err);
  if (cfg.format == Format::json) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : g.pairs())
      pairs.push_back({{"pair", {p.first + 1, p.second + 1}}, {"h", p.degree}, {"overridden", p.overridden}});
    nlohmann::json j = {{"P", matrix_json(g.proximity())},
                        {"Delta", matrix_json(g.delta())},
                        {"N", matrix_json(g.intersection())},
                        {"M", matrix_json(g.m_matrix())},
                        {"pairs", pairs},
                        {"nu_bullet", g.nu_bullet()},
                        {"nu_circ", g.nu_circ()},
                        {"beta", g.beta()},
                        {"epsilon", g.epsilon()},
                        {"totally_rational", g.totally_rational()}};
    out << j.dump(2) << "\n";
    return exit_ok;
  }
  print_matrix(out, "P", g.proximity());
  out << "\n";
  print_matrix(out, "Delta", g.delta());
  out << "\n";
  print_matrix(out, "N", g.intersection());
  out << "\n";
  print_matrix(out, "M", g.m_matrix());
  out << "\n";
  out << "pairs     ";
  if (g.pairs().empty()) out << " none";
  for (const auto& p : g.pairs()) out << " E" << p.first + 1 << "-E" << p.second + 1 << "(h=" << p.degree << ")";
  out << "\n";
  out << "nu_bullet  " << long_list(g.nu_bullet()) << "\n";
  out << "nu_circ    " << long_list(g.nu_circ()) << "\n";
  out << "beta       " << long_list(g.beta()) << "\n";
  out << "epsilon    " << long_list(g.epsilon()) << "\n";
  return exit_ok;
}

nlohmann::json read_stratum_json(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') return nlohmann::json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw std::runtime_error("cannot open stratum file '" + arg + "'");
  return nlohmann::json::parse(in);
}

int cmd_codim(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ResolutionGraph g = load_graph(cfg.input);
  report_warnings(g, err);
  nlohmann::json sj;
  try {
    sj = read_stratum_json(cfg.stratum);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("stratum is not valid JSON: ") + e.what());
  }
  const Stratum st = parse_stratum(sj, g);
  const auto nh = nhat(st, g);
  const ExponentVector w = w_of(nh, g);
  const auto hd = hoskin_deligne(w, g);
  const Rational f = codim_F(st, g), display = codim_F_display(st, g);
  std::optional<Rational> fd;
  if (st.divisorial()) fd = codim_FD(st, g);
  std::optional<ExponentVector> v;
  if (g.branch_count() > 0) v = v_of(st, g);

  if (!w.integral() || (v && !v->integral()))
    err << "warning: non-integral values; literal reading of the stratum sums\n";

  if (cfg.format == Format::json) {
    nlohmann::json j = {{"stratum", stratum_to_json(st, g)},
                        {"nhat", nh},
                        {"w", w.to_json()},
                        {"w_integral", w.integral()},
                        {"F", to_string(f)},
                        {"F_display", to_string(display)},
                        {"F_integral", is_integral(f)},
                        {"hD", to_string(hd.value)},
                        {"hD_in_semigroup", hd.in_semigroup},
                        {"deg_AK", to_string(deg_AK(nh, g))},
                        {"deg_AA", to_string(deg_AA(nh, g))}};
    j["v"] = v ? v->to_json() : nlohmann::json(nullptr);
    j["v_integral"] = v ? nlohmann::json(v->integral()) : nlohmann::json(nullptr);
    j["FD"] = fd ? nlohmann::json(to_string(*fd)) : nlohmann::json(nullptr);
    out << j.dump(2) << "\n";
    return exit_ok;
  }
  auto flag = [](bool integral) { return integral ? "integral" : "non-integral"; };
  out << "nhat       " << long_list(nh) << "\n";
  out << "w          " << rational_list(w.values()) << "  " << flag(w.integral()) << "\n";
  if (v) out << "v          " << rational_list(v->values()) << "  " << flag(v->integral()) << "\n";
  out << "F          " << to_string(f) << "  " << flag(is_integral(f)) << "\n";
  if (fd) out << "F^D        " << to_string(*fd) << "  " << flag(is_integral(*fd)) << "\n";
  out << "F display  " << to_string(display) << "\n";
  out << "h^D        " << to_string(hd.value) << (hd.in_semigroup ? "" : "  (w not a valuation vector)") << "\n";
  out << "deg AK     " << to_string(deg_AK(nh, g)) << "\n";
  out << "deg AA     " << to_string(deg_AA(nh, g)) << "\n";
  return exit_ok;
}

void report_stats(const EnumerationStats& stats, Strictness strictness, std::ostream& err) {
  if (strictness == Strictness::integral && stats.skipped_non_integral)
    err << "note: " << stats.skipped_non_integral << " strata with non-integral exponents skipped\n";
  if (stats.non_integral_emitted)
    err << "warning: " << stats.non_integral_emitted
        << " strata with non-integral exponents included (literal mode); fractional exponents are shown exactly\n";
}

nlohmann::json stats_json(const EnumerationStats& stats) {
  return {{"strata", stats.emitted},
          {"skipped_non_integral", stats.skipped_non_integral},
          {"non_integral_included", stats.non_integral_emitted}};
}

int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ResolutionGraph g = load_graph(cfg.input);
  report_warnings(g, err);
  const SeriesOptions opts{cfg.strictness, cfg.workers};

  nlohmann::json j = {{"series", cfg.series}, {"bound", cfg.bound}};
  j["strictness"] = cfg.strictness == Strictness::integral ? "integral" : "literal";
  j["specialization"] = cfg.specialization ? nlohmann::json(cfg.specialization->to_string()) : nlohmann::json(nullptr);

  std::optional<TruncatedSeries> series;
  if (cfg.series == "phatd-closed") {
    const ClosedFormExpr cf = divisorial_closed_form(g);
    if (!cf.integral_exponents()) err << "warning: closed form has non-integral exponents\n";
    j["closed_form"] = cf.to_json();
    j["closed_form_text"] = cf.to_text();
    if (cfg.format == Format::text) out << cf.to_text() << "\n";
    if (!cfg.bound.empty()) series = expand(cf, cfg.bound);
  } else {
    SeriesResult r;
    if (cfg.series == "pg") r = poincare_generalised(g, cfg.bound, opts);
    else if (cfg.series == "pdg") r = poincare_divisorial(g, cfg.bound, opts);
    else r = divisorial_semigroup_stratum_sum(g, cfg.bound, opts);
    report_stats(r.stats, cfg.strictness, err);
    j["stats"] = stats_json(r.stats);
    if (!r.cross_form_agrees) {
      err << "error: stratum form and factored form disagree\n";
      return exit_check_failed;
    }
    series = std::move(r.series);
  }

  if (series) {
    if (cfg.specialization) {
      const RationalSeries spec = specialize(*series, *cfg.specialization);
      if (cfg.format == Format::json) j["result"] = spec.to_json();
      else print_series(out, spec);
    } else {
      if (cfg.format == Format::json) j["result"] = series->to_json();
      else print_series(out, *series);
    }
  }
  if (cfg.format == Format::json) out << j.dump(2) << "\n";
  return exit_ok;
}

class CheckReport {
public:
  explicit CheckReport(std::ostream& out) : out_(out) {}

  void record(const std::string& name, bool ok, const std::string& detail = "") {
    ++total_;
    if (!ok) ++failed_;
    out_ << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) out_ << ": " << detail;
    out_ << "\n";
  }

  int finish() {
    out_ << total_ << " checks, " << failed_ << " failed\n";
    return failed_ ? exit_check_failed : exit_ok;
  }

private:
  std::ostream& out_;
  int total_ = 0, failed_ = 0;
};

template <class Coeff>
std::string first_difference(const Series<Coeff>& a, const Series<Coeff>& b) {
  for (const auto& [e, c] : a.terms())
    if (!(b.coefficient(e) == c)) return "first difference at " + e.to_text();
  for (const auto& [e, c] : b.terms())
    if (!(a.coefficient(e) == c)) return "first difference at " + e.to_text();
  return "";
}

bool constant_term_is_one(const TruncatedSeries& s) {
  return s.coefficient(ExponentVector(s.arity())) == RingElement::one();
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ResolutionGraph g = load_graph(cfg.input);
  report_warnings(g, err);
  const long b = cfg.check_bound.value_or(10);
  const SeriesOptions opts{Strictness::literal, cfg.workers};
  CheckReport report(out);

  const auto s = static_cast<std::size_t>(g.size());
  const RatMatrix product = g.m_matrix() * to_rational(-g.intersection());
  report.record("matrix: M*(-N) = I", product == RatMatrix::identity(s));
  report.record("matrix: N symmetric", g.intersection().is_symmetric());
  const Integer det = determinant(g.proximity());
  report.record("matrix: P unimodular", det == 1 || det == -1);
  bool positive = true;
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t c = 0; c < s; ++c) positive = positive && g.m_matrix()(a, c) > 0;
  report.record("matrix: M > 0", positive);

  const std::vector<long> div_bound(s, b);
  const auto stratum_sum = divisorial_semigroup_stratum_sum(g, div_bound, opts).series;
  const auto closed = expand(divisorial_closed_form(g), div_bound);
  report.record("phatd: closed form = stratum sum", closed == stratum_sum, first_difference(closed, stratum_sum));
  report.record("phatd: constant term 1", constant_term_is_one(stratum_sum));

  const auto pdg = poincare_divisorial(g, div_bound, opts).series;
  report.record("pdg: constant term 1", constant_term_is_one(pdg));

  if (g.totally_rational()) {
    const auto cor = closed_form_totally_rational(g, div_bound);
    report.record("phatd: totally rational display", cor == closed, first_difference(cor, closed));
  }

  if (g.branch_count() > 0) {
    const std::vector<long> branch_bound(g.branch_count(), b);
    const auto pg = poincare_generalised(g, branch_bound, opts);
    report.record("pg: stratum form = factored form", pg.cross_form_agrees);
    report.record("pg: constant term 1", constant_term_is_one(pg.series));
    if (g.totally_rational()) {
      const auto cor = poincare_generalised_totally_rational(g, branch_bound);
      report.record("pg: totally rational display", cor == pg.series, first_difference(cor, pg.series));
    }
    if (g.totally_rational() && g.branch_count() == 1) {
      const int attach = g.branch(0).attach;
      std::vector<long> generators;
      for (int i = 0; i < g.size(); ++i) generators.push_back(g.m_matrix()(i, attach).get_num().get_si());
      const auto gf = oracles::semigroup_gf(generators, b);
      RationalSeries expected(branch_bound);
      for (long v = 0; v <= b; ++v) expected.add(ExponentVector(std::vector<Rational>{Rational(v)}), Rational(gf[v]));
      Specialization at_one;
      at_one.lefschetz = Rational(1);
      at_one.default_symbol = Rational(1);
      const auto specialized = specialize(pg.series, at_one);
      report.record("pg: L=1 gives the value semigroup", specialized == expected,
                    first_difference(specialized, expected));
    }

    bool f_display = true, f_divisorial = true;
    for_each_stratum(g, branch_bound, SeriesMode::full, Strictness::literal,
                     [&](const Stratum& st, const ExponentVector&) {
                       f_display = f_display && codim_F(st, g) == codim_F_display(st, g);
                       if (st.divisorial()) f_divisorial = f_divisorial && codim_F(st, g) == codim_FD(st, g);
                     });
    report.record("codim: F = closed display", f_display);
    report.record("codim: F = F^D without branch data", f_divisorial);
  }
  return report.finish();
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  if (cfg.oracle == "semigroup") {
    const auto gf = oracles::semigroup_gf(cfg.generators, cfg.oracle_bound);
    if (cfg.format == Format::json) {
      out << nlohmann::json({{"coefficients", gf}}).dump() << "\n";
      return exit_ok;
    }
    std::string text;
    for (std::size_t v = 0; v < gf.size(); ++v) {
      if (!gf[v]) continue;
      if (!text.empty()) text += " + ";
      text += v == 0 ? "1" : v == 1 ? "t" : "t^" + std::to_string(v);
    }
    out << text << "\n";
    return exit_ok;
  }
  if (cfg.oracle == "monomial-codim") {
    oracles::MonomialValuationSystem sys;
    for (const auto& w : cfg.weights) {
      const auto colon = w.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("weight '" + w + "' must read a:b");
      sys.weights.emplace_back(std::stol(w.substr(0, colon)), std::stol(w.substr(colon + 1)));
    }
    out << to_string(oracles::monomial_codim(sys, cfg.values)) << "\n";
    return exit_ok;
  }
  out << to_string(oracles::count_divisors_open_line(cfg.q, cfg.m, cfg.n)) << "\n";
  return exit_ok;
}

}  // namespace

unsigned default_workers() {
  if (const char* env = std::getenv("MOTIVIC_WORKERS")) {
    try {
      const long w = std::stol(env);
      if (w >= 1) return static_cast<unsigned>(w);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  cfg.workers = default_workers();
  std::string format = "text", bound, specialization;
  std::string generators, values;
  long check_bound = 0;

  CLI::App app{"Motivic Poincare series of plane curve singularities", "motivic-poincare"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_workers = [&cfg](CLI::App* sub) {
    sub->add_option("--workers", cfg.workers, "Worker threads (default: MOTIVIC_WORKERS or 1)")
        ->check(CLI::Range(1U, 1024U));
  };

  auto* matrices = app.add_subcommand("matrices", "Print P, Delta, N, M and neighbour data");
  matrices->add_option("--input", cfg.input, "Graph description (JSON)")->required();
  add_format(matrices);

  auto* codim = app.add_subcommand("codim", "Values and codimensions of one stratum");
  codim->add_option("--input", cfg.input, "Graph description (JSON)")->required();
  codim->add_option("--stratum", cfg.stratum, "Stratum file or inline JSON")->required();
  add_format(codim);

  auto* compute = app.add_subcommand("compute", "Truncated Poincare series");
  compute->add_option("--series", cfg.series, "pg | pdg | phatd | phatd-closed")
      ->required()
      ->check(CLI::IsMember({"pg", "pdg", "phatd", "phatd-closed"}));
  compute->add_option("--bound", bound, "Per-variable exponent bound, e.g. 4,6,12");
  compute->add_option("--input", cfg.input, "Graph description (JSON)")->required();
  compute->add_option("--specialize", specialization, "e.g. L=1,all=1");
  auto* strict = compute->add_flag("--strict-integral", "Drop strata with non-integral exponents");
  add_format(compute);
  add_workers(compute);

  auto* check = app.add_subcommand("check", "Run every cross-validation on a graph");
  check->add_option("--input", cfg.input, "Graph description (JSON)")->required();
  auto* check_bound_opt = check->add_option("--bound", check_bound, "Per-variable bound (default 10)")
                              ->check(CLI::Range(0L, 64L));
  add_workers(check);

  auto* oracle = app.add_subcommand("oracle", "Run a brute-force oracle");
  oracle->require_subcommand(1);
  auto* semigroup = oracle->add_subcommand("semigroup", "Characteristic series of a numerical semigroup");
  semigroup->add_option("--generators", generators, "e.g. 2,3")->required();
  semigroup->add_option("--bound", cfg.oracle_bound, "Largest exponent")->required()->check(CLI::NonNegativeNumber);
  add_format(semigroup);
  auto* monomial = oracle->add_subcommand("monomial-codim", "Codimension of a monomial valuation ideal");
  monomial->add_option("--weights", cfg.weights, "a:b per valuation")->required()->delimiter(',');
  monomial->add_option("--w", values, "Value vector, e.g. 2,3,6")->required();
  auto* divisors = oracle->add_subcommand("divisors", "Effective divisors on the line minus m points over F_q");
  divisors->add_option("--q", cfg.q, "Field size (2, 3, 4 or 5)")->required();
  divisors->add_option("--m", cfg.m, "Removed rational points")->required();
  divisors->add_option("--n", cfg.n, "Degree")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    cfg.command = Command::help;
    const CLI::App* shown = &app;
    for (const auto* sub : app.get_subcommands()) {
      shown = sub;
      for (const auto* nested : sub->get_subcommands()) shown = nested;
    }
    cfg.help_text = shown->help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.format = format == "json" ? Format::json : Format::text;

  if (matrices->parsed()) {
    cfg.command = Command::matrices;
  } else if (codim->parsed()) {
    cfg.command = Command::codim;
  } else if (check->parsed()) {
    cfg.command = Command::check;
    if (check_bound_opt->count()) cfg.check_bound = check_bound;
  } else if (oracle->parsed()) {
    cfg.command = Command::oracle;
    if (semigroup->parsed()) {
      cfg.oracle = "semigroup";
      cfg.generators = parse_long_list(generators, "generator list");
      for (long g : cfg.generators)
        if (g <= 0) throw UsageError("semigroup generators must be positive");
    } else if (monomial->parsed()) {
      cfg.oracle = "monomial-codim";
      cfg.values = parse_long_list(values, "value vector");
    } else {
      cfg.oracle = "divisors";
    }
  } else {
    cfg.command = Command::compute;
    cfg.strictness = strict->count() ? Strictness::integral : Strictness::literal;
    if (!bound.empty()) cfg.bound = parse_long_list(bound, "bound");
    for (long v : cfg.bound)
      if (v < 0) throw UsageError("bounds must be nonnegative");
    if (cfg.bound.empty() && cfg.series != "phatd-closed") throw UsageError("--bound is required for --series " + cfg.series);
    if (!specialization.empty()) {
      try {
        cfg.specialization = Specialization::parse(specialization);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (cfg.bound.empty()) throw UsageError("--specialize needs --bound");
    }
    // Arity is checked here when the graph loads; load failures surface in run().
    std::optional<ResolutionGraph> g;
    try {
      g = load_graph(cfg.input);
    } catch (const std::exception&) {
    }
    if (g && !cfg.bound.empty()) {
      const std::size_t arity = series_arity(cfg.series, *g);
      if (cfg.bound.size() != arity)
        throw UsageError("--bound has " + std::to_string(cfg.bound.size()) + " entries but series " + cfg.series +
                         " has " + std::to_string(arity) + " variables");
    }
  }
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::help: out << cfg.help_text; return exit_ok;
      case Command::matrices: return cmd_matrices(cfg, out, err);
      case Command::codim: return cmd_codim(cfg, out, err);
      case Command::compute: return cmd_compute(cfg, out, err);
      case Command::check: return cmd_check(cfg, out, err);
      case Command::oracle: return cmd_oracle(cfg, out);
    }
  } catch (const ValidationError& e) {
    for (const auto& issue : e.issues()) err << "error: [" << issue.code << "] " << issue.message << "\n";
    return exit_data;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_data;
  }
  return exit_data;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun with --help for usage\n";
    return exit_usage;
  }
  return run(cfg, out, err);
}

}  // namespace motivic::cli
