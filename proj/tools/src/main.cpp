#include "mzeta/eta.hpp"
#include "mzeta/identities.hpp"
#include "mzeta/mzv.hpp"
#include "mzeta/parallel.hpp"
#include "mzeta_cli/query.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace mzeta;
using mzeta::cli::Query;
using mzeta::cli::QueryKind;

struct Globals {
  unsigned prec = 50;
  long cutoff = 10000;
  bool no_extrapolate = false;
  bool json = false;
  bool csv = false;
  std::string cache_path;
  int jobs = 1;
  bool debug = false;
  std::int64_t budget = EvalConfig{}.work_budget;

  EvalConfig config() const {
    EvalConfig c;
    c.precision_digits = prec;
    c.cutoff = cutoff;
    c.extrapolate = !no_extrapolate;
    c.work_budget = budget;
    c.validate();
    return c;
  }
};

// Usage problems and evaluator errors both end here; verdict failures do not.
struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::unique_ptr<MzvCache> open_cache(const Globals& g) {
  auto where = MzvCache::location(g.cache_path.empty() ? std::nullopt : std::optional<std::string>(g.cache_path));
  return where ? std::make_unique<MzvCache>(where) : std::make_unique<MzvCache>();
}

Index as_index(const std::vector<int>& v) { return Index(v); }

std::string list_str(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::vector<int> parse_intlist(const std::string& text, const char* what) {
  try {
    return cli::parse_query("dual(" + text + ")").first;
  } catch (const cli::ParseError& e) {
    throw CliError(std::string("bad ") + what + " '" + text + "': expected comma-separated positive integers");
  }
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CliError("bad real argument '" + item + "'");
    }
  }
  if (out.empty()) throw CliError("empty real argument list");
  return out;
}

IndexCombination formal_of(const Query& q) {
  switch (q.kind) {
    case QueryKind::Star: return star(PaddedIndex(q.first));
    case QueryKind::Hp: return harmonic_product(PaddedIndex(q.first), PaddedIndex(q.second));
    case QueryKind::Circ: return circledast(PaddedIndex(q.first), PaddedIndex(q.second));
    case QueryKind::Dual: return IndexCombination(PaddedIndex(hoffman_dual(as_index(q.first)).vec()));
    case QueryKind::SumformulaRhs: return sumformula_rhs_formal(q.first[0], q.first[1], q.first[2]);
    case QueryKind::AppendixRhs: return appendix_rhs_formal(as_index(q.first), q.second[0]);
    default: throw CliError("'" + cli::kind_name(q.kind) + "' is a value, not a formal combination");
  }
}

std::optional<SumExpr> series_of(const Query& q) {
  switch (q.kind) {
    case QueryKind::Zeta: return zeta_expr(as_index(q.first));
    case QueryKind::Eta: return eta_pair_expr(as_index(q.first), as_index(q.second));
    case QueryKind::Xi: return chain_sum_expr(as_index(q.first).weight(), j_set(as_index(q.first)).members, q.second[0]);
    default: return std::nullopt;
  }
}

struct Evaluated {
  Approx value;
  std::string method;
};

Evaluated evaluate(const Query& q, const EvalConfig& cfg, MzvCache* cache) {
  switch (q.kind) {
    case QueryKind::Zeta: return {zeta_value(as_index(q.first), cfg, cache), "fast"};
    case QueryKind::Eta: return {eta_pair(as_index(q.first), as_index(q.second), cfg), "series"};
    case QueryKind::EtaKt: return {eta_kt(as_index(q.first), q.second[0], cfg), "refinement-sum"};
    case QueryKind::Xi: return {xi_value(as_index(q.first), q.second[0], cfg), "series"};
    default: return {zeta_combination(formal_of(q), cfg, cache), "zeta-combination"};
  }
}

int cmd_eval(const Globals& g, const std::string& text) {
  Query q = cli::parse_query(text);
  EvalConfig cfg = g.config();
  auto cache = open_cache(g);
  if (g.debug) {
    if (auto e = series_of(q)) std::cerr << e->str();
  }
  PrecisionScope scope(working_digits(cfg.precision_digits));
  Evaluated r = evaluate(q, cfg, cache.get());
  const std::string value = format_value(r.value.value, r.value.error, cfg.precision_digits);
  const std::string error = format_error(r.value.error);
  if (g.json) {
    nlohmann::json j{{"query", text},
                     {"value", value},
                     {"error", error},
                     {"method", r.method},
                     {"cutoff", r.value.cutoff},
                     {"extrapolated", r.value.extrapolated}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << value << " ± " << error << '\n';
  }
  if (g.debug) std::cerr << "cache hits " << cache->hits() << ", misses " << cache->misses() << '\n';
  return 0;
}

int cmd_expand(const Globals& g, const std::string& text) {
  Query q = cli::parse_query(text);
  IndexCombination c = formal_of(q);
  if (g.json) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [k, coeff] : c.terms()) terms.push_back({{"index", k.vec()}, {"coeff", rational_str(coeff)}});
    std::cout << nlohmann::json{{"query", text}, {"terms", terms}}.dump() << '\n';
    return 0;
  }
  if (q.kind == QueryKind::Dual) {
    std::cout << c.terms().begin()->first.str() << '\n';
  } else {
    std::cout << c.str() << '\n';
  }
  return 0;
}

int emit_reports(const Globals& g, const std::vector<Report>& reps, bool as_array) {
  std::size_t passed = 0;
  for (auto& r : reps) passed += r.pass;
  if (g.json) {
    std::cout << (as_array ? reports_to_json(reps) : report_to_json(reps.front())) << '\n';
  } else {
    for (auto& r : reps) std::cout << report_to_text(r, std::min(g.prec, 20u));
  }
  const bool ok = passed == reps.size();
  // the summary goes to stderr under --json so stdout stays one JSON document
  std::ostream& out = g.json ? std::cerr : std::cout;
  out << (ok ? "PASSED " : "FAILED ") << (ok ? passed : reps.size() - passed) << '/' << reps.size() << '\n';
  return ok ? 0 : 1;
}

struct VerifyArgs {
  int k = 1, l = 1, r = 1;
  std::string index = "1";
  std::string a = "2", b = "3";
  std::string pair;
  std::string reals;
  std::string suite;
  double floor = 1e-6;
  std::string perturb = "0";
};

VerifyOptions verify_options(const VerifyArgs& v, MzvCache* cache) {
  VerifyOptions o;
  o.floor = v.floor;
  o.cache = cache;
  try {
    o.rhs_shift = parse_rational(v.perturb);
  } catch (const std::exception&) {
    throw CliError("bad --perturb value '" + v.perturb + "'");
  }
  return o;
}

int table_cmd(const Globals& g, int weight, bool zeta_rows) {
  if (weight < 1) throw CliError("--weight must be positive");
  EvalConfig cfg = g.config();
  auto cache = open_cache(g);
  PrecisionScope scope(working_digits(cfg.precision_digits));
  struct Row {
    std::string key;
    Query q;
  };
  std::vector<Row> rows;
  if (zeta_rows) {
    for (int w = 2; w <= weight; ++w)
      for (const auto& k : indices_of_weight(w))
        if (k.admissible()) rows.push_back({list_str(k.vec()), {QueryKind::Zeta, k.vec(), {}, false}});
  } else {
    for (int w = 2; w <= weight; ++w)
      for (int wk = 1; wk < w; ++wk)
        for (int d = 1; d <= std::min(wk, w - wk); ++d)
          for (const auto& k : indices_of(wk, d))
            for (const auto& l : indices_of(w - wk, d))
              rows.push_back({list_str(k.vec()) + ";" + list_str(l.vec()), {QueryKind::Eta, k.vec(), l.vec(), true}});
  }
  std::vector<Evaluated> results(rows.size());
  parallel_for(rows.size(), g.jobs, [&](std::size_t i) { results[i] = evaluate(rows[i].q, cfg, cache.get()); });
  if (g.json) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < rows.size(); ++i)
      arr.push_back({{"k;l", rows[i].key},
                     {"value", format_value(results[i].value.value, results[i].value.error, cfg.precision_digits)},
                     {"error", format_error(results[i].value.error)},
                     {"method", results[i].method}});
    std::cout << arr.dump(2) << '\n';
    return 0;
  }
  std::cout << "k;l,value,error,method\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string& key = rows[i].key;
    const bool quote = key.find(',') != std::string::npos;
    std::cout << (quote ? "\"" + key + "\"" : key) << ','
              << format_value(results[i].value.value, results[i].value.error, cfg.precision_digits) << ','
              << format_error(results[i].value.error) << ',' << results[i].method << '\n';
  }
  return 0;
}

int cache_cmd(const Globals& g, const std::string& action) {
  auto where = MzvCache::location(g.cache_path.empty() ? std::nullopt : std::optional<std::string>(g.cache_path));
  if (!where) throw CliError("no cache file: pass --cache PATH or set MZETA_CACHE");
  MzvCache cache(where);
  if (action == "show") {
    for (auto& r : cache.records()) std::cout << record_to_json_line(r) << '\n';
  } else if (action == "clear") {
    const std::size_t n = cache.records().size();
    cache.clear();
    std::cout << "cleared " << n << " entries from " << where->string() << '\n';
  } else {
    const auto recs = cache.records();
    std::error_code ec;
    const auto bytes = std::filesystem::exists(*where, ec) ? std::filesystem::file_size(*where, ec) : 0;
    if (g.json) {
      std::cout << nlohmann::json{{"path", where->string()}, {"entries", recs.size()}, {"bytes", bytes}}.dump() << '\n';
    } else {
      std::cout << "path: " << where->string() << "\nentries: " << recs.size() << "\nbytes: " << bytes << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple zeta values and the two-tuple eta function: evaluation and identity checks"};
  app.require_subcommand(1, 1);
  Globals g;
  app.add_option("--prec", g.prec, "significant digits (working precision adds 10 guard digits)")
      ->check(CLI::Range(10u, 1000u));
  app.add_option("--cutoff", g.cutoff, "truncation bound N for series")->check(CLI::Range(16L, 100000000L));
  app.add_flag("--no-extrapolate", g.no_extrapolate, "plain partial sums with a last-shell error estimate");
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_flag("--csv", g.csv, "CSV output (table)");
  app.add_option("--cache", g.cache_path, "cache file (overrides MZETA_CACHE)");
  app.add_option("--jobs", g.jobs, "worker threads for suites and tables")->check(CLI::Range(1, 256));
  app.add_flag("--debug", g.debug, "print series structure and cache counters to stderr");
  app.add_option("--budget", g.budget, "inner-loop step budget per series (0: always use the full cutoff)")
      ->check(CLI::NonNegativeNumber);

  std::string expr;
  auto* eval = app.add_subcommand("eval", "evaluate zeta(..), eta(..;..), etakt(..;l), xi(..;l) or a formal expression");
  eval->add_option("expression", expr)->required();
  eval->fallthrough();

  auto* expand = app.add_subcommand("expand", "print star/hp/circ/dual/sumformula-rhs/appendix-rhs as a combination");
  expand->add_option("expression", expr)->required();
  expand->fallthrough();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check an identity; exit status 0 iff every check passes");
  verify->require_subcommand(1, 1);
  verify->fallthrough();
  verify->add_option("--floor", va.floor, "minimum tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--perturb", va.perturb, "add this rational to the leading right-hand coefficient (negative control)");
  auto* v_sum = verify->add_subcommand("sum-formula", "eta sum over I(k,r) x I(l,r) against both right-hand routes");
  v_sum->add_option("--k", va.k)->required()->check(CLI::PositiveNumber);
  v_sum->add_option("--l", va.l)->required()->check(CLI::PositiveNumber);
  v_sum->add_option("--r", va.r)->required()->check(CLI::PositiveNumber);
  auto* v_sym = verify->add_subcommand("symmetry", "eta(k;l) against eta(l;k)");
  auto* sym_pair = v_sym->add_option("pair", va.pair, "eta(k;l) expression");
  v_sym->add_option("--real", va.reals, "real arguments 'a1,a2;b1,b2' checked by quadrature")->excludes(sym_pair);
  auto* v_45 = verify->add_subcommand("thm45", "eta(1,k;1,l) decomposition and the S1 factorization");
  v_45->add_option("--k", va.k)->required()->check(CLI::PositiveNumber);
  v_45->add_option("--l", va.l)->required()->check(CLI::PositiveNumber);
  auto* v_app = verify->add_subcommand("appendix", "eta_kt(k;l) routes and the chain-sum expansion");
  v_app->add_option("--k", va.index, "index, e.g. 1,2")->required();
  v_app->add_option("--l", va.l)->required()->check(CLI::PositiveNumber);
  auto* v_stuffle = verify->add_subcommand("stuffle", "zeta(a) zeta(b) against zeta(a * b) (external oracle)");
  v_stuffle->add_option("--a", va.a)->required();
  v_stuffle->add_option("--b", va.b)->required();
  auto* v_suite = verify->add_subcommand("suite", "run a named suite: quick, full, appendix, thm45");
  v_suite->add_option("name", va.suite)->required();
  for (auto* s : {v_sum, v_sym, v_45, v_app, v_stuffle, v_suite}) s->fallthrough();

  int weight = 4;
  bool zeta_rows = false;
  auto* table = app.add_subcommand("table", "CSV of eta(k;l) values (or zeta values) up to a total weight");
  table->add_option("--weight", weight, "largest total weight")->check(CLI::Range(2, 12));
  table->add_flag("--zeta", zeta_rows, "tabulate zeta(k) over admissible k instead");
  table->fallthrough();

  std::string cache_action;
  auto* cache = app.add_subcommand("cache", "inspect or clear the zeta cache");
  cache->add_option("action", cache_action)->required()->check(CLI::IsMember({"show", "clear", "stats"}));
  cache->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*eval) return cmd_eval(g, expr);
    if (*expand) return cmd_expand(g, expr);
    if (*table) return table_cmd(g, weight, zeta_rows);
    if (*cache) return cache_cmd(g, cache_action);

    EvalConfig cfg = g.config();
    auto zc = open_cache(g);
    VerifyOptions opts = verify_options(va, zc.get());
    PrecisionScope scope(working_digits(cfg.precision_digits));
    if (*v_sum) return emit_reports(g, {verify_sum_formula(va.k, va.l, va.r, cfg, opts)}, false);
    if (*v_sym) {
      if (!va.reals.empty()) {
        const auto semi = va.reals.find(';');
        if (semi == std::string::npos) throw CliError("--real expects 'a1,..;b1,..'");
        RealArgPair args{parse_reals(va.reals.substr(0, semi)), parse_reals(va.reals.substr(semi + 1))};
        return emit_reports(g, {verify_symmetry(args, cfg, opts)}, false);
      }
      if (va.pair.empty()) throw CliError("symmetry needs an eta(k;l) expression or --real");
      Query q = cli::parse_query(va.pair);
      if (q.kind != QueryKind::Eta) throw CliError("symmetry expects eta(k;l)");
      return emit_reports(g, {verify_symmetry(as_index(q.first), as_index(q.second), cfg, opts)}, false);
    }
    if (*v_45) return emit_reports(g, verify_thm45(va.k, va.l, cfg, opts), true);
    if (*v_app) return emit_reports(g, verify_appendix(Index(parse_intlist(va.index, "index")), va.l, cfg, opts), true);
    if (*v_stuffle)
      return emit_reports(
          g, {verify_stuffle(Index(parse_intlist(va.a, "index")), Index(parse_intlist(va.b, "index")), cfg, opts)}, false);
    if (*v_suite) {
      if (!is_suite_name(va.suite)) {
        std::cerr << "unknown suite '" << va.suite << "' (expected quick, full, appendix or thm45)\n";
        return 2;
      }
      return emit_reports(g, run_suite(va.suite, cfg, opts, g.jobs), true);
    }
  } catch (const cli::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
