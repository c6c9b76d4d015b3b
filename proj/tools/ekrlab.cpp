// ekrlab: command-line front end for the checkers, suites and searches.
//
// Exit codes: 0 success / HOLDS, 1 FAILS or a failing suite, 2 INDETERMINATE
// or an incomplete search, 3 usage or precondition errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ekrlab/family.hpp"
#include "ekrlab/measure.hpp"
#include "ekrlab/rational.hpp"
#include "ekrlab/search.hpp"
#include "ekrlab/shadows.hpp"
#include "ekrlab/suite.hpp"

using namespace ekrlab;
using nlohmann::json;

namespace {

constexpr int kExitFails = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitUsage = 3;

struct FamilyInputs {
  std::vector<std::string> files;
  std::vector<std::string> constructions;
  int n = 0;
  std::optional<int> slice_level;
  std::optional<int> partner_level;

  void attach(CLI::App* app) {
    app->add_option("-f,--family", files, "Family file (repeatable)");
    app->add_option("-c,--construction", constructions, "Named construction, e.g. dict:1, or:1,2, ff:2,1 (repeatable)");
    app->add_option("-n,--n", n, "Ground-set size for constructions");
    app->add_option("--slice", slice_level, "Keep only level k of each construction");
    app->add_option("--partner", partner_level, "Append the level-l cross partner of the first family");
  }

  std::vector<SetFamily> load() const {
    std::vector<SetFamily> out;
    for (const auto& f : files) out.push_back(load_family_file(f));
    if (!constructions.empty()) {
      if (n < 1) throw std::invalid_argument("--n is required with --construction");
      const GroundSet g(n);
      for (const auto& c : constructions) {
        SetFamily f = construct(g, parse_construction(c));
        out.push_back(slice_level ? slice(f, *slice_level) : std::move(f));
      }
    }
    if (partner_level) {
      if (out.empty()) throw std::invalid_argument("--partner needs a family");
      out.push_back(cross_partner(out.front(), *partner_level));
    }
    return out;
  }
};

struct LimitOptions {
  std::uint64_t nodes = 0;
  double seconds = 0;
  int workers = default_worker_count();
  bool all_witnesses = false;

  void attach(CLI::App* app, bool witnesses_flag) {
    app->add_option("--budget-nodes", nodes, "Node budget (0 = unlimited)");
    app->add_option("--budget-seconds", seconds, "Time budget in seconds (0 = unlimited)");
    app->add_option("--workers", workers, "Worker threads (default: EKRLAB_WORKERS or hardware threads)")->check(CLI::PositiveNumber);
    if (witnesses_flag) app->add_flag("--all-witnesses", all_witnesses, "Collect every optimal family up to relabelling");
  }

  SearchLimits limits() const { return SearchLimits{nodes, seconds, workers, all_witnesses}; }
};

json parse_param_value(const std::string& text) {
  if (!text.empty() && text.find_first_not_of("-0123456789") == std::string::npos && text != "-") {
    return std::stol(text);
  }
  return text;
}

json parse_params(const std::vector<std::string>& items) {
  json params = json::object();
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("parameters look like key=value, got '" + item + "'");
    params[item.substr(0, eq)] = parse_param_value(item.substr(eq + 1));
  }
  return params;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int verdict_exit(const Verdict& v) {
  if (v.fails()) return kExitFails;
  if (v.indeterminate()) return kExitIndeterminate;
  return 0;
}

json family_json(const SetFamily& f) {
  json sets = json::array();
  f.for_each_member([&](Mask m) { sets.push_back(format_set(m)); });
  return {{"n", f.n()}, {"size", f.size()}, {"members", sets}};
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = std::stoi(text);
    return {v, v};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ekrlab: exact checks and extremal searches for intersecting set families"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // check
  auto* check = app.add_subcommand("check", "Run one checker");
  std::string checker_id;
  std::vector<std::string> check_params;
  int check_precision = 256;
  FamilyInputs check_fams;
  bool list_checkers = false;
  check->add_option("checker", checker_id, "Checker id (see --list)");
  check->add_option("-p,--param", check_params, "key=value parameter (repeatable)");
  check->add_option("--precision", check_precision, "Interval precision in bits");
  check->add_flag("--list", list_checkers, "List registered checkers");
  check_fams.attach(check);
  LimitOptions check_limits;
  check_limits.attach(check, false);

  // suite
  auto* suite = app.add_subcommand("suite", "Run a suite spec (JSON) or the built-in paper-tools suite");
  std::string suite_path = "paper-tools";
  std::optional<std::uint64_t> suite_seed;
  std::optional<int> suite_precision;
  std::string suite_format = "json";
  std::string suite_output;
  bool suite_timing = false;
  bool suite_dump_spec = false;
  LimitOptions suite_limits;
  suite->add_option("spec", suite_path, "Suite file, or 'paper-tools'");
  suite->add_option("--seed", suite_seed, "Override the suite seed");
  suite->add_option("--precision", suite_precision, "Override the interval precision");
  suite->add_option("--format", suite_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  suite->add_option("-o,--output", suite_output, "Write the report to a file");
  suite->add_flag("--timing", suite_timing, "Record per-check wall time");
  suite->add_flag("--dump-spec", suite_dump_spec, "Print the resolved suite spec and exit");
  suite_limits.attach(suite, false);

  // search
  auto* search = app.add_subcommand("search", "Exhaustive extremal search");
  std::string problem_name;
  int sn = 0, sk = 0, sr = 1;
  std::string witness_dir;
  LimitOptions search_limits;
  search->add_option("problem", problem_name, "intersecting | union | matching")
      ->required()
      ->check(CLI::IsMember({"intersecting", "union", "matching"}));
  search->add_option("-n,--n", sn, "Ground-set size")->required();
  search->add_option("-k,--k", sk, "Uniformity")->required();
  search->add_option("-r,--r,-s,--s", sr, "Number of families (union) or matching bound (matching)");
  search->add_option("--witness-dir", witness_dir, "Write each witness as a family file");
  search_limits.attach(search, true);

  // theorem
  auto* theorem = app.add_subcommand("theorem", "Check a theorem by exhaustive search");
  std::string theorem_name;
  int tn = 0, tk = 0, tr = 0;
  LimitOptions theorem_limits;
  theorem->add_option("id", theorem_name, "ekr | ff-union | main-union | matching")
      ->required()
      ->check(CLI::IsMember({"ekr", "ff-union", "main-union", "matching"}));
  theorem->add_option("-n,--n", tn, "Ground-set size")->required();
  theorem->add_option("-k,--k", tk, "Uniformity")->required();
  theorem->add_option("-r,--r,-s,--s", tr, "r for unions, s for matchings");
  theorem_limits.attach(theorem, false);

  // scan
  auto* scan = app.add_subcommand("scan", "Parameter scans");
  auto* scan_ff = scan->add_subcommand("ff", "Frankl-Furedi construction against the OR bound");
  scan->require_subcommand(1);
  int fk = 3, fr = 2;
  std::string n_range = "7..10", t_range = "0..2";
  bool no_search = false;
  std::string scan_format = "json";
  LimitOptions scan_limits;
  scan_ff->add_option("-k,--k", fk, "Uniformity");
  scan_ff->add_option("-r,--r", fr, "Number of intersecting families");
  scan_ff->add_option("--n-range", n_range, "lo..hi");
  scan_ff->add_option("--t-range", t_range, "lo..hi");
  scan_ff->add_flag("--no-search", no_search, "Tabulate sizes only");
  scan_ff->add_option("--format", scan_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  scan_limits.attach(scan_ff, false);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a single quantity");
  std::string quantity;
  std::string ep, elo = "0", ehi = "1/2";
  int ei = 1, ek = 1, ekk = 0;
  std::uint64_t em = 0;
  FamilyInputs eval_fams;
  eval->add_option("quantity", quantity,
                   "mu | influence | total-influence | derivative | integral | profile | matching-number | "
                   "intersecting | canonical | kk | find-t | binomial-tail")
      ->required();
  eval->add_option("--p", ep, "Bias p as a/b");
  eval->add_option("--i", ei, "Element for influence");
  eval->add_option("--lo", elo, "Lower integration limit");
  eval->add_option("--hi", ehi, "Upper integration limit");
  eval->add_option("--k", ek, "Level (kk, find-t, binomial-tail)");
  eval->add_option("--m", em, "Count (kk) or size (find-t)");
  eval->add_option("--tail-n", ekk, "Trials for binomial-tail");
  eval_fams.attach(eval);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      if (list_checkers) {
        json list = json::array();
        for (const auto& c : checker_registry()) list.push_back({{"id", c.id}, {"params", c.params}, {"summary", c.summary}});
        std::cout << list.dump(2) << '\n';
        return 0;
      }
      if (checker_id.empty()) throw std::invalid_argument("checker id required (see check --list)");
      const auto families = check_fams.load();
      const json params = parse_params(check_params);
      const Verdict v = run_checker(checker_id, families, params, check_precision, check_limits.limits());
      json rec = {{"checker", checker_id}, {"params", params}, {"verdict", to_string(v.kind)}, {"equality", v.equality}};
      if (!v.witness.empty()) rec["witness"] = v.witness;
      if (v.precision_bits) rec["precision_bits"] = *v.precision_bits;
      rec["details"] = v.details;
      std::cout << rec.dump(2) << '\n';
      return verdict_exit(v);
    }

    if (suite->parsed()) {
      SuiteSpec spec = suite_path == "paper-tools" ? default_suite() : load_suite_file(suite_path);
      if (suite_seed) spec.seed = *suite_seed;
      if (suite_precision) spec.precision_bits = *suite_precision;
      if (suite->count("--workers")) spec.workers = suite_limits.workers;
      if (suite->count("--budget-nodes")) spec.limits.node_budget = suite_limits.nodes;
      if (suite->count("--budget-seconds")) spec.limits.time_budget_s = suite_limits.seconds;
      if (suite_timing) spec.record_timing = true;
      if (suite_dump_spec) {
        std::cout << spec.to_json().dump(2) << '\n';
        return 0;
      }
      const Report rep = run_suite(spec);
      emit(suite_format == "csv" ? report_csv(rep.json) : rep.json.dump(2) + "\n", suite_output);
      return rep.ok ? 0 : kExitFails;
    }

    if (search->parsed()) {
      SearchProblem p;
      p.kind = problem_name == "intersecting" ? ProblemKind::max_intersecting
               : problem_name == "union"      ? ProblemKind::max_union_intersecting
                                              : ProblemKind::max_bounded_matching;
      p.n = sn;
      p.k = sk;
      p.bound = p.kind == ProblemKind::max_intersecting ? 1 : sr;
      p.limits = search_limits.limits();
      const SearchOutcome out = solve(p);
      json j = {{"problem", p.to_json()}, {"outcome", out.to_json()}};
      if (!witness_dir.empty()) {
        std::filesystem::create_directories(witness_dir);
        json files = json::array();
        for (std::size_t i = 0; i < out.witnesses.size(); ++i) {
          const auto path = (std::filesystem::path(witness_dir) / ("witness_" + std::to_string(i) + ".fam")).string();
          save_family_file(path, out.witnesses[i]);
          files.push_back(path);
        }
        j["witness_files"] = files;
      }
      std::cout << j.dump(2) << '\n';
      return out.complete ? 0 : kExitIndeterminate;
    }

    if (theorem->parsed()) {
      const auto id = parse_theorem(theorem_name);
      const TheoremReport rep = verify_theorem(*id, tn, tk, tr, theorem_limits.limits());
      std::cout << rep.json.dump(2) << '\n';
      return verdict_exit(rep.verdict);
    }

    if (scan_ff->parsed()) {
      const auto [nlo, nhi] = parse_range(n_range);
      const auto [tlo, thi] = parse_range(t_range);
      const auto rows = ff_crossover_scan(fk, fr, nlo, nhi, tlo, thi, scan_limits.limits(), !no_search);
      if (scan_format == "csv") {
        std::cout << "n,t,ff_size,or_bound,search_optimum,complete,beats_or_bound\n";
        for (const auto& r : rows) {
          std::cout << r.n << ',' << r.t << ',' << r.ff_size << ',' << r.or_bound << ','
                    << (r.search_optimum ? std::to_string(*r.search_optimum) : "") << ',' << (r.complete ? "true" : "false")
                    << ',' << (r.beats_or_bound ? "true" : "false") << '\n';
        }
      } else {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        std::cout << json{{"k", fk}, {"r", fr}, {"rows", arr}}.dump(2) << '\n';
      }
      return 0;
    }

    if (eval->parsed()) {
      json j = {{"quantity", quantity}};
      auto p = [&] {
        if (ep.empty()) throw std::invalid_argument("--p is required");
        return parse_rational(ep);
      };
      auto one_family = [&] {
        const auto fs = eval_fams.load();
        if (fs.size() != 1) throw std::invalid_argument(quantity + " needs exactly one family");
        return fs.front();
      };
      if (quantity == "mu") {
        j["value"] = to_string(mu(one_family(), p()));
      } else if (quantity == "influence") {
        j["value"] = to_string(influence(one_family(), ei, p()));
      } else if (quantity == "total-influence") {
        j["value"] = to_string(total_influence(one_family(), p()));
      } else if (quantity == "derivative") {
        j["value"] = to_string(derivative_at(one_family(), p()));
      } else if (quantity == "integral") {
        j["value"] = to_string(integral_of_influence(one_family(), parse_rational(elo), parse_rational(ehi)));
      } else if (quantity == "profile") {
        j["value"] = one_family().level_counts();
      } else if (quantity == "matching-number") {
        j["value"] = matching_number(one_family());
      } else if (quantity == "intersecting") {
        j["value"] = is_intersecting(one_family());
      } else if (quantity == "canonical") {
        j["value"] = family_json(canonicalize(one_family()).family);
      } else if (quantity == "kk") {
        j["value"] = kk_min_upper_shadow(eval_fams.n, ek, em);
      } else if (quantity == "find-t") {
        j["value"] = find_t(to_big(em), eval_fams.n, ek);
      } else if (quantity == "binomial-tail") {
        j["value"] = to_string(binomial_tail(ekk, p(), ek));
      } else {
        throw std::invalid_argument("unknown quantity '" + quantity + "'");
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "ekrlab: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
