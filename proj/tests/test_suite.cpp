#include <doctest.h>

#include <set>

#include "ekrlab/suite.hpp"

using namespace ekrlab;
using nlohmann::json;

namespace {

json strip_timestamp(json j) {
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_CASE("seeded rng is reproducible") {
  SeededRng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
  SeededRng r(1);
  for (int i = 0; i < 1000; ++i) CHECK(r.below(7) < 7);
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}

TEST_CASE("random corpora respect their kind") {
  for (auto kind : {RandomKind::increasing, RandomKind::intersecting, RandomKind::uniform,
                    RandomKind::intersecting_uniform, RandomKind::cross_pair}) {
    RandomCorpus rc;
    rc.kind = kind;
    rc.count = 25;
    rc.n_lo = 4;
    rc.n_hi = 7;
    rc.k = 2;
    rc.l = 2;
    rc.seed = 9;
    const auto items = generate(rc);
    CHECK(items.size() == 25);
    CHECK(generate(rc).size() == items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto& fs = items[i].families;
      CHECK(fs == generate(rc)[i].families);
      switch (kind) {
        case RandomKind::increasing: CHECK(fs.at(0).is_increasing()); break;
        case RandomKind::intersecting: CHECK(is_intersecting(fs.at(0))); break;
        case RandomKind::uniform: CHECK((fs.at(0).empty() || fs.at(0).is_uniform(2))); break;
        case RandomKind::intersecting_uniform:
          CHECK(is_intersecting(fs.at(0)));
          CHECK(fs.at(0).is_uniform(2));
          break;
        case RandomKind::cross_pair:
          REQUIRE(fs.size() == 2);
          CHECK(are_cross_intersecting(fs[0], fs[1]));
          break;
      }
    }
  }
}

TEST_CASE("registry covers every checker once") {
  std::set<std::string> ids;
  for (const auto& c : checker_registry()) ids.insert(c.id);
  CHECK(ids.size() == checker_registry().size());
  for (const char* id : {"check_russo", "check_integral_identity", "check_biased_ekr", "check_harris", "check_biased_iso",
                         "check_logp_monotone", "check_chernoff", "check_going_up", "check_fkg_union",
                         "check_local_lym", "check_kk_chain", "check_hilton", "hilton_extremal_probe",
                         "check_cross_combination", "check_indicator_claim", "verify_theorem"}) {
    CHECK(find_checker(id) != nullptr);
  }
  CHECK(find_checker("nope") == nullptr);
  // the default suite uses every registered checker
  std::set<std::string> used;
  for (const auto& d : default_suite().checks) used.insert(d.checker);
  CHECK(used == ids);
}

TEST_CASE("run_checker dispatch") {
  const std::vector<SetFamily> fs{construct(GroundSet(4), construction::Dictatorship{1})};
  CHECK(run_checker("check_russo", fs, {{"p", "1/3"}}).holds());
  CHECK(run_checker("check_biased_ekr", fs, {{"p", "1/3"}}).equality);
  CHECK(run_checker("check_kk_chain", {}, {{"n", 10}, {"k", 3}, {"r", 2}, {"t", 2}}).holds());
  CHECK_THROWS(run_checker("nope", fs, json::object()));
}

TEST_CASE("theorem verification") {
  auto rep = verify_theorem(TheoremId::ekr, 7, 3, 0);
  CHECK(rep.ok());
  CHECK(rep.json.at("optimum") == 15);
  CHECK(rep.json.at("unique") == true);
  rep = verify_theorem(TheoremId::main_union, 7, 2, 3);
  CHECK(rep.json.at("optimum") == 15);
  CHECK(rep.json.at("regime") == "OUT-OF-REGIME");
  CHECK(rep.json.at("verdict") == "NOT-ASSERTED");
  SearchLimits tiny;
  tiny.node_budget = 5;
  rep = verify_theorem(TheoremId::ff_union, 9, 3, 2, tiny);
  CHECK(rep.verdict.indeterminate());
  CHECK_FALSE(rep.ok());
  CHECK(parse_theorem("matching") == TheoremId::matching);
  CHECK_FALSE(parse_theorem("bogus").has_value());
}

TEST_CASE("suite spec round trip") {
  const auto spec = default_suite();
  const auto again = SuiteSpec::from_json(spec.to_json());
  CHECK(again.to_json() == spec.to_json());
  CHECK_THROWS_AS(SuiteSpec::from_json(json::parse(R"({"checks":[{"checker":"bogus"}]})")), std::invalid_argument);
  CHECK_THROWS_AS(SuiteSpec::from_json(json::array()), std::invalid_argument);
}

TEST_CASE("default suite is green and deterministic") {
  auto spec = default_suite();
  const auto a = run_suite(spec);
  CHECK(a.ok);
  CHECK(a.json.at("summary").at("fails") == 0);
  spec.workers = 3;
  const auto b = run_suite(spec);
  CHECK(strip_timestamp(a.json).dump() == strip_timestamp(b.json).dump());
}

TEST_CASE("precondition violations become ERROR records") {
  const auto spec = SuiteSpec::from_json(json::parse(R"({
    "name": "bad",
    "checks": [{"checker": "check_russo", "params": {"p": "1/2"},
                "corpus": {"constructions": ["level:2"], "n": 4}}]})"));
  const auto rep = run_suite(spec);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.json.at("records").size() == 1);
  CHECK(rep.json.at("records")[0].at("verdict") == "ERROR");
  const auto csv = report_csv(rep.json);
  CHECK(csv.rfind("checker,params,verdict,equality,witness,error\n", 0) == 0);
  CHECK(csv.find("ERROR") != std::string::npos);
}

TEST_CASE("parameter grids expand") {
  const auto spec = SuiteSpec::from_json(json::parse(R"({
    "checks": [{"checker": "check_biased_ekr", "params": {"p": ["1/4", "1/3", "1/2"]},
                "corpus": {"constructions": ["dict:1", "dict:2"], "n": [3, 4]}}]})"));
  const auto rep = run_suite(spec);
  CHECK(rep.ok);
  CHECK(rep.json.at("records").size() == 3 * 2 * 2);
}
