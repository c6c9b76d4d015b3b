#pragma once

// Suite runner: checker registry, seeded corpora, theorem verification and
// report assembly.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ekrlab/family.hpp"
#include "ekrlab/search.hpp"
#include "ekrlab/verdict.hpp"

namespace ekrlab {

inline constexpr const char* kVersion = "0.1.0";

// --- deterministic randomness ----------------------------------------------

/// mt19937_64 (whose output sequence is fixed by the standard) with its own
/// bounded draw, since std distributions differ between implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den);

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finaliser; derives independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// --- corpora ---------------------------------------------------------------

enum class RandomKind { increasing, intersecting, uniform, intersecting_uniform, cross_pair };

std::optional<RandomKind> parse_random_kind(std::string_view name);
std::string to_string(RandomKind kind);

/// Random increasing family: 1 + U{0..3} seed sets, each element kept with
/// probability 1/2, then up-closed.
SetFamily random_increasing(SeededRng& rng, int n);
/// Random intersecting family: with probability 1/8 a random dictatorship;
/// otherwise 2n random non-empty sets offered greedily (kept when they meet
/// every kept set), then up-closed with probability 1/2.
SetFamily random_intersecting(SeededRng& rng, int n);
/// Each k-set kept independently with probability d/4, d uniform in {1,2,3}.
SetFamily random_uniform(SeededRng& rng, int n, int k);
/// k-sets in random order offered greedily until a uniform random target size
/// in [1, C(n,k)] is reached or the level is exhausted.
SetFamily random_intersecting_uniform(SeededRng& rng, int n, int k);

/// One corpus entry: the families handed to a checker plus the parameters
/// that describe where they came from.
struct CorpusItem {
  std::vector<SetFamily> families;
  nlohmann::json attrs;
};

struct RandomCorpus {
  RandomKind kind = RandomKind::increasing;
  int count = 1;
  int n_lo = 1;
  int n_hi = 1;
  int k = 1;      ///< uniform kinds and cross pairs
  int l = 1;      ///< cross pairs
  int group = 1;  ///< families per item (cross pairs always 2)
  std::uint64_t seed = 0;
};

/// Fully determined by the corpus description (including its seed).
std::vector<CorpusItem> generate(const RandomCorpus& corpus);

// --- checker registry ---------------------------------------------------------

enum class Arity { none, single, pair, tuple };

struct CheckerInfo {
  std::string id;
  Arity arity;
  std::vector<std::string> params;
  std::string summary;
};

const std::vector<CheckerInfo>& checker_registry();
const CheckerInfo* find_checker(std::string_view id);

/// Runs one checker. Rationals in `params` may be "a/b" strings or integers.
/// Throws std::invalid_argument on precondition violations.
Verdict run_checker(std::string_view id, std::span<const SetFamily> families, const nlohmann::json& params,
                    int precision_bits = 256, const SearchLimits& limits = {});

// --- theorems ---------------------------------------------------------------

enum class TheoremId { ekr, ff_union, main_union, matching };

std::optional<TheoremId> parse_theorem(std::string_view name);
std::string to_string(TheoremId id);

/// Whether (n, k, r-or-s) satisfies the theorem's hypothesis.
bool in_regime(TheoremId id, int n, int k, int r);
/// The theorem's extremal size.
std::uint64_t theorem_formula(TheoremId id, int n, int k, int r);

struct TheoremReport {
  nlohmann::json json;
  /// HOLDS / FAILS in regime, INDETERMINATE when the search was cut short;
  /// out-of-regime runs are never asserted and report HOLDS here.
  Verdict verdict;
  bool ok() const { return !verdict.fails() && !verdict.indeterminate(); }
};

/// Runs the matching search with every witness collected and compares the
/// optimum and witness shapes with the theorem. `r` is ignored for ekr and
/// must be 2 (or 0 for the default) for ff-union.
TheoremReport verify_theorem(TheoremId id, int n, int k, int r, SearchLimits limits = {});

// --- suites -----------------------------------------------------------------

struct CheckDescriptor {
  std::string checker;
  /// Key -> scalar or array; arrays expand to a cartesian grid.
  nlohmann::json params = nlohmann::json::object();
  /// Named constructions, random corpus or family files; null for
  /// parameter-only checkers.
  nlohmann::json corpus;
  bool allow_indeterminate = false;
};

struct SuiteSpec {
  std::string name = "suite";
  std::uint64_t seed = 1;
  int precision_bits = 256;
  int workers = 1;
  bool record_timing = false;
  SearchLimits limits;
  std::vector<CheckDescriptor> checks;
  /// Family file paths are resolved against this directory.
  std::string base_dir = ".";

  static SuiteSpec from_json(const nlohmann::json& j, const std::string& base_dir = ".");
  nlohmann::json to_json() const;
};

SuiteSpec load_suite_file(const std::string& path);

/// The built-in "paper-tools" suite: every checker on named constructions
/// plus small seeded random corpora.
SuiteSpec default_suite();

struct Report {
  nlohmann::json json;
  bool ok = false;
};

/// Runs every check; records are sorted by (checker, params). The only
/// non-deterministic field is "timestamp" (and per-record "wall_ms" when
/// record_timing is set).
Report run_suite(const SuiteSpec& spec);

/// One CSV row per record: checker,params,verdict,equality,witness,error.
std::string report_csv(const nlohmann::json& report);

}  // namespace ekrlab
