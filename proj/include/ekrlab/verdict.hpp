#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace ekrlab {

enum class VerdictKind { holds, fails, indeterminate };

std::string to_string(VerdictKind k);

/// Outcome of an executable inequality check. `indeterminate` is reserved for
/// checkers that bound transcendental quantities with interval arithmetic and
/// could not separate the two sides at the requested precision.
struct Verdict {
  VerdictKind kind = VerdictKind::holds;
  /// Both sides were found exactly equal.
  bool equality = false;
  /// Human-readable counterexample when kind == fails.
  std::string witness;
  std::optional<int> precision_bits;
  /// Checker-specific exact quantities (sides of the inequality, diagnoses).
  nlohmann::json details = nlohmann::json::object();

  bool holds() const { return kind == VerdictKind::holds; }
  bool fails() const { return kind == VerdictKind::fails; }
  bool indeterminate() const { return kind == VerdictKind::indeterminate; }

  static Verdict from(bool ok) {
    Verdict v;
    v.kind = ok ? VerdictKind::holds : VerdictKind::fails;
    return v;
  }
};

}  // namespace ekrlab
