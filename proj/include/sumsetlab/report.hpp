#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sumsetlab {

enum class TheoremId {
  eq1_lower_bound,
  cauchy_davenport,
  thm_A_3k4,
  lemma_1_L4,
  lemma_2_L2,
  thm_1_balu,
  thm_2_structure,
  cor_1_M3,
  cor_2_M1,
  thm_4_prem1,
  thm_3_prem,
};

std::string_view theorem_name(TheoremId id);
/// Accepts the full identifier or its short form ("thm_A", "lemma_2",
/// "thm_4", "eq1", ...).
TheoremId parse_theorem(std::string_view text);
const std::vector<TheoremId>& all_theorems();

/// Which reading of the product-set window bound held for a certificate:
/// exponents in [0, N-1] (literal) or only in [0, N] (relaxed), with
/// N = |S^2| - |S|.
enum class WindowReading { literal, relaxed, neither };
std::string_view window_reading_name(WindowReading r);

/// Outcome of checking one theorem on one instance. The instance JSON is
/// self-contained: reverify() reproduces the verdict from it alone.
struct VerificationReport {
  TheoremId theorem = TheoremId::eq1_lower_bound;
  nlohmann::json instance;
  bool hypothesis_met = false;
  /// Unset when the hypothesis fails and the conclusion is not evaluated.
  std::optional<bool> conclusion_holds;
  nlohmann::json witness;
  std::optional<WindowReading> window_reading;
  std::string detail;
  std::chrono::nanoseconds elapsed{0};

  bool counterexample() const { return hypothesis_met && conclusion_holds == false; }
  bool vacuous() const { return !hypothesis_met; }
  nlohmann::json to_json(bool include_timing = true) const;
};

}  // namespace sumsetlab
