#include "sumsetlab/report.hpp"

#include <array>

#include "sumsetlab/error.hpp"

namespace sumsetlab {

namespace {

struct TheoremName {
  TheoremId id;
  std::string_view full;
  std::string_view short_name;
};

constexpr std::array<TheoremName, 11> kNames{{
    {TheoremId::eq1_lower_bound, "eq1_lower_bound", "eq1"},
    {TheoremId::cauchy_davenport, "cauchy_davenport", "cauchy_davenport"},
    {TheoremId::thm_A_3k4, "thm_A_3k4", "thm_A"},
    {TheoremId::lemma_1_L4, "lemma_1_L4", "lemma_1"},
    {TheoremId::lemma_2_L2, "lemma_2_L2", "lemma_2"},
    {TheoremId::thm_1_balu, "thm_1_balu", "thm_1"},
    {TheoremId::thm_2_structure, "thm_2_structure", "thm_2"},
    {TheoremId::cor_1_M3, "cor_1_M3", "cor_1"},
    {TheoremId::cor_2_M1, "cor_2_M1", "cor_2"},
    {TheoremId::thm_4_prem1, "thm_4_prem1", "thm_4"},
    {TheoremId::thm_3_prem, "thm_3_prem", "thm_3"},
}};

}  // namespace

std::string_view theorem_name(TheoremId id) {
  for (const auto& n : kNames) {
    if (n.id == id) return n.full;
  }
  return "unknown";
}

TheoremId parse_theorem(std::string_view text) {
  for (const auto& n : kNames) {
    if (text == n.full || text == n.short_name) return n.id;
  }
  throw MalformedInputError("unknown theorem id '" + std::string(text) + "'");
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> v;
    for (const auto& n : kNames) v.push_back(n.id);
    return v;
  }();
  return ids;
}

std::string_view window_reading_name(WindowReading r) {
  switch (r) {
    case WindowReading::literal: return "literal";
    case WindowReading::relaxed: return "relaxed";
    case WindowReading::neither: return "neither";
  }
  return "neither";
}

nlohmann::json VerificationReport::to_json(bool include_timing) const {
  nlohmann::json j{{"theorem", theorem_name(theorem)},
                   {"instance", instance},
                   {"hypothesis_met", hypothesis_met},
                   {"conclusion_holds", nullptr},
                   {"counterexample", counterexample()},
                   {"witness", witness},
                   {"detail", detail}};
  if (conclusion_holds) j["conclusion_holds"] = *conclusion_holds;
  if (window_reading) j["window_reading"] = window_reading_name(*window_reading);
  if (include_timing) {
    j["elapsed_us"] = std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count();
  }
  return j;
}

}  // namespace sumsetlab
