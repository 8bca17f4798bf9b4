#include "sumsetlab/nonabelian.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

namespace sumsetlab {

namespace {

using Clock = std::chrono::steady_clock;

nlohmann::json subset_instance(const GroupSubset& s) {
  return {{"group", s.group()->to_json()}, {"set", s.to_json()}};
}

/// Shifts the smallest exponent to 0 and divides out the exponent gcd.
WeakStructureCertificate canonical_certificate(const GroupPtr& group, GroupElement x, GroupElement y,
                                               std::vector<std::pair<GroupElement, Int>> exps,
                                               WitnessStrategy strategy) {
  Int lo = exps.front().second;
  for (const auto& e : exps) lo = std::min(lo, e.second);
  Int g = 0;
  for (auto& e : exps) {
    e.second = checked_sub(e.second, lo);
    g = gcd(g, e.second);
  }
  y = group->op(y, group->power(x, lo));
  if (g == 0) {
    x = group->identity();
  } else if (g > 1) {
    x = group->power(x, g);
    for (auto& e : exps) e.second /= g;
  }
  Int hi = 0;
  for (const auto& e : exps) hi = std::max(hi, e.second);
  return WeakStructureCertificate{std::move(x), std::move(y), std::move(exps), std::max<Int>(hi, 1), strategy};
}

std::optional<WeakStructureCertificate> top_two_strategy(const GroupSubset& s, Int bound) {
  const GroupPtr& group = s.group();
  const std::size_t k = s.size();
  const GroupElement& y = s[k - 1];
  GroupElement x = group->op(s[k - 2], group->inverse(y));
  if (!group->commutes(x, y)) return std::nullopt;

  // x < e, so t -> y x^t strictly decreases; walk down through S.
  std::vector<std::pair<GroupElement, Int>> exps;
  GroupElement current = y;
  Int t = 0;
  for (std::size_t i = k; i-- > 0;) {
    while (group->compare(current, s[i]) > 0 && t < bound) {
      current = group->op(current, x);
      ++t;
    }
    if (!(current == s[i])) return std::nullopt;
    exps.emplace_back(s[i], t);
  }
  return canonical_certificate(group, std::move(x), y, std::move(exps), WitnessStrategy::top_two);
}

std::optional<WeakStructureCertificate> fallback_strategy(const GroupSubset& s, Int bound) {
  const GroupPtr& group = s.group();
  const GroupElement e = group->identity();

  std::vector<GroupElement> ratios;
  for (const auto& a : s) {
    for (const auto& b : s) {
      if (a == b) continue;
      GroupElement r = group->op(a, group->inverse(b));
      if (std::find(ratios.begin(), ratios.end(), r) == ratios.end()) ratios.push_back(std::move(r));
    }
  }

  for (const auto& x : ratios) {
    const GroupElement x_inv = group->inverse(x);
    for (const auto& y : s) {
      if (!group->commutes(x, y)) continue;
      std::unordered_map<GroupElement, Int, GroupElementHash> powers;
      powers.emplace(y, 0);
      GroupElement up = y;
      GroupElement down = y;
      for (Int t = 1; t <= bound; ++t) {
        up = group->op(up, x);
        down = group->op(down, x_inv);
        powers.emplace(up, t);
        powers.emplace(down, -t);
      }
      std::vector<std::pair<GroupElement, Int>> exps;
      for (const auto& a : s) {
        auto it = powers.find(a);
        if (it == powers.end()) break;
        exps.emplace_back(a, it->second);
      }
      if (exps.size() == s.size()) {
        return canonical_certificate(group, x, y, std::move(exps), WitnessStrategy::fallback);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

GroupSubset::GroupSubset(GroupPtr group, std::vector<GroupElement> elements)
    : group_(std::move(group)), elems_(std::move(elements)) {
  if (elems_.empty()) {
    throw DegenerateInputError("group subset must be non-empty");
  }
  for (const auto& g : elems_) group_->require_member(g);
  if (group_->is_ordered()) {
    std::sort(elems_.begin(), elems_.end(),
              [this](const GroupElement& a, const GroupElement& b) { return group_->compare(a, b) < 0; });
  } else {
    std::sort(elems_.begin(), elems_.end(), CoordinateLess{});
  }
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool GroupSubset::contains(const GroupElement& g) const {
  return std::find(elems_.begin(), elems_.end(), g) != elems_.end();
}

nlohmann::json GroupSubset::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : elems_) out.push_back(element_to_json(g));
  return out;
}

GroupSubset GroupSubset::from_json(const GroupPtr& group, const nlohmann::json& j) {
  if (!j.is_array()) {
    throw MalformedInputError("group subset must be a JSON array of elements");
  }
  std::vector<GroupElement> elems;
  for (const auto& e : j) elems.push_back(element_from_json(group, e));
  return GroupSubset(group, std::move(elems));
}

bool operator==(const GroupSubset& a, const GroupSubset& b) {
  return same_group(a.group_, b.group_) && a.elems_ == b.elems_;
}

GroupSubset product_set(const GroupSubset& s, const GroupSubset& t) {
  if (!same_group(s.group(), t.group())) {
    throw TypeConfusionError("product of subsets of " + s.group()->name() + " and " + t.group()->name());
  }
  std::vector<GroupElement> out;
  out.reserve(s.size() * t.size());
  for (const auto& a : s) {
    for (const auto& b : t) out.push_back(s.group()->op(a, b));
  }
  return GroupSubset(s.group(), std::move(out));
}

Int WeakStructureCertificate::window() const {
  Int lo = exponents.front().second;
  Int hi = lo;
  for (const auto& e : exponents) {
    lo = std::min(lo, e.second);
    hi = std::max(hi, e.second);
  }
  return hi - lo;
}

nlohmann::json to_json(const WeakStructureCertificate& cert) {
  nlohmann::json exps = nlohmann::json::array();
  for (const auto& [g, t] : cert.exponents) exps.push_back({element_to_json(g), t});
  return {{"x", element_to_json(cert.x)},
          {"y", element_to_json(cert.y)},
          {"exponents", exps},
          {"N", cert.N},
          {"window", cert.window()},
          {"strategy", cert.strategy == WitnessStrategy::top_two ? "top_two" : "fallback"}};
}

std::optional<WeakStructureCertificate> is_weakly_structured(const GroupSubset& s,
                                                             std::optional<Int> exponent_bound) {
  const GroupPtr& group = s.group();
  if (s.size() == 1) {
    return WeakStructureCertificate{group->identity(), s[0], {{s[0], 0}}, 1, WitnessStrategy::top_two};
  }
  const Int bound = exponent_bound.value_or(static_cast<Int>(product_set(s, s).size()));
  if (group->is_ordered()) {
    if (auto cert = top_two_strategy(s, bound)) return cert;
  }
  return fallback_strategy(s, bound);
}

bool recheck_certificate(const WeakStructureCertificate& cert) {
  const GroupPtr& group = cert.x.group();
  if (!group->commutes(cert.x, cert.y)) return false;
  for (const auto& [s, t] : cert.exponents) {
    if (!(group->op(cert.y, group->power(cert.x, t)) == s)) return false;
    if (t > cert.N || t < -cert.N) return false;
  }
  return true;
}

VerificationReport verify_theorem_prem1(const GroupSubset& s) {
  const auto start = Clock::now();
  const GroupPtr& group = s.group();
  if (!group->is_ordered()) {
    throw UnsupportedOperationError("product-set theorem needs an ordered group, got " + group->name());
  }
  if (s.size() < 3) {
    throw PreconditionError("product-set theorem needs |S| >= 3");
  }
  VerificationReport report;
  report.theorem = TheoremId::thm_4_prem1;
  report.instance = subset_instance(s);

  const Int k = static_cast<Int>(s.size());
  const Int square = static_cast<Int>(product_set(s, s).size());
  report.hypothesis_met = square <= 3 * k - 4;
  if (report.hypothesis_met) {
    const Int n = square - k;
    auto cert = is_weakly_structured(s, square);
    if (!cert || !recheck_certificate(*cert)) {
      report.conclusion_holds = false;
      report.window_reading = WindowReading::neither;
      report.detail = "no weak-structure certificate within exponent bound " + std::to_string(square);
    } else {
      // Canonical certificates start at exponent 0.
      const Int w = cert->window();
      const bool literal = w <= n - 1;
      const bool relaxed = w <= n;
      report.window_reading = literal ? WindowReading::literal : relaxed ? WindowReading::relaxed : WindowReading::neither;
      report.conclusion_holds = relaxed;
      report.witness = to_json(*cert);
      report.witness["N_literal"] = n;
      report.witness["window_reading"] = std::string(window_reading_name(*report.window_reading));
      report.detail = "|S^2|=" + std::to_string(square) + ", exponent window " + std::to_string(w) +
                      ", N=" + std::to_string(n) + ", reading " +
                      std::string(window_reading_name(*report.window_reading));
    }
  } else {
    report.detail = "|S^2|=" + std::to_string(square) + " > 3|S|-4=" + std::to_string(3 * k - 4);
  }
  report.elapsed = Clock::now() - start;
  return report;
}

VerificationReport subgroup_conclusions(const WeakStructureCertificate& cert) {
  const auto start = Clock::now();
  if (!recheck_certificate(cert)) {
    throw InvalidCertificateError("weak-structure certificate fails its recheck: " + to_json(cert).dump());
  }
  const GroupPtr& group = cert.x.group();
  VerificationReport report;
  report.theorem = TheoremId::thm_3_prem;
  nlohmann::json set = nlohmann::json::array();
  for (const auto& e : cert.exponents) set.push_back(element_to_json(e.first));
  report.instance = {{"group", group->to_json()}, {"set", set}};
  report.hypothesis_met = true;

  // <S> ⊆ <x, y>; check directly that the listed elements commute pairwise.
  bool abelian = true;
  for (const auto& a : cert.exponents) {
    for (const auto& b : cert.exponents) abelian = abelian && group->commutes(a.first, b.first);
  }
  nlohmann::json generators = nlohmann::json::array();
  if (!(cert.x == group->identity())) generators.push_back(element_to_json(cert.x));
  generators.push_back(element_to_json(cert.y));
  report.conclusion_holds = abelian && group->commutes(cert.x, cert.y);
  report.witness = {{"generators", generators}, {"cyclic", generators.size() == 1}, {"certificate", to_json(cert)}};
  report.detail = generators.size() == 1 ? "<S> is cyclic, generated by y" : "<S> lies in the abelian group <x, y>";
  report.elapsed = Clock::now() - start;
  return report;
}

VerificationReport verify_theorem_prem(const GroupSubset& s) {
  const auto start = Clock::now();
  if (!s.group()->is_ordered()) {
    throw UnsupportedOperationError("subgroup theorem needs an ordered group, got " + s.group()->name());
  }
  VerificationReport report;
  report.theorem = TheoremId::thm_3_prem;
  report.instance = subset_instance(s);
  const Int k = static_cast<Int>(s.size());
  const Int square = static_cast<Int>(product_set(s, s).size());
  report.hypothesis_met = square <= 3 * k - 4;
  if (report.hypothesis_met) {
    auto cert = is_weakly_structured(s, square);
    if (!cert || !recheck_certificate(*cert)) {
      report.conclusion_holds = false;
      report.detail = "no commuting two-generator certificate found";
    } else {
      VerificationReport sub = subgroup_conclusions(*cert);
      report.conclusion_holds = sub.conclusion_holds;
      report.witness = std::move(sub.witness);
      report.detail = std::move(sub.detail);
    }
  } else {
    report.detail = "|S^2|=" + std::to_string(square) + " > 3|S|-4=" + std::to_string(3 * k - 4);
  }
  report.elapsed = Clock::now() - start;
  return report;
}

}  // namespace sumsetlab
