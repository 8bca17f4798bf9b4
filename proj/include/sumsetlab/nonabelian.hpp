#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sumsetlab/groups.hpp"
#include "sumsetlab/report.hpp"

namespace sumsetlab {

/// Finite non-empty subset of one group, deduplicated and sorted by the group
/// order (or by coordinates when the group is unordered).
class GroupSubset {
 public:
  GroupSubset(GroupPtr group, std::vector<GroupElement> elements);

  const GroupPtr& group() const { return group_; }
  std::size_t size() const { return elems_.size(); }
  std::span<const GroupElement> elements() const { return elems_; }
  const GroupElement& operator[](std::size_t i) const { return elems_[i]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  bool contains(const GroupElement& g) const;

  nlohmann::json to_json() const;
  static GroupSubset from_json(const GroupPtr& group, const nlohmann::json& j);

  friend bool operator==(const GroupSubset& a, const GroupSubset& b);

 private:
  GroupPtr group_;
  std::vector<GroupElement> elems_;
};

/// {s t : s in S, t in T}
GroupSubset product_set(const GroupSubset& s, const GroupSubset& t);

enum class WitnessStrategy { top_two, fallback };

/// S ⊆ {y x^t} with x, y commuting. Certificates produced by
/// is_weakly_structured are canonical: the smallest exponent is 0 and the
/// exponents have gcd 1 (x is the identity only for a singleton).
struct WeakStructureCertificate {
  GroupElement x;
  GroupElement y;
  /// s = y x^t for each listed (s, t).
  std::vector<std::pair<GroupElement, Int>> exponents;
  /// Smallest positive N with every |t| <= N.
  Int N = 1;
  WitnessStrategy strategy = WitnessStrategy::top_two;

  /// max t - min t
  Int window() const;
};

nlohmann::json to_json(const WeakStructureCertificate& cert);

/// Searches for commuting x, y with S ⊆ {y x^t : |t| <= bound}, bound
/// defaulting to |S^2|. Ordered groups first try y = max S,
/// x = (second largest) * (max S)^-1; every group then falls back to
/// x ∈ S S^-1, y ∈ S. Incomplete outside the bound.
std::optional<WeakStructureCertificate> is_weakly_structured(const GroupSubset& s,
                                                             std::optional<Int> exponent_bound = {});

/// Independent check: x and y commute and every listed element equals y x^t.
bool recheck_certificate(const WeakStructureCertificate& cert);

/// Product-set theorem on ordered groups: |S^2| <= 3|S| - 4 implies S is weakly
/// structured inside a window governed by N = |S^2| - |S|. Both window
/// readings are evaluated; the conclusion holds if either does.
VerificationReport verify_theorem_prem1(const GroupSubset& s);

/// From a certificate: <S> lies in <x, y>, which is abelian and generated by
/// at most two elements. Throws InvalidCertificateError when the certificate
/// fails its recheck.
VerificationReport subgroup_conclusions(const WeakStructureCertificate& cert);

/// Hypothesis |S^2| <= 3|S| - 4; conclusion via a certificate and
/// subgroup_conclusions.
VerificationReport verify_theorem_prem(const GroupSubset& s);

}  // namespace sumsetlab
