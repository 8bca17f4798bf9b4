#include "sumsetlab/core_sets.hpp"

#include <algorithm>
#include <sstream>

namespace sumsetlab {

namespace {

std::vector<Int> sorted_unique(std::vector<Int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

IntSet::IntSet(std::initializer_list<Int> elements) : IntSet(std::vector<Int>(elements)) {}

IntSet::IntSet(std::vector<Int> elements) : elems_(sorted_unique(std::move(elements))) {
  if (elems_.empty()) {
    throw DegenerateInputError("IntSet must be non-empty");
  }
}

IntSet IntSet::from_sorted(std::vector<Int> elements) {
  if (elements.empty()) {
    throw DegenerateInputError("IntSet must be non-empty");
  }
  for (std::size_t i = 1; i < elements.size(); ++i) {
    if (elements[i - 1] >= elements[i]) {
      throw MalformedInputError("set elements must be strictly increasing");
    }
  }
  return IntSet(Adopt{}, std::move(elements));
}

bool IntSet::contains(Int value) const {
  return std::binary_search(elems_.begin(), elems_.end(), value);
}

bool IntSet::is_subset_of(const IntSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

IntSet IntSet::translated(Int t) const {
  std::vector<Int> out;
  out.reserve(elems_.size());
  for (Int a : elems_) {
    out.push_back(checked_add(a, t));
  }
  return IntSet(Adopt{}, std::move(out));
}

IntSet IntSet::without_max() const {
  if (elems_.size() < 2) {
    throw DegenerateInputError("cannot remove the maximum of a singleton");
  }
  return IntSet(Adopt{}, std::vector<Int>(elems_.begin(), elems_.end() - 1));
}

std::string IntSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) os << ',';
    os << elems_[i];
  }
  os << '}';
  return os.str();
}

Rational Rational::of(Int num, Int den) {
  if (den == 0) {
    throw PreconditionError("zero denominator");
  }
  if (den < 0) {
    num = checked_neg(num);
    den = checked_neg(den);
  }
  Int g = gcd(num, den);
  return Rational{num / g, den / g};
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Int APDescription::last() const {
  return checked_add(start, checked_mul(difference, length - 1));
}

bool APDescription::contains(Int value) const {
  Int offset = checked_sub(value, start);
  if (offset < 0 || offset % difference != 0) return false;
  return offset / difference < length;
}

bool APDescription::contains(const IntSet& set) const {
  return std::all_of(set.begin(), set.end(), [this](Int a) { return contains(a); });
}

Int NormalizationMap::apply(Int a) const {
  Int offset = checked_sub(a, shift);
  if (offset % scale != 0) {
    throw PreconditionError(std::to_string(a) + " is not in the domain of the normalization map");
  }
  return offset / scale;
}

Int NormalizationMap::invert(Int a) const { return checked_add(checked_mul(a, scale), shift); }

IntSet NormalizationMap::apply(const IntSet& set) const {
  std::vector<Int> out;
  out.reserve(set.size());
  for (Int a : set) out.push_back(apply(a));
  return IntSet::from_sorted(std::move(out));
}

IntSet NormalizationMap::invert(const IntSet& set) const {
  std::vector<Int> out;
  out.reserve(set.size());
  for (Int a : set) out.push_back(invert(a));
  return IntSet::from_sorted(std::move(out));
}

IntSet sumset(const IntSet& a, const IntSet& b) {
  std::vector<Int> sums;
  sums.reserve(a.size() * b.size());
  for (Int x : a) {
    for (Int y : b) sums.push_back(checked_add(x, y));
  }
  return IntSet(std::move(sums));
}

IntSet difference_set(const IntSet& a, const IntSet& b) {
  std::vector<Int> diffs;
  diffs.reserve(a.size() * b.size());
  for (Int x : a) {
    for (Int y : b) diffs.push_back(checked_sub(x, y));
  }
  return IntSet(std::move(diffs));
}

Int gcd_of_differences(const IntSet& a) {
  Int g = 0;
  for (Int x : a) g = gcd(g, checked_sub(x, a.min()));
  return g;
}

bool is_normalized(const IntSet& a) { return a.min() == 0 && gcd_of_differences(a) == 1; }

Normalized normalize(const IntSet& a) {
  if (a.size() < 2) {
    throw DegenerateInputError("normalize needs at least two elements");
  }
  NormalizationMap map{a.min(), gcd_of_differences(a)};
  return Normalized{map.apply(a), map};
}

SumsetStats stats(const IntSet& a) {
  if (a.size() < 2) {
    throw DegenerateInputError("stats needs at least two elements");
  }
  if (!is_normalized(a)) {
    throw PreconditionError("stats requires a normalized set (min 0, gcd 1): " + a.to_string());
  }
  SumsetStats s;
  s.k = a.size();
  s.sumset_size = sumset(a, a).size();
  Int k = static_cast<Int>(s.k);
  s.b = static_cast<Int>(s.sumset_size) - (2 * k - 1);
  s.R = std::min(checked_add(checked_sub(a.max(), k), 3), k);
  s.doubling = Rational::of(static_cast<Int>(s.sumset_size), k);
  return s;
}

// Any AP containing A has a difference d dividing every a_i - a_j, hence
// dividing g = gcd of the differences. Its length is at least
// (max - min) / d + 1 >= (max - min) / g + 1, with equality only for d = g and
// start = min. So the minimal containing AP is unique.
APDescription minimal_containing_ap(const IntSet& a) {
  if (a.size() < 2) {
    throw DegenerateInputError("minimal containing AP of a singleton is not unique");
  }
  Int g = gcd_of_differences(a);
  return APDescription{a.min(), g, checked_sub(a.max(), a.min()) / g + 1};
}

bool is_ap(const IntSet& a) {
  if (a.size() < 2) return true;
  return minimal_containing_ap(a).length == static_cast<Int>(a.size());
}

std::optional<Int> is_ap_pair_with_common_difference(const IntSet& a, const IntSet& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw DegenerateInputError("AP pair check needs |A|, |B| >= 2");
  }
  if (!is_ap(a) || !is_ap(b)) return std::nullopt;
  Int da = gcd_of_differences(a);
  if (da != gcd_of_differences(b)) return std::nullopt;
  return da;
}

bool check_2_isomorphism(const IntSet& a, const IntSet& b, std::span<const Int> image) {
  if (image.size() != a.size()) {
    throw MalformedInputError("bijection must give one image per element of A");
  }
  std::vector<Int> sorted(image.begin(), image.end());
  std::sort(sorted.begin(), sorted.end());
  if (!std::equal(sorted.begin(), sorted.end(), b.begin(), b.end())) {
    throw MalformedInputError("map is not a bijection onto B");
  }
  const std::size_t k = a.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t l = 0; l < k; ++l) {
          bool lhs = checked_add(a[i], a[j]) == checked_add(a[m], a[l]);
          bool rhs = checked_add(image[i], image[j]) == checked_add(image[m], image[l]);
          if (lhs != rhs) return false;
        }
      }
    }
  }
  return true;
}

nlohmann::json to_json(const IntSet& set) {
  return nlohmann::json(std::vector<Int>(set.begin(), set.end()));
}

IntSet int_set_from_json(const nlohmann::json& j) {
  try {
    auto values = j.get<std::vector<Int>>();
    if (values.empty()) throw MalformedInputError("integer set must be non-empty");
    return IntSet::from_sorted(std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInputError(std::string("bad integer set: ") + e.what());
  }
}

nlohmann::json to_json(const NormalizationMap& map) { return {{"shift", map.shift}, {"scale", map.scale}}; }

NormalizationMap normalization_map_from_json(const nlohmann::json& j) {
  try {
    NormalizationMap map{j.at("shift").get<Int>(), j.at("scale").get<Int>()};
    if (map.scale < 1) throw MalformedInputError("normalization scale must be positive");
    return map;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInputError(std::string("bad normalization map: ") + e.what());
  }
}

nlohmann::json to_json(const SumsetStats& s) {
  return {{"k", s.k},
          {"sumset_size", s.sumset_size},
          {"b", s.b},
          {"R", s.R},
          {"doubling", s.doubling.to_string()}};
}

nlohmann::json to_json(const APDescription& ap) {
  return {{"start", ap.start}, {"difference", ap.difference}, {"length", ap.length}};
}

}  // namespace sumsetlab
