#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sumsetlab/checked.hpp"

namespace sumsetlab {

/// Finite, non-empty set of integers stored strictly increasing.
class IntSet {
 public:
  IntSet(std::initializer_list<Int> elements);
  /// Sorts and deduplicates; throws DegenerateInputError when empty.
  explicit IntSet(std::vector<Int> elements);

  /// Adopts an already strictly increasing vector (checked).
  static IntSet from_sorted(std::vector<Int> elements);

  std::size_t size() const { return elems_.size(); }
  Int min() const { return elems_.front(); }
  Int max() const { return elems_.back(); }
  Int operator[](std::size_t i) const { return elems_[i]; }
  std::span<const Int> elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool contains(Int value) const;
  bool is_subset_of(const IntSet& other) const;

  IntSet translated(Int t) const;
  /// The set with its largest element removed; needs size() >= 2.
  IntSet without_max() const;

  std::string to_string() const;

  friend bool operator==(const IntSet&, const IntSet&) = default;
  friend auto operator<=>(const IntSet&, const IntSet&) = default;

 private:
  struct Adopt {};
  IntSet(Adopt, std::vector<Int> elements) : elems_(std::move(elements)) {}

  std::vector<Int> elems_;
};

/// Exact non-negative rational kept in lowest terms.
struct Rational {
  Int num = 0;
  Int den = 1;

  static Rational of(Int num, Int den);
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// {start + t * difference : 0 <= t < length}
struct APDescription {
  Int start = 0;
  Int difference = 1;
  Int length = 1;

  Int last() const;
  bool contains(Int value) const;
  bool contains(const IntSet& set) const;
  friend bool operator==(const APDescription&, const APDescription&) = default;
};

/// a -> (a - shift) / scale. Translation and dilation are both Freiman
/// 2-isomorphisms, so normalizing never changes additive structure.
struct NormalizationMap {
  Int shift = 0;
  Int scale = 1;

  Int apply(Int a) const;
  Int invert(Int a) const;
  IntSet apply(const IntSet& set) const;
  IntSet invert(const IntSet& set) const;
  friend bool operator==(const NormalizationMap&, const NormalizationMap&) = default;
};

struct Normalized {
  IntSet set;
  NormalizationMap map;
};

/// Quantities attached to a normalized set A with |A| = k:
/// |A+A| = 2k - 1 + b and R = min(a_k - k + 3, k).
struct SumsetStats {
  std::size_t k = 0;
  std::size_t sumset_size = 0;
  Int b = 0;
  Int R = 0;
  Rational doubling;
};

IntSet sumset(const IntSet& a, const IntSet& b);
IntSet difference_set(const IntSet& a, const IntSet& b);

/// gcd of all pairwise differences, equivalently of a_i - min(A). Zero for a
/// singleton.
Int gcd_of_differences(const IntSet& a);

/// min(A) == 0 and gcd(A) == 1.
bool is_normalized(const IntSet& a);

Normalized normalize(const IntSet& a);

/// Requires a normalized set with k >= 2.
SumsetStats stats(const IntSet& a);

APDescription minimal_containing_ap(const IntSet& a);

bool is_ap(const IntSet& a);

/// Common difference when A and B are both full arithmetic progressions with
/// the same difference; the equality case of |A+B| >= |A|+|B|-1.
std::optional<Int> is_ap_pair_with_common_difference(const IntSet& a, const IntSet& b);

/// Freiman 2-isomorphism check for the bijection a[i] -> image[i] onto B:
/// a_i + a_j = a_k + a_l  iff  phi(a_i) + phi(a_j) = phi(a_k) + phi(a_l).
/// Throws MalformedInputError if image is not a bijection onto B.
bool check_2_isomorphism(const IntSet& a, const IntSet& b, std::span<const Int> image);

// JSON: sets are strictly increasing integer arrays, normalization maps are
// {"shift": s, "scale": m}.
nlohmann::json to_json(const IntSet& set);
IntSet int_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const NormalizationMap& map);
NormalizationMap normalization_map_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SumsetStats& s);
nlohmann::json to_json(const APDescription& ap);

}  // namespace sumsetlab
