#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sumsetlab/checked.hpp"

namespace sumsetlab {

enum class GroupKind { cyclic, direct_sum, lattice, heisenberg, product };

class GroupSpec;
using GroupPtr = std::shared_ptr<const GroupSpec>;

/// An element in canonical coordinates, tagged with the group it belongs to.
///   cyclic(n):     [r] with 0 <= r < n
///   direct_sum:    [r_1, ..., r_m], each reduced by its modulus
///   lattice(d):    [z_1, ..., z_d]
///   heisenberg:    [a, b, c]
///   product(G):    [a, coordinates of the G-component...]
class GroupElement {
 public:
  const GroupPtr& group() const { return group_; }
  std::span<const Int> coords() const { return coords_; }
  std::string to_string() const;

  friend bool operator==(const GroupElement& g, const GroupElement& h);

 private:
  friend class GroupSpec;
  GroupElement(GroupPtr group, std::vector<Int> coords)
      : group_(std::move(group)), coords_(std::move(coords)) {}

  GroupPtr group_;
  std::vector<Int> coords_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const;
};

/// Lexicographic order on coordinates. A canonical listing order for groups
/// without a compatible order; not a group order.
struct CoordinateLess {
  bool operator()(const GroupElement& g, const GroupElement& h) const;
};

/// Immutable description of one concrete group. Always handled through a
/// shared GroupPtr; elements keep their group alive.
class GroupSpec : public std::enable_shared_from_this<GroupSpec> {
 public:
  static GroupPtr cyclic(Int n);
  static GroupPtr direct_sum(std::vector<Int> moduli);
  /// Z^d with the lexicographic order.
  static GroupPtr lattice(std::size_t d);
  /// Discrete Heisenberg group, (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab'),
  /// ordered lexicographically on (a, b, c).
  static GroupPtr heisenberg();
  /// Z x inner with componentwise operation. Ordered (Z first, then inner)
  /// whenever inner is ordered.
  static GroupPtr product(GroupPtr inner);

  GroupKind kind() const { return kind_; }
  std::size_t arity() const;
  bool is_abelian() const;
  bool is_ordered() const;
  /// Number of elements for finite groups.
  std::optional<std::uint64_t> order() const;
  const std::vector<Int>& moduli() const { return params_; }
  const GroupPtr& inner() const { return inner_; }

  /// Validates the coordinate count and reduces residues.
  GroupElement element(std::vector<Int> coords) const;
  GroupElement identity() const;
  /// Element number `index` in a fixed enumeration of a finite group.
  GroupElement element_at(std::uint64_t index) const;

  GroupElement op(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  /// g^t (t-fold product, inverse powers for negative t).
  GroupElement power(const GroupElement& g, Int t) const;
  /// Throws UnsupportedOperationError for unordered groups.
  std::strong_ordering compare(const GroupElement& g, const GroupElement& h) const;
  bool commutes(const GroupElement& g, const GroupElement& h) const;

  /// Throws TypeConfusionError unless g belongs to this group.
  void require_member(const GroupElement& g) const;

  /// Short form: "cyclic:5", "direct_sum:2,3", "lattice:2", "heisenberg",
  /// "product:cyclic:5".
  std::string name() const;
  nlohmann::json to_json() const;
  static GroupPtr from_json(const nlohmann::json& j);
  /// Accepts either the JSON form or the short form.
  static GroupPtr parse(const std::string& text);

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);

 private:
  GroupSpec(GroupKind kind, std::vector<Int> params, GroupPtr inner)
      : kind_(kind), params_(std::move(params)), inner_(std::move(inner)) {}

  void canonicalize(std::span<Int> c) const;
  void op_into(std::span<const Int> g, std::span<const Int> h, std::span<Int> out) const;
  void inverse_into(std::span<const Int> g, std::span<Int> out) const;
  std::strong_ordering compare_coords(std::span<const Int> g, std::span<const Int> h) const;
  GroupElement make(std::vector<Int> coords) const;

  GroupKind kind_;
  // cyclic: {n}; direct_sum: moduli; lattice: {d}; others empty.
  std::vector<Int> params_;
  GroupPtr inner_;
};

bool same_group(const GroupPtr& a, const GroupPtr& b);

GroupElement op(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
std::strong_ordering compare(const GroupElement& g, const GroupElement& h);
bool commutes(const GroupElement& g, const GroupElement& h);

/// Point (a, x) of Z x G.
struct ProductPoint {
  Int a = 0;
  GroupElement x;

  std::string to_string() const;
  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

/// Componentwise sum; the inner group must be abelian.
ProductPoint product_point_add(const ProductPoint& p, const ProductPoint& q);

nlohmann::json element_to_json(const GroupElement& g);
GroupElement element_from_json(const GroupPtr& group, const nlohmann::json& j);

}  // namespace sumsetlab
