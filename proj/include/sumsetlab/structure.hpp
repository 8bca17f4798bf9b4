#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sumsetlab/core_sets.hpp"
#include "sumsetlab/groups.hpp"

namespace sumsetlab {

/// Iterates of X -> (X + X - X) ∩ A starting from a seed.
struct ClosureTrace {
  IntSet seed;
  /// X^(1), ..., X^(m), where X^(m) is the first iterate that the step maps to
  /// itself. Never empty.
  std::vector<IntSet> iterates;

  const IntSet& fixed_point() const { return iterates.back(); }
  std::size_t steps() const { return iterates.size(); }
};

struct IntStructured {
  ClosureTrace trace;
};

/// x_i = a_i * x + y for every point; coordinates refer to the normalized
/// first projection.
struct ProductStructured {
  ClosureTrace trace;
  GroupElement x;
  GroupElement y;
};

/// One trace per seed {g, g+1} tried, in seed order.
struct NotStructured {
  std::vector<ClosureTrace> exhausted;
};

struct StructureCertificate {
  std::variant<IntStructured, ProductStructured, NotStructured> value;

  bool structured() const { return !std::holds_alternative<NotStructured>(value); }
  /// The succeeding trace, or nullptr when not structured.
  const ClosureTrace* trace() const;
};

/// (X + X - X) ∩ A. Requires X ⊆ A.
IntSet closure_step(const IntSet& x, const IntSet& a);

/// Iterates closure_step to its fixed point. Stabilizes within |A| steps since
/// the step is extensive and bounded by A.
ClosureTrace closure(const IntSet& x, const IntSet& a);

/// The literal definition: A is structured if some {g, g+1} ⊆ A closes up to
/// all of A. Seeds are tried in increasing g; the first success wins.
StructureCertificate detect_structure(const IntSet& a);

/// detect_structure restricted to normalized sets (min 0, gcd 1).
StructureCertificate is_structured(const IntSet& a);

struct NormalizedStructure {
  Normalized normalization;
  StructureCertificate certificate;
};

/// Normalizes first; the certificate describes the normalized image.
NormalizedStructure detect_structure_normalized(const IntSet& a);

/// Projection to the first coordinate. Throws PreconditionError when two
/// points share a first coordinate.
IntSet first_projection(std::span<const ProductPoint> points);

struct AdditiveImplication {
  bool holds = true;
  /// Point indices (i, j, k, l) with a_i + a_j = a_k + a_l but
  /// x_i + x_j != x_k + x_l.
  std::optional<std::array<std::size_t, 4>> violation;
};

AdditiveImplication check_additive_implication(std::span<const ProductPoint> points);

/// True iff x_i = a_i * x + y for every point.
bool affine_witness_reproduces(std::span<const ProductPoint> points, const GroupElement& x,
                               const GroupElement& y);

/// Requires a normalized, structured first projection and the additive
/// implication. Solves x, y from the succeeding seed {g, g+1} and verifies the
/// witness on every point.
StructureCertificate recover_affine_witness(std::span<const ProductPoint> points);

nlohmann::json to_json(const ClosureTrace& trace);
nlohmann::json to_json(const StructureCertificate& cert);

/// "{0,1} -> {0,1,2} -> {0,1,2,4}"
std::string render_trace(const ClosureTrace& trace);

}  // namespace sumsetlab
