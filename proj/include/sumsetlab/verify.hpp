#pragma once

#include <span>
#include <vector>

#include "json.hpp"
#include "sumsetlab/core_sets.hpp"
#include "sumsetlab/groups.hpp"
#include "sumsetlab/nonabelian.hpp"
#include "sumsetlab/report.hpp"

namespace sumsetlab {

/// |A+B| >= |A|+|B|-1, with equality exactly for AP pairs sharing a difference.
VerificationReport verify_eq1(const IntSet& a, const IntSet& b);

/// |A+B| >= min(p, |A|+|B|-1) in Z/pZ. A and B hold residues in [0, p).
VerificationReport verify_cauchy_davenport(Int p, const IntSet& a, const IntSet& b);

/// |A+A| = 2k-1+b <= 3k-4 implies A lies in an AP of length k+b.
VerificationReport verify_thm_A(const IntSet& a);

/// If a_{k-1}, a_k are not successive in any AP containing A, then
/// |A+A| >= |B+B|+3 for B = A minus its maximum. They are successive in some
/// containing AP iff a_k - a_{k-1} equals the gcd of all differences.
VerificationReport verify_lemma_1(const IntSet& a);

/// |A+A| >= 2k+R-3 for normalized A.
VerificationReport verify_lemma_2(const IntSet& a);

/// Z x G: |A+A| <= 3k-4 implies the points lie on an AP of Z x G of length
/// k+b governed by an affine witness. Whether b = R-2 is reported in the
/// witness as "b_equals_R_minus_2" and does not affect the verdict.
VerificationReport verify_thm_1(std::span<const ProductPoint> points);

/// Z x G: |A+A| <= 3k-4 implies the normalized first projection is
/// structured and an affine witness reproduces every point.
VerificationReport verify_thm_2(std::span<const ProductPoint> points);

/// Normalized A that is not structured has |A+A| > 3k-4.
VerificationReport verify_cor_1(const IntSet& a);

/// A ⊆ [0, N-1] with |A| >= 2N/3 + 1 is structured (literal definition, no
/// normalization). The bound is compared exactly as 3(|A|-1) >= 2N.
VerificationReport verify_cor_2(const IntSet& a, Int n);

bool is_prime(Int p);

/// Re-runs a checker from a serialized instance alone.
VerificationReport reverify(TheoremId theorem, const nlohmann::json& instance);
/// Same, from a serialized report ({"theorem": ..., "instance": ...}).
VerificationReport reverify(const nlohmann::json& report);

nlohmann::json points_to_json(std::span<const ProductPoint> points);
std::vector<ProductPoint> points_from_json(const GroupPtr& inner, const nlohmann::json& j);

}  // namespace sumsetlab
