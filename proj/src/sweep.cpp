#include "sumsetlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <ctime>
#include <exception>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "sumsetlab/core_sets.hpp"
#include "sumsetlab/nonabelian.hpp"
#include "sumsetlab/verify.hpp"

namespace sumsetlab {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kChunk = 1024;

// ---------------------------------------------------------------------------
// Deterministic per-instance randomness: instance i of a seeded family always
// sees the same stream, whatever worker handles it.

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform in [0, n). Rejection sampling on raw engine output, so the stream is
/// identical across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_mul_overflow(a, b, &r) ? UINT64_MAX : r;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw OverflowError("instance family too large to enumerate");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t checked_total(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("instance family too large to enumerate");
  return r;
}

/// Set {base} ∪ {offset + i : bit i of mask}.
IntSet set_from_mask(std::uint64_t mask, Int offset, std::optional<Int> base) {
  std::vector<Int> v;
  if (base) v.push_back(*base);
  for (Int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1) v.push_back(offset + i);
  }
  return IntSet::from_sorted(std::move(v));
}

void require_bits(Int n, const char* what) {
  if (n < 0 || n > 30) {
    throw PreconditionError(std::string(what) + " must lie in [0, 30] for exhaustive enumeration");
  }
}

void count_b_r(const VerificationReport& r, SweepCounts& c) {
  if (r.theorem == TheoremId::thm_1_balu && r.witness.is_object() && r.witness.contains("b_equals_R_minus_2") &&
      !r.witness["b_equals_R_minus_2"].get<bool>()) {
    ++c.b_r_mismatches;
  }
}

void tally(std::uint64_t index, VerificationReport r, SweepCounts& c, std::vector<IndexedReport>& out) {
  ++c.instances;
  count_b_r(r, c);
  if (r.hypothesis_met) {
    ++c.hypothesis_met;
    if (r.conclusion_holds == true) ++c.holds;
  } else {
    ++c.vacuous;
  }
  if (r.window_reading) {
    switch (*r.window_reading) {
      case WindowReading::literal: ++c.window_literal; break;
      case WindowReading::relaxed: ++c.window_relaxed; break;
      case WindowReading::neither: ++c.window_neither; break;
    }
  }
  if (r.counterexample()) {
    ++c.counterexamples;
    out.push_back(IndexedReport{index, std::move(r)});
  }
}

// ---------------------------------------------------------------------------
// Instance sources: random access by index so workers can split ranges.

class InstanceSource {
 public:
  virtual ~InstanceSource() = default;
  virtual std::uint64_t size() const = 0;
  virtual void check(std::uint64_t index, SweepCounts& counts, std::vector<IndexedReport>& out) const = 0;
};

class IntSetSource final : public InstanceSource {
 public:
  IntSetSource(TheoremId theorem, const NormalizedSetsFamily& f) : theorem_(theorem), raw_(f.raw) {
    require_bits(f.n_max, "n_max");
    std::size_t needed = theorem == TheoremId::thm_A_3k4 || theorem == TheoremId::cor_2_M1 ? 2 : 3;
    if (f.k_min < needed || f.k_min > f.k_max) {
      throw PreconditionError(std::string(theorem_name(theorem)) + " sweeps need " + std::to_string(needed) +
                              " <= k_min <= k_max");
    }
    if (f.raw) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (f.n_max + 1)); ++mask) {
        const auto k = static_cast<std::size_t>(std::popcount(mask));
        if (k >= f.k_min && k <= f.k_max) sets_.push_back(set_from_mask(mask, 0, std::nullopt));
      }
    } else {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.n_max); ++mask) {
        const auto k = static_cast<std::size_t>(std::popcount(mask)) + 1;
        if (k < f.k_min || k > f.k_max) continue;
        IntSet a = set_from_mask(mask, 1, 0);
        if (gcd_of_differences(a) == 1) sets_.push_back(std::move(a));
      }
    }
  }

  std::uint64_t size() const override { return sets_.size(); }

  void check(std::uint64_t index, SweepCounts& c, std::vector<IndexedReport>& out) const override {
    const IntSet& a = sets_[index];
    auto normal = [&] { return raw_ ? normalize(a).set : a; };
    switch (theorem_) {
      case TheoremId::thm_A_3k4: tally(index, verify_thm_A(a), c, out); break;
      case TheoremId::lemma_1_L4: tally(index, verify_lemma_1(a), c, out); break;
      case TheoremId::lemma_2_L2: tally(index, verify_lemma_2(normal()), c, out); break;
      case TheoremId::cor_1_M3: tally(index, verify_cor_1(normal()), c, out); break;
      case TheoremId::cor_2_M1: tally(index, verify_cor_2(a, a.max() + 1), c, out); break;
      default: throw PreconditionError("integer-set family does not apply to this theorem");
    }
  }

 private:
  TheoremId theorem_;
  bool raw_;
  std::vector<IntSet> sets_;
};

class IntervalSource final : public InstanceSource {
 public:
  explicit IntervalSource(const IntervalSubsetsFamily& f) {
    require_bits(f.n_max, "n_max");
    if (f.n_min < 2 || f.n_min > f.n_max) throw PreconditionError("interval family needs 2 <= n_min <= n_max");
    for (Int n = f.n_min; n <= f.n_max; ++n) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        instances_.emplace_back(set_from_mask(mask, 0, std::nullopt), n);
      }
    }
  }

  std::uint64_t size() const override { return instances_.size(); }

  void check(std::uint64_t index, SweepCounts& c, std::vector<IndexedReport>& out) const override {
    const auto& [a, n] = instances_[index];
    tally(index, verify_cor_2(a, n), c, out);
  }

 private:
  std::vector<std::pair<IntSet, Int>> instances_;
};

class SetPairsSource final : public InstanceSource {
 public:
  explicit SetPairsSource(const SetPairsFamily& f) : n_(f.n_max) {
    if (f.n_max < 0 || f.n_max > 15) throw PreconditionError("set-pair family needs 0 <= n_max <= 15");
  }

  std::uint64_t size() const override { return std::uint64_t{1} << (2 * n_); }

  void check(std::uint64_t index, SweepCounts& c, std::vector<IndexedReport>& out) const override {
    const std::uint64_t side = std::uint64_t{1} << n_;
    tally(index, verify_eq1(set_from_mask(index / side, 1, 0), set_from_mask(index % side, 1, 0)), c, out);
  }

 private:
  Int n_;
};

class ResiduePairsSource final : public InstanceSource {
 public:
  explicit ResiduePairsSource(const ResiduePairsFamily& f) : p_(f.p) {
    if (!is_prime(f.p)) throw UnsupportedOperationError("Cauchy-Davenport sweeps need a prime modulus");
    require_bits(f.p, "p");
    if (f.p > 15) throw PreconditionError("residue-pair family supports p <= 13");
  }

  std::uint64_t size() const override {
    const std::uint64_t side = (std::uint64_t{1} << p_) - 1;
    return side * side;
  }

  void check(std::uint64_t index, SweepCounts& c, std::vector<IndexedReport>& out) const override {
    const std::uint64_t side = (std::uint64_t{1} << p_) - 1;
    const IntSet a = set_from_mask(index / side + 1, 0, std::nullopt);
    const IntSet b = set_from_mask(index % side + 1, 0, std::nullopt);
    tally(index, verify_cauchy_davenport(p_, a, b), c, out);
  }

 private:
  Int p_;
};

class ProductSource final : public InstanceSource {
 public:
  ProductSource(TheoremId theorem, const ProductSetsFamily& f) : theorem_(theorem), family_(f) {
    if (!f.inner) throw PreconditionError("product family needs an inner group");
    if (!f.inner->is_abelian()) throw UnsupportedOperationError("product family needs an abelian inner group");
    const auto order = f.inner->order();
    if (!order) throw UnsupportedOperationError("product family needs a finite inner group");
    order_ = *order;
    require_bits(f.a_max, "a_max");
    if (f.k_min < 3 || f.k_min > f.k_max) throw PreconditionError("product family needs 3 <= k_min <= k_max");

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.a_max); ++mask) {
      const auto k = static_cast<std::size_t>(std::popcount(mask)) + 1;
      if (k < f.k_min || k > f.k_max) continue;
      IntSet a = set_from_mask(mask, 1, 0);
      if (gcd_of_differences(a) == 1) projections_.push_back(std::move(a));
    }

    for (std::size_t j = 0; j < projections_.size(); ++j) {
      std::uint64_t block = 1;
      for (std::size_t i = 0; i < projections_[j].size(); ++i) block = saturating_mul(block, order_);
      if (f.mode == SampleMode::exhaustive && block <= f.exhaustive_limit) {
        block_start_.push_back(exhaustive_total_);
        exhaustive_.push_back(j);
        exhaustive_total_ = checked_total(exhaustive_total_, block);
      } else {
        sampled_.push_back(j);
      }
    }
    random_count_ = sampled_.empty() ? 0 : f.count;
    if (!sampled_.empty() && (f.count == 0 || !f.seed)) {
      throw PreconditionError("product family needs --count and --seed for projections sampled at random");
    }
  }

  std::uint64_t size() const override { return exhaustive_total_ + random_count_; }

  void check(std::uint64_t index, SweepCounts& c, std::vector<IndexedReport>& out) const override {
    const std::vector<ProductPoint> points = instance(index);
    if (theorem_ == TheoremId::thm_1_balu) {
      tally(index, verify_thm_1(points), c, out);
      return;
    }
    VerificationReport r = verify_thm_2(points);
    const bool met = r.hypothesis_met;
    tally(index, std::move(r), c, out);
    if (met) {
      // thm_1 follows from thm_2, so its conclusion must hold here too.
      VerificationReport r1 = verify_thm_1(points);
      ++c.cross_checked;
      count_b_r(r1, c);
      if (r1.conclusion_holds != true) {
        ++c.cross_check_failures;
        ++c.counterexamples;
        out.push_back(IndexedReport{index, std::move(r1)});
      }
    }
  }

 private:
  std::vector<ProductPoint> instance(std::uint64_t index) const {
    std::vector<ProductPoint> points;
    if (index < exhaustive_total_) {
      const auto it = std::upper_bound(block_start_.begin(), block_start_.end(), index) - 1;
      const IntSet& a = projections_[exhaustive_[static_cast<std::size_t>(it - block_start_.begin())]];
      std::uint64_t local = index - *it;
      points.resize(a.size(), ProductPoint{0, family_.inner->identity()});
      for (std::size_t i = a.size(); i-- > 0;) {
        points[i] = ProductPoint{a[i], family_.inner->element_at(local % order_)};
        local /= order_;
      }
      return points;
    }
    auto rng = instance_rng(*family_.seed, index);
    const IntSet& a = projections_[sampled_[uniform_below(rng, sampled_.size())]];
    for (Int ai : a) points.push_back(ProductPoint{ai, family_.inner->element_at(uniform_below(rng, order_))});
    return points;
  }

  TheoremId theorem_;
  ProductSetsFamily family_;
  std::uint64_t order_ = 1;
  std::vector<IntSet> projections_;
  std::vector<std::size_t> exhaustive_;
  std::vector<std::uint64_t> block_start_;
  std::vector<std::size_t> sampled_;
  std::uint64_t exhaustive_total_ = 0;
  std::uint64_t random_count_ = 0;
};

class BoxSource final : public InstanceSource {
 public:
  BoxSource(TheoremId theorem, const BoxSubsetsFamily& f) : theorem_(theorem), family_(f) {
    if (!f.group) throw PreconditionError("box family needs a group");
    if (!f.group->is_ordered()) throw UnsupportedOperationError("box family needs an ordered group");
    if (f.radius < 0 || f.radius > 1000) throw PreconditionError("box radius must lie in [0, 1000]");
    const std::size_t min_k = theorem == TheoremId::thm_4_prem1 ? 3 : 1;
    if (f.k_min < min_k || f.k_min > f.k_max) {
      throw PreconditionError("box family needs " + std::to_string(min_k) + " <= k_min <= k_max");
    }

    const std::size_t arity = f.group->arity();
    const Int side = 2 * f.radius + 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < arity; ++i) count = saturating_mul(count, static_cast<std::uint64_t>(side));
    if (count > 10'000'000) throw PreconditionError("box too large");
    std::vector<Int> coords(arity, -f.radius);
    for (std::uint64_t n = 0; n < count; ++n) {
      box_.push_back(f.group->element(coords));
      for (std::size_t i = arity; i-- > 0;) {
        if (++coords[i] <= f.radius) break;
        coords[i] = -f.radius;
      }
    }
    if (f.k_max > box_.size()) throw PreconditionError("k_max exceeds the number of box elements");

    if (f.mode == SampleMode::exhaustive) {
      for (std::size_t k = f.k_min; k <= f.k_max; ++k) {
        block_start_.push_back(total_);
        total_ = checked_total(total_, binomial(box_.size(), k));
      }
    } else {
      if (!f.seed || f.count == 0) throw PreconditionError("random box family needs --count and --seed");
      total_ = f.count;
    }
  }

  std::uint64_t size() const override { return total_; }

  void check(std::uint64_t index, SweepCounts& c, std::vector<IndexedReport>& out) const override {
    const GroupSubset s(family_.group, instance(index));
    tally(index, theorem_ == TheoremId::thm_4_prem1 ? verify_theorem_prem1(s) : verify_theorem_prem(s), c, out);
  }

 private:
  std::vector<GroupElement> instance(std::uint64_t index) const {
    std::vector<GroupElement> out;
    const std::uint64_t n = box_.size();
    if (family_.mode == SampleMode::exhaustive) {
      const auto it = std::upper_bound(block_start_.begin(), block_start_.end(), index) - 1;
      const std::size_t k = family_.k_min + static_cast<std::size_t>(it - block_start_.begin());
      // Unrank the lexicographically `rank`-th k-combination of the box.
      std::uint64_t rank = index - *it;
      std::uint64_t next = 0;
      for (std::size_t pos = 0; pos < k; ++pos) {
        for (std::uint64_t c = next; c < n; ++c) {
          const std::uint64_t below = binomial(n - c - 1, k - pos - 1);
          if (rank < below) {
            out.push_back(box_[c]);
            next = c + 1;
            break;
          }
          rank -= below;
        }
      }
      return out;
    }
    auto rng = instance_rng(*family_.seed, index);
    const std::size_t k = family_.k_min + uniform_below(rng, family_.k_max - family_.k_min + 1);
    std::vector<std::uint64_t> picked;
    while (picked.size() < k) {
      const std::uint64_t c = uniform_below(rng, n);
      if (std::find(picked.begin(), picked.end(), c) == picked.end()) picked.push_back(c);
    }
    for (auto c : picked) out.push_back(box_[c]);
    return out;
  }

  TheoremId theorem_;
  BoxSubsetsFamily family_;
  std::vector<GroupElement> box_;
  std::vector<std::uint64_t> block_start_;
  std::uint64_t total_ = 0;
};

std::unique_ptr<InstanceSource> make_source(const SweepSpec& spec) {
  const TheoremId t = spec.theorem;
  auto mismatch = [&](const char* family) {
    return PreconditionError(std::string(family) + " family does not apply to " + std::string(theorem_name(t)));
  };
  return std::visit(
      [&](const auto& f) -> std::unique_ptr<InstanceSource> {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, NormalizedSetsFamily>) {
          if (t != TheoremId::thm_A_3k4 && t != TheoremId::lemma_1_L4 && t != TheoremId::lemma_2_L2 &&
              t != TheoremId::cor_1_M3 && t != TheoremId::cor_2_M1) {
            throw mismatch("normalized integer-set");
          }
          return std::make_unique<IntSetSource>(t, f);
        } else if constexpr (std::is_same_v<F, IntervalSubsetsFamily>) {
          if (t != TheoremId::cor_2_M1) throw mismatch("interval-subset");
          return std::make_unique<IntervalSource>(f);
        } else if constexpr (std::is_same_v<F, SetPairsFamily>) {
          if (t != TheoremId::eq1_lower_bound) throw mismatch("set-pair");
          return std::make_unique<SetPairsSource>(f);
        } else if constexpr (std::is_same_v<F, ResiduePairsFamily>) {
          if (t != TheoremId::cauchy_davenport) throw mismatch("residue-pair");
          return std::make_unique<ResiduePairsSource>(f);
        } else if constexpr (std::is_same_v<F, ProductSetsFamily>) {
          if (t != TheoremId::thm_1_balu && t != TheoremId::thm_2_structure) throw mismatch("product-set");
          return std::make_unique<ProductSource>(t, f);
        } else {
          if (t != TheoremId::thm_4_prem1 && t != TheoremId::thm_3_prem) throw mismatch("box-subset");
          return std::make_unique<BoxSource>(t, f);
        }
      },
      spec.family);
}

std::optional<std::uint64_t> family_seed(const SweepFamily& family) {
  if (auto* p = std::get_if<ProductSetsFamily>(&family)) return p->seed;
  if (auto* b = std::get_if<BoxSubsetsFamily>(&family)) return b->seed;
  return std::nullopt;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::json seed_json(const std::optional<std::uint64_t>& seed) {
  return seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
}

}  // namespace

SweepCounts& SweepCounts::operator+=(const SweepCounts& o) {
  instances += o.instances;
  hypothesis_met += o.hypothesis_met;
  holds += o.holds;
  vacuous += o.vacuous;
  counterexamples += o.counterexamples;
  window_literal += o.window_literal;
  window_relaxed += o.window_relaxed;
  window_neither += o.window_neither;
  cross_checked += o.cross_checked;
  cross_check_failures += o.cross_check_failures;
  b_r_mismatches += o.b_r_mismatches;
  return *this;
}

nlohmann::json to_json(const SweepFamily& family) {
  auto mode_name = [](SampleMode m) { return m == SampleMode::exhaustive ? "exhaustive" : "random"; };
  return std::visit(
      [&](const auto& f) -> nlohmann::json {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, NormalizedSetsFamily>) {
          return {{"kind", "normalized_int_sets"}, {"n_max", f.n_max}, {"k_min", f.k_min}, {"k_max", f.k_max},
                  {"raw", f.raw}};
        } else if constexpr (std::is_same_v<F, IntervalSubsetsFamily>) {
          return {{"kind", "interval_subsets"}, {"n_min", f.n_min}, {"n_max", f.n_max}};
        } else if constexpr (std::is_same_v<F, SetPairsFamily>) {
          return {{"kind", "set_pairs"}, {"n_max", f.n_max}};
        } else if constexpr (std::is_same_v<F, ResiduePairsFamily>) {
          return {{"kind", "residue_pairs"}, {"p", f.p}};
        } else if constexpr (std::is_same_v<F, ProductSetsFamily>) {
          return {{"kind", "product_sets"},
                  {"inner", f.inner ? f.inner->to_json() : nlohmann::json(nullptr)},
                  {"a_max", f.a_max},
                  {"k_min", f.k_min},
                  {"k_max", f.k_max},
                  {"mode", mode_name(f.mode)},
                  {"count", f.count},
                  {"seed", seed_json(f.seed)},
                  {"exhaustive_limit", f.exhaustive_limit}};
        } else {
          return {{"kind", "box_subsets"},
                  {"group", f.group ? f.group->to_json() : nlohmann::json(nullptr)},
                  {"radius", f.radius},
                  {"k_min", f.k_min},
                  {"k_max", f.k_max},
                  {"mode", mode_name(f.mode)},
                  {"count", f.count},
                  {"seed", seed_json(f.seed)}};
        }
      },
      family);
}

nlohmann::json SweepReport::to_json(bool include_timing) const {
  nlohmann::json c{{"instances", counts.instances},
                   {"hypothesis_met", counts.hypothesis_met},
                   {"holds", counts.holds},
                   {"vacuous", counts.vacuous},
                   {"counterexamples", counts.counterexamples}};
  if (theorem == TheoremId::thm_4_prem1) {
    c["window_readings"] = {{"literal", counts.window_literal},
                            {"relaxed", counts.window_relaxed},
                            {"neither", counts.window_neither}};
  }
  if (theorem == TheoremId::thm_1_balu || theorem == TheoremId::thm_2_structure) {
    c["b_r_mismatches"] = counts.b_r_mismatches;
  }
  if (theorem == TheoremId::thm_2_structure) {
    c["cross_checked_thm_1"] = counts.cross_checked;
    c["cross_check_failures"] = counts.cross_check_failures;
  }
  nlohmann::json ces = nlohmann::json::array();
  for (const auto& ce : counterexamples) {
    nlohmann::json j = ce.report.to_json(include_timing);
    j["index"] = ce.index;
    ces.push_back(std::move(j));
  }
  nlohmann::json j{{"schema_version", 1},
                   {"theorem", theorem_name(theorem)},
                   {"family", family},
                   {"seed", seed_json(seed)},
                   {"planned_instances", planned_instances},
                   {"complete", complete},
                   {"counts", c},
                   {"counterexamples", ces}};
  if (include_timing) {
    j["timing"] = {{"wall_time_ms", std::chrono::duration<double, std::milli>(wall_time).count()},
                   {"workers", workers},
                   {"timestamp", utc_timestamp()}};
  }
  return j;
}

std::string SweepReport::to_csv(bool include_timing) const {
  std::ostringstream os;
  os << "schema_version,theorem,family,seed,planned_instances,instances,hypothesis_met,holds,vacuous,"
        "counterexamples,complete,counterexample_instances";
  if (include_timing) os << ",wall_time_ms,workers";
  os << '\n';
  nlohmann::json instances = nlohmann::json::array();
  for (const auto& ce : counterexamples) instances.push_back(ce.report.instance);
  os << 1 << ',' << theorem_name(theorem) << ',' << csv_quote(family.dump()) << ','
     << (seed ? std::to_string(*seed) : std::string()) << ',' << planned_instances << ',' << counts.instances << ','
     << counts.hypothesis_met << ',' << counts.holds << ',' << counts.vacuous << ',' << counts.counterexamples << ','
     << (complete ? "true" : "false") << ',' << csv_quote(instances.dump());
  if (include_timing) {
    os << ',' << std::chrono::duration<double, std::milli>(wall_time).count() << ',' << workers;
  }
  os << '\n';
  return os.str();
}

unsigned default_workers() {
  if (const char* env = std::getenv("SUMSETLAB_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t planned_instances(const SweepSpec& spec) {
  const std::uint64_t n = make_source(spec)->size();
  return spec.max_instances ? std::min(n, spec.max_instances) : n;
}

SweepReport run_sweep(const SweepSpec& spec) {
  const auto start = Clock::now();
  const std::unique_ptr<InstanceSource> source = make_source(spec);
  const std::uint64_t available = source->size();
  const std::uint64_t planned = spec.max_instances ? std::min(available, spec.max_instances) : available;
  const unsigned workers = spec.workers ? spec.workers : default_workers();
  const std::optional<Clock::time_point> deadline =
      spec.time_limit ? std::optional<Clock::time_point>(start + *spec.time_limit) : std::nullopt;

  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<bool> timed_out{false};
  std::mutex merge_mutex;
  SweepCounts total;
  std::vector<IndexedReport> found;
  std::exception_ptr failure;
  SweepProgress progress{0, planned, 0};

  auto work = [&] {
    try {
      for (;;) {
        if (deadline && Clock::now() > *deadline) {
          timed_out = true;
          return;
        }
        const std::uint64_t begin = next_chunk.fetch_add(kChunk);
        if (begin >= planned) return;
        const std::uint64_t end = std::min(planned, begin + kChunk);
        SweepCounts local;
        std::vector<IndexedReport> local_found;
        for (std::uint64_t i = begin; i < end; ++i) source->check(i, local, local_found);

        std::lock_guard lock(merge_mutex);
        total += local;
        std::move(local_found.begin(), local_found.end(), std::back_inserter(found));
        progress.done += end - begin;
        progress.counterexamples = total.counterexamples;
        if (spec.on_progress) spec.on_progress(progress);
      }
    } catch (...) {
      std::lock_guard lock(merge_mutex);
      if (!failure) failure = std::current_exception();
      next_chunk = planned;
    }
  };

  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(found.begin(), found.end(), [](const IndexedReport& a, const IndexedReport& b) {
    return a.index != b.index ? a.index < b.index : a.report.theorem < b.report.theorem;
  });

  SweepReport report;
  report.theorem = spec.theorem;
  report.family = to_json(spec.family);
  report.seed = family_seed(spec.family);
  report.planned_instances = planned;
  report.complete = !timed_out && planned == available && total.instances == planned;
  report.counts = total;
  report.counterexamples = std::move(found);
  report.workers = workers;
  report.wall_time = Clock::now() - start;
  return report;
}

}  // namespace sumsetlab
