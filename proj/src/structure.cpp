#include "sumsetlab/structure.hpp"

#include <algorithm>
#include <map>

namespace sumsetlab {

const ClosureTrace* StructureCertificate::trace() const {
  if (auto* s = std::get_if<IntStructured>(&value)) return &s->trace;
  if (auto* s = std::get_if<ProductStructured>(&value)) return &s->trace;
  return nullptr;
}

IntSet closure_step(const IntSet& x, const IntSet& a) {
  if (!x.is_subset_of(a)) {
    throw PreconditionError("closure seed " + x.to_string() + " is not contained in " + a.to_string());
  }
  const IntSet candidates = difference_set(sumset(x, x), x);
  std::vector<Int> kept;
  std::set_intersection(candidates.begin(), candidates.end(), a.begin(), a.end(), std::back_inserter(kept));
  // Non-empty: x + y - y = x keeps every element of X.
  return IntSet::from_sorted(std::move(kept));
}

ClosureTrace closure(const IntSet& x, const IntSet& a) {
  ClosureTrace trace{x, {}};
  IntSet current = closure_step(x, a);
  for (;;) {
    trace.iterates.push_back(current);
    if (trace.iterates.size() > a.size()) {
      throw InternalInvariantError("closure of " + x.to_string() + " in " + a.to_string() +
                                   " did not stabilize within |A| steps");
    }
    IntSet next = closure_step(current, a);
    if (next == current) break;
    current = std::move(next);
  }
  return trace;
}

StructureCertificate detect_structure(const IntSet& a) {
  if (a.size() < 2) {
    throw DegenerateInputError("structure detection needs |A| >= 2");
  }
  NotStructured failed;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (a[i + 1] != checked_add(a[i], 1)) continue;
    ClosureTrace trace = closure(IntSet::from_sorted({a[i], a[i + 1]}), a);
    if (trace.fixed_point() == a) {
      return StructureCertificate{IntStructured{std::move(trace)}};
    }
    failed.exhausted.push_back(std::move(trace));
  }
  return StructureCertificate{std::move(failed)};
}

StructureCertificate is_structured(const IntSet& a) {
  if (a.size() < 2) {
    throw DegenerateInputError("structure detection needs |A| >= 2");
  }
  if (!is_normalized(a)) {
    throw PreconditionError("structure detection expects a normalized set (min 0, gcd 1): " + a.to_string());
  }
  return detect_structure(a);
}

NormalizedStructure detect_structure_normalized(const IntSet& a) {
  Normalized n = normalize(a);
  StructureCertificate cert = is_structured(n.set);
  return NormalizedStructure{std::move(n), std::move(cert)};
}

IntSet first_projection(std::span<const ProductPoint> points) {
  if (points.empty()) {
    throw DegenerateInputError("empty point set");
  }
  std::vector<Int> firsts;
  firsts.reserve(points.size());
  for (const auto& p : points) firsts.push_back(p.a);
  IntSet projection(firsts);
  if (projection.size() != points.size()) {
    throw PreconditionError("first projection is not injective");
  }
  return projection;
}

namespace {

const GroupPtr& common_abelian_group(std::span<const ProductPoint> points) {
  const GroupPtr& group = points.front().x.group();
  for (const auto& p : points) group->require_member(p.x);
  if (!group->is_abelian()) {
    throw UnsupportedOperationError("componentwise sums need an abelian inner group, got " + group->name());
  }
  return group;
}

}  // namespace

AdditiveImplication check_additive_implication(std::span<const ProductPoint> points) {
  first_projection(points);
  const GroupPtr& group = common_abelian_group(points);

  // First pair seen for each first-coordinate sum, with its second-coordinate sum.
  struct Seen {
    std::size_t i, j;
    GroupElement sum;
  };
  std::map<Int, Seen> by_sum;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i; j < points.size(); ++j) {
      Int s = checked_add(points[i].a, points[j].a);
      GroupElement x = group->op(points[i].x, points[j].x);
      auto [it, inserted] = by_sum.try_emplace(s, Seen{i, j, x});
      if (!inserted && !(it->second.sum == x)) {
        return AdditiveImplication{false, std::array<std::size_t, 4>{it->second.i, it->second.j, i, j}};
      }
    }
  }
  return AdditiveImplication{};
}

bool affine_witness_reproduces(std::span<const ProductPoint> points, const GroupElement& x,
                               const GroupElement& y) {
  const GroupPtr& group = x.group();
  return std::all_of(points.begin(), points.end(), [&](const ProductPoint& p) {
    return group->op(group->power(x, p.a), y) == p.x;
  });
}

StructureCertificate recover_affine_witness(std::span<const ProductPoint> points) {
  const IntSet projection = first_projection(points);
  const GroupPtr& group = common_abelian_group(points);
  StructureCertificate projected = is_structured(projection);
  if (!projected.structured()) {
    throw PreconditionError("first projection " + projection.to_string() + " is not structured");
  }
  if (!check_additive_implication(points).holds) {
    throw PreconditionError("additive implication fails on the point set");
  }

  ClosureTrace trace = *projected.trace();
  const Int g = trace.seed.min();
  auto second_at = [&](Int a) -> const GroupElement& {
    return std::find_if(points.begin(), points.end(), [a](const ProductPoint& p) { return p.a == a; })->x;
  };
  const GroupElement& low = second_at(g);
  const GroupElement& high = second_at(checked_add(g, 1));
  // x_{g+1} - x_g = x  and  x_g - g x = y
  GroupElement x = group->op(high, group->inverse(low));
  GroupElement y = group->op(low, group->inverse(group->power(x, g)));

  StructureCertificate cert{ProductStructured{std::move(trace), x, y}};
  if (!affine_witness_reproduces(points, x, y)) {
    nlohmann::json dump = to_json(cert);
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) pts.push_back({p.a, element_to_json(p.x)});
    dump["points"] = pts;
    throw InternalInvariantError("affine witness does not reproduce the points: " + dump.dump());
  }
  return cert;
}

nlohmann::json to_json(const ClosureTrace& trace) {
  nlohmann::json iterates = nlohmann::json::array();
  for (const auto& it : trace.iterates) iterates.push_back(to_json(it));
  return {{"seed", to_json(trace.seed)},
          {"iterates", iterates},
          {"fixed_point", to_json(trace.fixed_point())},
          {"steps", trace.steps()}};
}

nlohmann::json to_json(const StructureCertificate& cert) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntStructured>) {
          return {{"variant", "int_structured"}, {"trace", to_json(v.trace)}};
        } else if constexpr (std::is_same_v<T, ProductStructured>) {
          return {{"variant", "product_structured"},
                  {"trace", to_json(v.trace)},
                  {"x", element_to_json(v.x)},
                  {"y", element_to_json(v.y)}};
        } else {
          nlohmann::json traces = nlohmann::json::array();
          for (const auto& t : v.exhausted) traces.push_back(to_json(t));
          return {{"variant", "not_structured"}, {"exhausted", traces}};
        }
      },
      cert.value);
}

std::string render_trace(const ClosureTrace& trace) {
  std::string s = trace.seed.to_string();
  for (const auto& it : trace.iterates) s += " -> " + it.to_string();
  return s;
}

}  // namespace sumsetlab
