#include "sumsetlab/groups.hpp"

#include <algorithm>
#include <sstream>

namespace sumsetlab {

namespace {

void require_positive_modulus(Int n) {
  if (n < 1) {
    throw MalformedInputError("modulus must be positive, got " + std::to_string(n));
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Int parse_int(const std::string& s) {
  std::size_t used = 0;
  Int v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw MalformedInputError("not an integer: '" + s + "'");
  }
  if (used != s.size()) {
    throw MalformedInputError("not an integer: '" + s + "'");
  }
  return v;
}

}  // namespace

std::string GroupElement::to_string() const {
  if (coords_.size() == 1) return std::to_string(coords_[0]);
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ']';
  return os.str();
}

bool operator==(const GroupElement& g, const GroupElement& h) {
  return g.coords_ == h.coords_ && same_group(g.group_, h.group_);
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const {
  std::size_t seed = g.coords().size();
  for (Int c : g.coords()) {
    seed ^= std::hash<Int>{}(c) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}

bool CoordinateLess::operator()(const GroupElement& g, const GroupElement& h) const {
  auto a = g.coords();
  auto b = h.coords();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

GroupPtr GroupSpec::cyclic(Int n) {
  require_positive_modulus(n);
  return GroupPtr(new GroupSpec(GroupKind::cyclic, {n}, nullptr));
}

GroupPtr GroupSpec::direct_sum(std::vector<Int> moduli) {
  if (moduli.empty()) {
    throw MalformedInputError("direct sum needs at least one modulus");
  }
  for (Int n : moduli) require_positive_modulus(n);
  return GroupPtr(new GroupSpec(GroupKind::direct_sum, std::move(moduli), nullptr));
}

GroupPtr GroupSpec::lattice(std::size_t d) {
  if (d == 0) {
    throw MalformedInputError("lattice dimension must be positive");
  }
  return GroupPtr(new GroupSpec(GroupKind::lattice, {static_cast<Int>(d)}, nullptr));
}

GroupPtr GroupSpec::heisenberg() { return GroupPtr(new GroupSpec(GroupKind::heisenberg, {}, nullptr)); }

GroupPtr GroupSpec::product(GroupPtr inner) {
  if (!inner) {
    throw MalformedInputError("product needs an inner group");
  }
  return GroupPtr(new GroupSpec(GroupKind::product, {}, std::move(inner)));
}

std::size_t GroupSpec::arity() const {
  switch (kind_) {
    case GroupKind::cyclic: return 1;
    case GroupKind::direct_sum: return params_.size();
    case GroupKind::lattice: return static_cast<std::size_t>(params_[0]);
    case GroupKind::heisenberg: return 3;
    case GroupKind::product: return 1 + inner_->arity();
  }
  return 0;
}

bool GroupSpec::is_abelian() const {
  switch (kind_) {
    case GroupKind::heisenberg: return false;
    case GroupKind::product: return inner_->is_abelian();
    default: return true;
  }
}

bool GroupSpec::is_ordered() const {
  switch (kind_) {
    case GroupKind::lattice:
    case GroupKind::heisenberg: return true;
    case GroupKind::product: return inner_->is_ordered();
    default: return false;
  }
}

std::optional<std::uint64_t> GroupSpec::order() const {
  if (kind_ != GroupKind::cyclic && kind_ != GroupKind::direct_sum) return std::nullopt;
  std::uint64_t n = 1;
  for (Int m : params_) {
    if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(m), &n)) {
      throw OverflowError("group order exceeds 64 bits");
    }
  }
  return n;
}

GroupElement GroupSpec::make(std::vector<Int> coords) const {
  return GroupElement(shared_from_this(), std::move(coords));
}

GroupElement GroupSpec::element(std::vector<Int> coords) const {
  if (coords.size() != arity()) {
    throw MalformedInputError("group " + name() + " expects " + std::to_string(arity()) +
                              " coordinates, got " + std::to_string(coords.size()));
  }
  canonicalize(coords);
  return make(std::move(coords));
}

GroupElement GroupSpec::identity() const { return make(std::vector<Int>(arity(), 0)); }

GroupElement GroupSpec::element_at(std::uint64_t index) const {
  auto n = order();
  if (!n) {
    throw UnsupportedOperationError("element_at needs a finite group, got " + name());
  }
  if (index >= *n) {
    throw PreconditionError("element index out of range");
  }
  std::vector<Int> coords(params_.size());
  for (std::size_t i = params_.size(); i-- > 0;) {
    auto m = static_cast<std::uint64_t>(params_[i]);
    coords[i] = static_cast<Int>(index % m);
    index /= m;
  }
  return make(std::move(coords));
}

void GroupSpec::canonicalize(std::span<Int> c) const {
  switch (kind_) {
    case GroupKind::cyclic:
    case GroupKind::direct_sum:
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c[i], params_[i]);
      break;
    case GroupKind::product: inner_->canonicalize(c.subspan(1)); break;
    default: break;
  }
}

void GroupSpec::op_into(std::span<const Int> g, std::span<const Int> h, std::span<Int> out) const {
  switch (kind_) {
    case GroupKind::cyclic:
    case GroupKind::direct_sum:
      for (std::size_t i = 0; i < g.size(); ++i) {
        Int n = params_[i];
        out[i] = g[i] >= n - h[i] ? g[i] - (n - h[i]) : g[i] + h[i];
      }
      break;
    case GroupKind::lattice:
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = checked_add(g[i], h[i]);
      break;
    case GroupKind::heisenberg: {
      Int c = checked_add(checked_add(g[2], h[2]), checked_mul(g[0], h[1]));
      out[0] = checked_add(g[0], h[0]);
      out[1] = checked_add(g[1], h[1]);
      out[2] = c;
      break;
    }
    case GroupKind::product:
      out[0] = checked_add(g[0], h[0]);
      inner_->op_into(g.subspan(1), h.subspan(1), out.subspan(1));
      break;
  }
}

void GroupSpec::inverse_into(std::span<const Int> g, std::span<Int> out) const {
  switch (kind_) {
    case GroupKind::cyclic:
    case GroupKind::direct_sum:
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i] == 0 ? 0 : params_[i] - g[i];
      break;
    case GroupKind::lattice:
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = checked_neg(g[i]);
      break;
    case GroupKind::heisenberg: {
      // (a,b,c)^-1 = (-a, -b, ab - c)
      Int c = checked_sub(checked_mul(g[0], g[1]), g[2]);
      out[0] = checked_neg(g[0]);
      out[1] = checked_neg(g[1]);
      out[2] = c;
      break;
    }
    case GroupKind::product:
      out[0] = checked_neg(g[0]);
      inner_->inverse_into(g.subspan(1), out.subspan(1));
      break;
  }
}

std::strong_ordering GroupSpec::compare_coords(std::span<const Int> g, std::span<const Int> h) const {
  switch (kind_) {
    case GroupKind::lattice:
    case GroupKind::heisenberg:
      return std::lexicographical_compare_three_way(g.begin(), g.end(), h.begin(), h.end());
    case GroupKind::product:
      if (auto c = g[0] <=> h[0]; c != 0) return c;
      return inner_->compare_coords(g.subspan(1), h.subspan(1));
    default:
      throw UnsupportedOperationError("group " + name() + " carries no bi-invariant order");
  }
}

void GroupSpec::require_member(const GroupElement& g) const {
  if (g.group().get() == this) return;
  if (!g.group() || !(*g.group() == *this)) {
    throw TypeConfusionError("element " + g.to_string() + " of " +
                             (g.group() ? g.group()->name() : std::string("<none>")) +
                             " used in " + name());
  }
}

GroupElement GroupSpec::op(const GroupElement& g, const GroupElement& h) const {
  require_member(g);
  require_member(h);
  std::vector<Int> out(arity());
  op_into(g.coords(), h.coords(), out);
  return make(std::move(out));
}

GroupElement GroupSpec::inverse(const GroupElement& g) const {
  require_member(g);
  std::vector<Int> out(arity());
  inverse_into(g.coords(), out);
  return make(std::move(out));
}

GroupElement GroupSpec::power(const GroupElement& g, Int t) const {
  require_member(g);
  GroupElement base = t < 0 ? inverse(g) : g;
  Int e = t < 0 ? checked_neg(t) : t;
  GroupElement result = identity();
  while (e > 0) {
    if (e & 1) result = op(result, base);
    e >>= 1;
    if (e > 0) base = op(base, base);
  }
  return result;
}

std::strong_ordering GroupSpec::compare(const GroupElement& g, const GroupElement& h) const {
  require_member(g);
  require_member(h);
  return compare_coords(g.coords(), h.coords());
}

bool GroupSpec::commutes(const GroupElement& g, const GroupElement& h) const {
  if (is_abelian()) {
    require_member(g);
    require_member(h);
    return true;
  }
  return op(g, h) == op(h, g);
}

std::string GroupSpec::name() const {
  switch (kind_) {
    case GroupKind::cyclic: return "cyclic:" + std::to_string(params_[0]);
    case GroupKind::direct_sum: {
      std::string s = "direct_sum:";
      for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(params_[i]);
      }
      return s;
    }
    case GroupKind::lattice: return "lattice:" + std::to_string(params_[0]);
    case GroupKind::heisenberg: return "heisenberg";
    case GroupKind::product: return "product:" + inner_->name();
  }
  return "";
}

nlohmann::json GroupSpec::to_json() const {
  switch (kind_) {
    case GroupKind::cyclic: return {{"kind", "cyclic"}, {"n", params_[0]}};
    case GroupKind::direct_sum: return {{"kind", "direct_sum"}, {"moduli", params_}};
    case GroupKind::lattice: return {{"kind", "lattice"}, {"d", params_[0]}};
    case GroupKind::heisenberg: return {{"kind", "heisenberg"}};
    case GroupKind::product: return {{"kind", "product"}, {"inner", inner_->to_json()}};
  }
  return {};
}

GroupPtr GroupSpec::from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") return cyclic(j.at("n").get<Int>());
    if (kind == "direct_sum") return direct_sum(j.at("moduli").get<std::vector<Int>>());
    if (kind == "lattice") {
      Int d = j.at("d").get<Int>();
      if (d < 1) throw MalformedInputError("lattice dimension must be positive");
      return lattice(static_cast<std::size_t>(d));
    }
    if (kind == "heisenberg") return heisenberg();
    if (kind == "product") return product(from_json(j.at("inner")));
    throw MalformedInputError("unknown group kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInputError(std::string("bad group spec: ") + e.what());
  }
}

GroupPtr GroupSpec::parse(const std::string& text) {
  const std::string s = trim(text);
  if (!s.empty() && s.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      throw MalformedInputError(std::string("bad group JSON: ") + e.what());
    }
    return from_json(j);
  }
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (head == "heisenberg" && rest.empty()) return heisenberg();
  if (head == "cyclic") return cyclic(parse_int(rest));
  if (head == "lattice") {
    Int d = parse_int(rest);
    if (d < 1) throw MalformedInputError("lattice dimension must be positive");
    return lattice(static_cast<std::size_t>(d));
  }
  if (head == "direct_sum") {
    std::vector<Int> moduli;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) moduli.push_back(parse_int(trim(item)));
    return direct_sum(std::move(moduli));
  }
  if (head == "product" && !rest.empty()) return product(parse(rest));
  throw MalformedInputError("unknown group '" + s + "'");
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  if (&a == &b) return true;
  if (a.kind_ != b.kind_ || a.params_ != b.params_) return false;
  if (a.kind_ == GroupKind::product) return *a.inner_ == *b.inner_;
  return true;
}

bool same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

GroupElement op(const GroupElement& g, const GroupElement& h) { return g.group()->op(g, h); }
GroupElement inverse(const GroupElement& g) { return g.group()->inverse(g); }
std::strong_ordering compare(const GroupElement& g, const GroupElement& h) {
  return g.group()->compare(g, h);
}
bool commutes(const GroupElement& g, const GroupElement& h) { return g.group()->commutes(g, h); }

std::string ProductPoint::to_string() const { return "(" + std::to_string(a) + "," + x.to_string() + ")"; }

ProductPoint product_point_add(const ProductPoint& p, const ProductPoint& q) {
  const auto& group = p.x.group();
  if (!group->is_abelian()) {
    throw UnsupportedOperationError("componentwise sums need an abelian inner group, got " + group->name());
  }
  return ProductPoint{checked_add(p.a, q.a), group->op(p.x, q.x)};
}

nlohmann::json element_to_json(const GroupElement& g) {
  return nlohmann::json(std::vector<Int>(g.coords().begin(), g.coords().end()));
}

GroupElement element_from_json(const GroupPtr& group, const nlohmann::json& j) {
  try {
    if (j.is_number_integer()) return group->element({j.get<Int>()});
    return group->element(j.get<std::vector<Int>>());
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInputError(std::string("bad group element: ") + e.what());
  }
}

}  // namespace sumsetlab
