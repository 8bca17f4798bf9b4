#include "sumsetlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumsetlab/structure.hpp"
#include "sumsetlab/sweep.hpp"
#include "sumsetlab/verify.hpp"

namespace sumsetlab::cli {

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Int parse_int(const std::string& token) {
  const std::string s = strip(token);
  std::size_t used = 0;
  Int v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw MalformedInputError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw MalformedInputError("not an integer: '" + s + "'");
  return v;
}

nlohmann::json parse_json(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInputError(std::string("bad ") + what + " JSON: " + e.what());
  }
}

std::string join(const std::vector<GroupElement>& elems) {
  std::string s = "{";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) s += ", ";
    s += elems[i].to_string();
  }
  return s + "}";
}

void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

// --- sumset ----------------------------------------------------------------

struct SumsetArgs {
  std::string set, set2, group, format = "pretty";
  bool square = false;
};

int cmd_sumset(const SumsetArgs& a, std::ostream& out) {
  if (!a.group.empty()) {
    const GroupPtr group = GroupSpec::parse(a.group);
    const GroupSubset s = parse_group_subset(group, a.set);
    const GroupSubset t = a.set2.empty() ? s : parse_group_subset(group, a.set2);
    const GroupSubset st = product_set(s, t);
    if (a.format == "json") {
      print_json(out, {{"group", group->to_json()}, {"product_set", st.to_json()}, {"size", st.size()}});
    } else {
      out << "S*T = " << join({st.begin(), st.end()}) << '\n' << "|S*T| = " << st.size() << '\n';
    }
    return kOk;
  }

  const IntSet A = parse_int_set(a.set);
  const IntSet B = a.set2.empty() ? A : parse_int_set(a.set2);
  const IntSet sum = sumset(A, B);
  nlohmann::json j{{"sumset", to_json(sum)}, {"size", sum.size()}};
  std::optional<SumsetStats> st;
  std::optional<NormalizationMap> map;
  if (a.set2.empty() && A.size() >= 2) {
    Normalized n = normalize(A);
    st = stats(n.set);
    if (!(n.map == NormalizationMap{})) map = n.map;
    j["stats"] = to_json(*st);
    if (map) j["normalization"] = to_json(*map);
  }
  if (a.format == "json") {
    print_json(out, j);
    return kOk;
  }
  out << (a.set2.empty() ? "A+A = " : "A+B = ") << sum.to_string() << '\n';
  out << "size = " << sum.size() << '\n';
  if (st) {
    out << "k=" << st->k << " b=" << st->b << " R=" << st->R << " doubling=" << st->doubling.to_string();
    if (map) out << " (after normalization shift=" << map->shift << " scale=" << map->scale << ")";
    out << '\n';
  }
  return kOk;
}

// --- detect ----------------------------------------------------------------

struct DetectArgs {
  std::string set, group, inner, points, format = "pretty";
  bool product = false;
};

int cmd_detect(const DetectArgs& a, std::ostream& out) {
  const bool json = a.format == "json";
  if (a.product || !a.points.empty()) {
    if (a.inner.empty() || a.points.empty()) throw MalformedInputError("--product needs --inner and --points");
    const GroupPtr inner = GroupSpec::parse(a.inner);
    const std::vector<ProductPoint> points = parse_points(inner, a.points);
    const Normalized n = normalize(first_projection(points));
    std::vector<ProductPoint> normalized;
    for (const auto& p : points) normalized.push_back(ProductPoint{n.map.apply(p.a), p.x});
    const StructureCertificate projected = is_structured(n.set);
    const AdditiveImplication implication = check_additive_implication(normalized);
    nlohmann::json j{{"normalization", to_json(n.map)}, {"projection", to_json(projected)}};
    if (implication.violation) j["violation"] = *implication.violation;
    int code = kNegative;
    if (projected.structured() && implication.holds) {
      const StructureCertificate cert = recover_affine_witness(normalized);
      j["certificate"] = to_json(cert);
      const auto& w = std::get<ProductStructured>(cert.value);
      if (!json) {
        out << "structured via seed " << w.trace.seed.to_string() << '\n'
            << "  " << render_trace(w.trace) << '\n'
            << "witness x=" << w.x.to_string() << " y=" << w.y.to_string() << '\n';
      }
      code = kOk;
    } else if (!json) {
      out << "not structured: "
          << (projected.structured() ? "additive implication fails" : "first projection not structured") << '\n';
    }
    j["structured"] = code == kOk;
    if (json) print_json(out, j);
    return code;
  }

  if (!a.group.empty()) {
    const GroupPtr group = GroupSpec::parse(a.group);
    const GroupSubset s = parse_group_subset(group, a.set);
    const auto cert = is_weakly_structured(s);
    if (json) {
      print_json(out, {{"weakly_structured", cert.has_value()},
                       {"certificate", cert ? to_json(*cert) : nlohmann::json(nullptr)}});
    } else if (cert) {
      out << "weakly structured: x=" << cert->x.to_string() << " y=" << cert->y.to_string() << '\n';
      for (const auto& [g, t] : cert->exponents) out << "  " << g.to_string() << " = y x^" << t << '\n';
    } else {
      out << "not weakly structured\n";
    }
    return cert ? kOk : kNegative;
  }

  const IntSet A = parse_int_set(a.set);
  const NormalizedStructure result = detect_structure_normalized(A);
  const StructureCertificate& cert = result.certificate;
  if (json) {
    print_json(out, {{"structured", cert.structured()},
                     {"normalization", to_json(result.normalization.map)},
                     {"certificate", to_json(cert)}});
  } else if (cert.structured()) {
    out << "structured via seed " << cert.trace()->seed.to_string() << '\n'
        << "  " << render_trace(*cert.trace()) << '\n';
  } else {
    out << "not structured; seeds tried:\n";
    for (const auto& t : std::get<NotStructured>(cert.value).exhausted) out << "  " << render_trace(t) << '\n';
  }
  return cert.structured() ? kOk : kNegative;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string theorem, set, set2, inner, points, group, instance, format = "pretty";
  std::optional<Int> p, n;
  bool no_timing = false;
};

nlohmann::json build_instance(TheoremId id, const VerifyArgs& a) {
  if (!a.instance.empty()) return parse_json(a.instance, "instance");
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw MalformedInputError(std::string("missing ") + flag);
    return v;
  };
  switch (id) {
    case TheoremId::eq1_lower_bound: {
      const IntSet A = parse_int_set(need(a.set, "--set"));
      return {{"A", to_json(A)}, {"B", to_json(a.set2.empty() ? A : parse_int_set(a.set2))}};
    }
    case TheoremId::cauchy_davenport: {
      if (!a.p) throw MalformedInputError("missing --p");
      const IntSet A = parse_int_set(need(a.set, "--set"));
      return {{"p", *a.p}, {"A", to_json(A)}, {"B", to_json(a.set2.empty() ? A : parse_int_set(a.set2))}};
    }
    case TheoremId::cor_2_M1: {
      const IntSet A = parse_int_set(need(a.set, "--set"));
      return {{"set", to_json(A)}, {"N", a.n ? *a.n : A.max() + 1}};
    }
    case TheoremId::thm_1_balu:
    case TheoremId::thm_2_structure: {
      const GroupPtr inner = GroupSpec::parse(need(a.inner, "--inner"));
      return {{"inner", inner->to_json()}, {"points", points_to_json(parse_points(inner, need(a.points, "--points")))}};
    }
    case TheoremId::thm_4_prem1:
    case TheoremId::thm_3_prem: {
      const GroupPtr group = GroupSpec::parse(need(a.group, "--group"));
      return {{"group", group->to_json()}, {"set", parse_group_subset(group, need(a.set, "--set")).to_json()}};
    }
    default: return {{"set", to_json(parse_int_set(need(a.set, "--set")))}};
  }
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const TheoremId id = parse_theorem(a.theorem);
  const VerificationReport r = reverify(id, build_instance(id, a));
  if (a.format == "json") {
    print_json(out, r.to_json(!a.no_timing));
  } else {
    out << "theorem: " << theorem_name(r.theorem) << '\n'
        << "instance: " << r.instance.dump() << '\n'
        << "verdict: "
        << (r.counterexample() ? "COUNTEREXAMPLE" : r.hypothesis_met ? "holds" : "vacuous (hypothesis not met)")
        << '\n'
        << "detail: " << r.detail << '\n';
    if (r.window_reading) out << "window reading: " << window_reading_name(*r.window_reading) << '\n';
    if (!r.witness.is_null()) out << "witness: " << r.witness.dump() << '\n';
  }
  return r.counterexample() ? kNegative : kOk;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string theorem, family, inner = "cyclic:2", group = "heisenberg", mode = "exhaustive", format = "json", out;
  std::optional<Int> nmax, nmin, kmin, kmax, amax, box, p;
  std::optional<std::uint64_t> count, seed, max_instances, time_limit_ms, exhaustive_limit;
  unsigned workers = 0;
  bool raw = false, progress = false, no_timing = false;
};

SampleMode parse_mode(const std::string& m) {
  if (m == "exhaustive") return SampleMode::exhaustive;
  if (m == "random") return SampleMode::random;
  throw MalformedInputError("--mode must be exhaustive or random");
}

std::size_t as_size(std::optional<Int> v, std::size_t fallback) {
  if (!v) return fallback;
  if (*v < 0) throw MalformedInputError("sizes must be non-negative");
  return static_cast<std::size_t>(*v);
}

SweepSpec build_sweep(const SweepArgs& a) {
  SweepSpec spec;
  spec.theorem = parse_theorem(a.theorem);
  const SampleMode mode = parse_mode(a.mode);
  if (mode == SampleMode::random && !a.seed) {
    throw MalformedInputError("--seed is required with --mode random");
  }
  switch (spec.theorem) {
    case TheoremId::eq1_lower_bound: spec.family = SetPairsFamily{a.nmax.value_or(6)}; break;
    case TheoremId::cauchy_davenport: spec.family = ResiduePairsFamily{a.p.value_or(7)}; break;
    case TheoremId::thm_1_balu:
    case TheoremId::thm_2_structure: {
      ProductSetsFamily f;
      f.inner = GroupSpec::parse(a.inner);
      f.a_max = a.amax.value_or(8);
      f.k_min = as_size(a.kmin, 3);
      f.k_max = as_size(a.kmax, 5);
      f.mode = mode;
      f.count = a.count.value_or(0);
      f.seed = a.seed;
      f.exhaustive_limit = a.exhaustive_limit.value_or(1'000'000);
      spec.family = f;
      break;
    }
    case TheoremId::thm_4_prem1:
    case TheoremId::thm_3_prem: {
      BoxSubsetsFamily f;
      f.group = GroupSpec::parse(a.group);
      f.radius = a.box.value_or(1);
      f.k_min = as_size(a.kmin, 3);
      f.k_max = as_size(a.kmax, f.k_min);
      f.mode = mode;
      f.count = a.count.value_or(0);
      f.seed = a.seed;
      spec.family = f;
      break;
    }
    case TheoremId::cor_2_M1:
      if (a.family != "normalized") {
        spec.family = IntervalSubsetsFamily{a.nmin.value_or(2), a.nmax.value_or(12)};
        break;
      }
      [[fallthrough]];
    default:
      spec.family =
          NormalizedSetsFamily{a.nmax.value_or(12), as_size(a.kmin, 3), as_size(a.kmax, 7), a.raw};
      break;
  }
  spec.workers = a.workers;
  spec.max_instances = a.max_instances.value_or(0);
  if (a.time_limit_ms) spec.time_limit = std::chrono::milliseconds(*a.time_limit_ms);
  return spec;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  SweepSpec spec = build_sweep(a);

  std::unique_ptr<std::ofstream> stream;
  if (!a.out.empty()) {
    stream = std::make_unique<std::ofstream>(a.out + ".progress.jsonl");
  }
  if (stream || a.progress) {
    const std::string theorem(theorem_name(spec.theorem));
    spec.on_progress = [&, theorem](const SweepProgress& p) {
      const std::string line = nlohmann::json{{"theorem", theorem},
                                              {"done", p.done},
                                              {"planned", p.planned},
                                              {"counterexamples", p.counterexamples}}
                                   .dump();
      if (stream) *stream << line << std::endl;
      if (a.progress) err << line << '\n';
    };
  }

  const SweepReport report = run_sweep(spec);
  std::ostringstream rendered;
  if (a.format == "csv") {
    rendered << report.to_csv(!a.no_timing);
  } else if (a.format == "pretty") {
    rendered << "theorem: " << theorem_name(report.theorem) << '\n'
             << "family: " << report.family.dump() << '\n'
             << "instances: " << report.counts.instances << " of " << report.planned_instances
             << (report.complete ? "" : " (incomplete)") << '\n'
             << "hypothesis met: " << report.counts.hypothesis_met << ", holds: " << report.counts.holds
             << ", vacuous: " << report.counts.vacuous << '\n'
             << "counterexamples: " << report.counts.counterexamples << '\n';
    if (report.theorem == TheoremId::thm_1_balu || report.theorem == TheoremId::thm_2_structure) {
      rendered << "b = R-2 mismatches: " << report.counts.b_r_mismatches << '\n';
    }
    if (report.theorem == TheoremId::thm_4_prem1) {
      rendered << "window readings: literal " << report.counts.window_literal << ", relaxed "
               << report.counts.window_relaxed << ", neither " << report.counts.window_neither << '\n';
    }
  } else {
    rendered << report.to_json(!a.no_timing).dump(2) << '\n';
  }

  if (a.out.empty()) {
    out << rendered.str();
  } else {
    std::ofstream file(a.out);
    if (!file) throw MalformedInputError("cannot write " + a.out);
    file << rendered.str();
  }
  if (report.counts.counterexamples > 0) return kNegative;
  if (!report.complete) return kIncomplete;
  return kOk;
}

}  // namespace

IntSet parse_int_set(const std::string& text) {
  std::string s = strip(text);
  if (s.size() >= 2 && ((s.front() == '{' && s.back() == '}') || (s.front() == '[' && s.back() == ']'))) {
    s = s.substr(1, s.size() - 2);
  }
  std::vector<Int> values;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_int(item));
  if (values.empty()) throw MalformedInputError("empty set literal");
  return IntSet(std::move(values));
}

std::vector<ProductPoint> parse_points(const GroupPtr& inner, const std::string& text) {
  const std::string s = strip(text);
  if (!s.empty() && s.front() == '[') return points_from_json(inner, parse_json(s, "points"));
  std::vector<ProductPoint> points;
  std::size_t pos = 0;
  while ((pos = s.find('(', pos)) != std::string::npos) {
    const std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw MalformedInputError("unbalanced parenthesis in points");
    std::string body = s.substr(pos + 1, close - pos - 1);
    for (char& ch : body) {
      if (ch == '[' || ch == ']') ch = ' ';
    }
    std::vector<Int> values;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_int(item));
    if (values.size() < 2) throw MalformedInputError("point needs (a, x): '" + body + "'");
    points.push_back(ProductPoint{values[0], inner->element(std::vector<Int>(values.begin() + 1, values.end()))});
    pos = close + 1;
  }
  if (points.empty()) throw MalformedInputError("no points in '" + s + "'");
  return points;
}

GroupSubset parse_group_subset(const GroupPtr& group, const std::string& text) {
  return GroupSubset::from_json(group, parse_json(text, "group subset"));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sumset arithmetic, structure detection and theorem sweeps", "sumsetlab"};
  app.require_subcommand(1);

  SumsetArgs sa;
  auto* sumset_cmd = app.add_subcommand("sumset", "Print A+A (or A+B, or S*S in a group) and sumset statistics");
  sumset_cmd->add_option("--set", sa.set, "Set literal: 0,1,3 or JSON coordinates with --group")->required();
  sumset_cmd->add_option("--set2", sa.set2, "Second set B");
  sumset_cmd->add_option("--group", sa.group, "Group spec (cyclic:5, heisenberg, JSON ...)");
  sumset_cmd->add_flag("--square", sa.square, "Product set S*S (default when --set2 is absent)");
  sumset_cmd->add_option("--format", sa.format)->check(CLI::IsMember({"pretty", "json"}));

  DetectArgs da;
  auto* detect_cmd = app.add_subcommand("detect", "Detect structured / weakly structured sets");
  detect_cmd->add_option("--set", da.set, "Integer set, or JSON coordinates with --group");
  detect_cmd->add_option("--group", da.group, "Group for weak-structure detection");
  detect_cmd->add_flag("--product", da.product, "Treat input as points of Z x G");
  detect_cmd->add_option("--inner", da.inner, "Inner group G for --product");
  detect_cmd->add_option("--points", da.points, "Points (a,x),... or JSON");
  detect_cmd->add_option("--format", da.format)->check(CLI::IsMember({"pretty", "json"}));

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check one theorem on one instance");
  verify_cmd->add_option("--theorem", va.theorem, "Theorem id (thm_A, lemma_1, ..., thm_4)")->required();
  verify_cmd->add_option("--set", va.set);
  verify_cmd->add_option("--set2", va.set2);
  verify_cmd->add_option("--p", va.p);
  verify_cmd->add_option("--N", va.n);
  verify_cmd->add_option("--inner", va.inner);
  verify_cmd->add_option("--points", va.points);
  verify_cmd->add_option("--group", va.group);
  verify_cmd->add_option("--instance", va.instance, "Self-contained instance JSON from a report");
  verify_cmd->add_option("--format", va.format)->check(CLI::IsMember({"pretty", "json"}));
  verify_cmd->add_flag("--no-timing", va.no_timing);

  SweepArgs wa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a theorem over an enumerated instance family");
  sweep_cmd->add_option("--theorem", wa.theorem)->required();
  sweep_cmd->add_option("--family", wa.family, "normalized | interval (Corollary 2 only)");
  sweep_cmd->add_option("--nmax", wa.nmax);
  sweep_cmd->add_option("--nmin", wa.nmin);
  sweep_cmd->add_option("--kmin", wa.kmin);
  sweep_cmd->add_option("--kmax", wa.kmax);
  sweep_cmd->add_option("--amax", wa.amax);
  sweep_cmd->add_option("--inner", wa.inner);
  sweep_cmd->add_option("--group", wa.group);
  sweep_cmd->add_option("--box", wa.box, "Coordinate radius of the subset box");
  sweep_cmd->add_option("--p", wa.p);
  sweep_cmd->add_option("--mode", wa.mode)->check(CLI::IsMember({"exhaustive", "random"}));
  sweep_cmd->add_option("--count", wa.count);
  sweep_cmd->add_option("--seed", wa.seed);
  sweep_cmd->add_option("--exhaustive-limit", wa.exhaustive_limit);
  sweep_cmd->add_option("--workers", wa.workers, "Worker threads (default: SUMSETLAB_WORKERS or all cores)");
  sweep_cmd->add_option("--max-instances", wa.max_instances);
  sweep_cmd->add_option("--time-limit-ms", wa.time_limit_ms);
  sweep_cmd->add_flag("--raw", wa.raw, "Disable canonicalization of integer sets");
  sweep_cmd->add_flag("--progress", wa.progress, "Stream progress records to stderr");
  sweep_cmd->add_flag("--no-timing", wa.no_timing);
  sweep_cmd->add_option("--format", wa.format)->check(CLI::IsMember({"json", "csv", "pretty"}));
  sweep_cmd->add_option("--out", wa.out, "Report path; progress goes to <out>.progress.jsonl");

  std::vector<const char*> argv{"sumsetlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    if (*sumset_cmd) return cmd_sumset(sa, out);
    if (*detect_cmd) return cmd_detect(da, out);
    if (*verify_cmd) return cmd_verify(va, out);
    if (*sweep_cmd) return cmd_sweep(wa, out, err);
  } catch (const InternalInvariantError& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace sumsetlab::cli
