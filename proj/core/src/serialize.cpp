#include "permlike/serialize.hpp"

#include <set>

namespace permlike {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

json elements_json(std::span<const i64> xs) { return json(std::vector<i64>(xs.begin(), xs.end())); }

}  // namespace

i64 default_modulus(i64 p, int n, const Residue& r) {
  const i64 d = checked_pow(p, n);
  i64 s = mult_order(r);
  while (s % p == 0) s /= p;
  return checked_mul(s, d);
}

json to_json(const MonoMatrix& x) {
  return {{"d", x.dim()}, {"M", x.modulus()}, {"sigma", elements_json(x.sigma())}, {"phase", elements_json(x.phase())}};
}

MonoMatrix mono_from_json(const json& j) {
  const auto d = field<i64>(j, "d");
  const auto m = field<i64>(j, "M");
  auto sigma = field<std::vector<i64>>(j, "sigma");
  auto phase = field<std::vector<i64>>(j, "phase");
  if (d < 1 || m < 1) throw InputError("d and M must be positive");
  if (static_cast<i64>(sigma.size()) != d || static_cast<i64>(phase.size()) != d) {
    throw InputError("sigma and phase must have d entries");
  }
  try {
    return MonoMatrix(std::move(sigma), std::move(phase), m);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

json to_json(const GroupSpec& g) {
  json out{{"p", g.p()}, {"n", g.n()}, {"r", g.r().value}, {"M", g.modulus()}};
  if (g.phases()) {
    json phases = json::array();
    for (const auto& [rep, e] : *g.phases()) phases.push_back({{"orbit_rep", rep}, {"exp", e}});
    out["phases"] = std::move(phases);
  } else {
    out["generator"] = to_json(g.A());
  }
  return out;
}

GroupSpec group_from_json(const json& j) {
  const auto p = field<i64>(j, "p");
  const auto n = field<int>(j, "n");
  if (p < 2 || !is_prime(p)) throw InputError("p must be prime");
  if (n < 1 || n > 12) throw InputError("n must be in [1, 12]");
  const i64 d = checked_pow(p, n);
  try {
    if (j.contains("generator")) return GroupSpec::from_generator(p, n, mono_from_json(j.at("generator")));
    const auto r_value = field<i64>(j, "r");
    if (gcd(r_value, d) != 1) throw InputError("r must be a unit mod p^n");
    const Residue r(r_value, d);
    const i64 m = j.contains("M") ? field<i64>(j, "M") : default_modulus(p, n, r);
    if (m < 1 || m % d != 0) throw InputError("M must be a positive multiple of p^n");
    std::map<i64, i64> phases;
    for (const Orbit& o : mu_orbits(d, r).orbits) phases[o.rep] = 0;
    if (j.contains("phases")) {
      const json& list = j.at("phases");
      if (!list.is_array()) throw InputError("phases must be an array");
      std::set<i64> seen;
      for (const json& entry : list) {
        const auto rep = field<i64>(entry, "orbit_rep");
        if (!phases.contains(rep)) throw InputError(std::to_string(rep) + " is not an orbit representative");
        if (!seen.insert(rep).second) throw InputError("orbit " + std::to_string(rep) + " listed twice");
        phases[rep] = field<i64>(entry, "exp");
      }
    }
    return GroupSpec::from_phases(p, n, r, std::move(phases), m);
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

json to_json(const OrbitPartition& part) {
  json orbits = json::array();
  for (const Orbit& o : part.orbits) {
    orbits.push_back({{"rep", o.rep}, {"length", o.length}, {"members", o.members}});
  }
  return {{"d", part.d}, {"r", part.r.value}, {"orbits", std::move(orbits)}};
}

json to_json(const UnitOrderDecomp& dec) {
  return {{"r", dec.r.value}, {"s", dec.s}, {"a", dec.a}, {"u", dec.u.value}, {"v", dec.v}, {"order", dec.order()}};
}

json to_json(const CycleType& t) {
  json out = json::object();
  for (const auto& [l, c] : t.c) out[std::to_string(l)] = c;
  return out;
}

json to_json(const CycleFactors& f) {
  json factors = json::array();
  for (const auto& c : f.factors) {
    factors.push_back({{"length", c.length}, {"omega", {c.omega.exp, c.omega.modulus}}});
  }
  return {{"d", f.d}, {"factors", std::move(factors)}, {"text", to_string(f)}};
}

json to_json(const SpectrumFailure& f) {
  const char* kind = "none";
  if (f.kind == SpectrumFailureKind::kNotRational) kind = "not_rational";
  if (f.kind == SpectrumFailureKind::kNegativeCycleCount) kind = "negative_cycle_count";
  json out{{"kind", kind}, {"witness", f.witness}, {"message", f.message()}};
  if (f.kind == SpectrumFailureKind::kNegativeCycleCount) out["value"] = f.value;
  return out;
}

json to_json(const GroupVerdict& v) {
  json out{{"verdict", v.permutation_like ? "permutation-like" : "not permutation-like"}};
  if (v.failing_element) {
    out["witness"] = {{"element", to_string(*v.failing_element)},
                      {"failure", to_json(v.failure)},
                      {"char_factors", to_json(v.failing_factors)}};
  }
  json types = json::object();
  for (const auto& [x, t] : v.cycle_types) types[to_string(x)] = to_json(t);
  out["cycle_types"] = std::move(types);
  return out;
}

json to_json(const RestrictionReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json entry{{"name", c.name}, {"applicable", c.applicable}, {"passed", c.passed}};
    if (!c.witness.empty()) entry["witness"] = c.witness;
    checks.push_back(std::move(entry));
  }
  json out{{"p", r.p}, {"n", r.n}, {"a", r.a}, {"passed", r.passed()}, {"checks", std::move(checks)}};
  if (r.observed_j) out["observed_j"] = *r.observed_j;
  if (!r.restricted.empty()) out["restricted"] = to_json(r.restricted.front());
  return out;
}

json to_json(const VerificationResult& v) {
  json out{{"ok", v.ok}, {"det_nonzero", v.det_nonzero}};
  if (!v.det_method.empty()) out["det_method"] = v.det_method;
  if (!v.reason.empty()) out["reason"] = v.reason;
  if (!v.generator.empty()) out["witness"] = {{"generator", v.generator}, {"row", v.row}, {"col", v.col}};
  return out;
}

json to_json(const Certificate& c) {
  json order = json::array();
  for (const BasisEntry& e : c.basis.ordering) order.push_back(e.index);
  json evidence = json::object();
  if (c.evidence.t) evidence["t"] = *c.evidence.t;
  if (c.evidence.m) evidence["m"] = *c.evidence.m;
  if (c.evidence.restriction) evidence["restriction"] = to_json(*c.evidence.restriction);
  return {{"group", to_json(c.group)},
          {"case", c.case_label},
          {"shift", c.shift},
          {"generator_E", to_json(c.generator_E)},
          {"basis_order", std::move(order)},
          {"f", "sum of all E vectors"},
          {"f_coords", c.f_coords},
          {"f_modulus", c.f_modulus},
          {"perm_images", {{"A", c.image_A}, {"C", c.image_C}}},
          {"evidence", std::move(evidence)},
          {"verified", c.verified},
          {"oracle_checked", c.oracle_checked}};
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw InputError("certificate must be an object");
  if (!j.contains("group")) throw InputError("missing field 'group'");
  GroupSpec g = group_from_json(j.at("group"));
  if (!j.contains("perm_images")) throw InputError("missing field 'perm_images'");
  const json& images = j.at("perm_images");
  Certificate c{
      .group = g,
      .case_label = j.value("case", 0),
      .shift = j.value("shift", i64{0}),
      .f_coords = field<std::vector<i64>>(j, "f_coords"),
      .f_modulus = field<i64>(j, "f_modulus"),
      .image_C = field<std::vector<i64>>(images, "C"),
      .image_A = field<std::vector<i64>>(images, "A"),
  };
  if (c.f_modulus < 1) throw InputError("f_modulus must be positive");
  if (j.contains("generator_E")) c.generator_E = mono_from_json(j.at("generator_E"));
  c.verified = j.value("verified", false);
  c.oracle_checked = j.value("oracle_checked", false);
  return c;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace permlike
