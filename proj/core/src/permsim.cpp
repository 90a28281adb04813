#include "permlike/permsim.hpp"

#include <algorithm>
#include <sstream>

namespace permlike {

i64 PhiMultiplicity::degree() const {
  i64 total = 0;
  for (const auto& [k, ak] : a) total = checked_add(total, checked_mul(ak, euler_phi(k)));
  return total;
}

i64 CycleType::degree() const {
  i64 total = 0;
  for (const auto& [l, cl] : c) total = checked_add(total, checked_mul(l, cl));
  return total;
}

std::string to_string(const CycleType& t) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [l, cl] : t.c) {
    if (!first) os << ", ";
    first = false;
    os << "c" << l << "=" << cl;
  }
  os << "}";
  return os.str();
}

std::string SpectrumFailure::message() const {
  std::ostringstream os;
  switch (kind) {
    case SpectrumFailureKind::kNone:
      return "ok";
    case SpectrumFailureKind::kNotRational:
      os << "char poly not rational (primitive " << witness << "-th roots have unequal multiplicity)";
      return os.str();
    case SpectrumFailureKind::kNegativeCycleCount:
      os << "not a permutation spectrum (c_" << witness << " = " << value << ")";
      return os.str();
  }
  return "unknown";
}

namespace {

struct Tally {
  i64 order = 0;
  i64 distinct = 0;
  i64 multiplicity = 0;
  bool uniform = true;
};

// Non-throwing core of eigen_multiplicities.
SpectrumFailure tally_spectrum(const Spectrum& s, PhiMultiplicity& out) {
  std::vector<Tally> tallies;
  std::size_t i = 0;
  while (i < s.exps.size()) {
    std::size_t j = i;
    while (j < s.exps.size() && s.exps[j] == s.exps[i]) ++j;
    const i64 count = static_cast<i64>(j - i);
    const i64 ord = s.N / gcd(s.exps[i], s.N);
    auto it = std::find_if(tallies.begin(), tallies.end(), [&](const Tally& t) { return t.order == ord; });
    if (it == tallies.end()) {
      tallies.push_back({ord, 1, count, true});
    } else {
      ++it->distinct;
      if (it->multiplicity != count) it->uniform = false;
    }
    i = j;
  }
  std::sort(tallies.begin(), tallies.end(), [](const Tally& x, const Tally& y) { return x.order < y.order; });
  for (const Tally& t : tallies) {
    if (!t.uniform || t.distinct != euler_phi(t.order)) {
      return {SpectrumFailureKind::kNotRational, t.order, 0};
    }
    out.a[t.order] = t.multiplicity;
  }
  return {};
}

SpectrumFailure invert(const PhiMultiplicity& m, CycleType& out) {
  std::vector<i64> lengths;
  for (const auto& [k, ak] : m.a) {
    if (ak == 0) continue;
    for (i64 l : divisors(k)) lengths.push_back(l);
  }
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  for (i64 l : lengths) {
    i64 c = 0;
    for (const auto& [k, ak] : m.a) {
      if (k % l == 0) c += mobius(k / l) * ak;
    }
    if (c < 0) return {SpectrumFailureKind::kNegativeCycleCount, l, c};
    if (c > 0) out.c[l] = c;
  }
  return {};
}

}  // namespace

PhiMultiplicity eigen_multiplicities(const CycleFactors& f) {
  PhiMultiplicity out;
  SpectrumFailure failure = tally_spectrum(eigenvalues(f), out);
  if (failure.kind != SpectrumFailureKind::kNone) throw SpectrumError(failure);
  return out;
}

CycleType cycle_type_from_multiplicities(const PhiMultiplicity& m, i64 d) {
  for (const auto& [k, ak] : m.a) {
    if (k < 1 || ak < 0) throw Error("malformed cyclotomic multiplicities");
  }
  CycleType out;
  SpectrumFailure failure = invert(m, out);
  if (failure.kind != SpectrumFailureKind::kNone) throw SpectrumError(failure);
  if (m.degree() != d || out.degree() != d) {
    throw Error("cyclotomic multiplicities do not add up to the dimension");
  }
  return out;
}

ElementVerdict classify_spectrum(const CycleFactors& f) {
  ElementVerdict v;
  PhiMultiplicity m;
  v.failure = tally_spectrum(eigenvalues(f), m);
  if (v.failure.kind == SpectrumFailureKind::kNone) v.failure = invert(m, v.cycle_type);
  v.permutation_like = v.failure.kind == SpectrumFailureKind::kNone;
  if (!v.permutation_like) v.cycle_type = {};
  return v;
}

ElementVerdict is_permutation_like_element(const MonoMatrix& x) {
  return classify_spectrum(char_factors(x));
}

std::optional<CosetFailure> coset_failure(const MonoMatrix& x, std::vector<CycleType>* types) {
  const i64 d = x.dim();
  const i64 m = x.modulus();
  if (m % d != 0) throw Error("coset check needs d | M");
  const i64 step = m / d;
  // X C^k shares the cycles of X; C^k only adds k*step*j to the phase of
  // index j, so each cycle product shifts by k*step*(sum of indices).
  struct Cycle {
    i64 length;
    i64 base;
    i64 index_sum;
  };
  std::vector<Cycle> cyc;
  for (const auto& c : cycles(x)) {
    i64 base = 0, sum = 0;
    for (i64 j : c) {
      base = (base + x.phase(j)) % m;
      sum = (sum + j) % m;
    }
    cyc.push_back({static_cast<i64>(c.size()), base, sum});
  }
  CycleFactors f;
  f.d = d;
  f.factors.resize(cyc.size());
  for (i64 k = 0; k < d; ++k) {
    const i64 shift = mul_mod(k, step, m);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      f.factors[i] = {cyc[i].length, RootExp(cyc[i].base + mul_mod(shift, cyc[i].index_sum, m), m)};
    }
    ElementVerdict v = classify_spectrum(f);
    if (!v.permutation_like) return CosetFailure{k, v.failure};
    if (types) types->push_back(std::move(v.cycle_type));
  }
  return std::nullopt;
}

GroupVerdict is_permutation_like_group(const GroupSpec& g, bool record_cycle_types) {
  GroupVerdict out;
  const i64 d = g.d();
  MonoMatrix a_power = MonoMatrix::identity(d, g.modulus());
  std::vector<CycleType> types;
  for (i64 l = 0; l < g.quotient_order(); ++l) {
    types.clear();
    if (auto bad = coset_failure(a_power, record_cycle_types ? &types : nullptr)) {
      out.permutation_like = false;
      out.failing_element = Element{l, bad->k};
      out.failure = bad->failure;
      out.failing_factors = char_factors(realize(*out.failing_element, g));
      return out;
    }
    for (i64 k = 0; k < static_cast<i64>(types.size()); ++k) {
      out.cycle_types.emplace_back(Element{l, k}, std::move(types[static_cast<std::size_t>(k)]));
    }
    a_power = multiply(a_power, g.A());
  }
  return out;
}

}  // namespace permlike
