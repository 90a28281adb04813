#include "permlike/monomial.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace permlike {

namespace {

using i128 = __int128;

// Reduced fraction e/m in [0, 1) identifying a root of unity.
std::pair<i64, i64> reduced(const RootExp& w) {
  const i64 g = gcd(w.exp, w.modulus);
  if (w.exp == 0) return {0, 1};
  return {w.exp / g, w.modulus / g};
}

}  // namespace

RootExp::RootExp(i64 e, i64 m) : exp(0), modulus(m) {
  if (m <= 0) throw Error("root of unity modulus must be positive");
  exp = permlike::mod(e, m);
}

RootExp RootExp::lifted(i64 new_modulus) const {
  if (new_modulus % modulus != 0) throw Error("can only lift to a multiple of the modulus");
  return RootExp(checked_mul(exp, new_modulus / modulus), new_modulus);
}

bool RootExp::operator==(const RootExp& other) const { return reduced(*this) == reduced(other); }

MonoMatrix::MonoMatrix(std::vector<i64> sigma, std::vector<i64> phase, i64 modulus)
    : sigma_(std::move(sigma)), phase_(std::move(phase)), modulus_(modulus) {
  if (modulus_ <= 0) throw Error("phase modulus must be positive");
  if (sigma_.size() != phase_.size()) throw Error("sigma and phase lengths differ");
  const auto d = sigma_.size();
  std::vector<bool> hit(d, false);
  for (i64 s : sigma_) {
    if (s < 0 || static_cast<std::size_t>(s) >= d || hit[static_cast<std::size_t>(s)]) {
      throw Error("sigma is not a bijection");
    }
    hit[static_cast<std::size_t>(s)] = true;
  }
  for (i64& e : phase_) e = permlike::mod(e, modulus_);
}

MonoMatrix MonoMatrix::identity(i64 d, i64 modulus) {
  std::vector<i64> sigma(static_cast<std::size_t>(d));
  for (i64 j = 0; j < d; ++j) sigma[static_cast<std::size_t>(j)] = j;
  return MonoMatrix(std::move(sigma), std::vector<i64>(static_cast<std::size_t>(d), 0), modulus);
}

MonoMatrix MonoMatrix::permutation(std::vector<i64> sigma, i64 modulus) {
  std::vector<i64> phase(sigma.size(), 0);
  return MonoMatrix(std::move(sigma), std::move(phase), modulus);
}

MonoMatrix MonoMatrix::lifted(i64 new_modulus) const {
  if (new_modulus == modulus_) return *this;
  if (new_modulus % modulus_ != 0) throw Error("can only lift to a multiple of the modulus");
  const i64 scale = new_modulus / modulus_;
  std::vector<i64> phase(phase_.size());
  for (std::size_t j = 0; j < phase_.size(); ++j) phase[j] = checked_mul(phase_[j], scale);
  return MonoMatrix(sigma_, std::move(phase), new_modulus);
}

bool MonoMatrix::is_identity() const {
  for (std::size_t j = 0; j < sigma_.size(); ++j) {
    if (sigma_[j] != static_cast<i64>(j) || phase_[j] != 0) return false;
  }
  return true;
}

bool MonoMatrix::is_permutation() const {
  return std::all_of(phase_.begin(), phase_.end(), [](i64 e) { return e == 0; });
}

bool MonoMatrix::operator==(const MonoMatrix& other) const {
  if (sigma_ != other.sigma_) return false;
  if (modulus_ == other.modulus_) return phase_ == other.phase_;
  const i64 m = lcm(modulus_, other.modulus_);
  return lifted(m).phase_ == other.lifted(m).phase_;
}

MonoMatrix multiply(const MonoMatrix& x, const MonoMatrix& y) {
  if (x.dim() != y.dim()) throw Error("dimension mismatch");
  const i64 m = lcm(x.modulus(), y.modulus());
  const i64 sx = m / x.modulus();
  const i64 sy = m / y.modulus();
  const auto d = static_cast<std::size_t>(x.dim());
  std::vector<i64> sigma(d), phase(d);
  for (std::size_t j = 0; j < d; ++j) {
    const i64 mid = y.sigma()[j];
    sigma[j] = x.sigma(mid);
    phase[j] = static_cast<i64>((static_cast<i128>(y.phase()[j]) * sy +
                                 static_cast<i128>(x.phase(mid)) * sx) %
                                m);
  }
  return MonoMatrix(std::move(sigma), std::move(phase), m);
}

MonoMatrix inverse(const MonoMatrix& x) {
  const auto d = static_cast<std::size_t>(x.dim());
  std::vector<i64> sigma(d), phase(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto target = static_cast<std::size_t>(x.sigma()[j]);
    sigma[target] = static_cast<i64>(j);
    phase[target] = -x.phase()[j];
  }
  return MonoMatrix(std::move(sigma), std::move(phase), x.modulus());
}

std::vector<std::vector<i64>> cycles(const MonoMatrix& x) {
  const auto d = static_cast<std::size_t>(x.dim());
  std::vector<bool> seen(d, false);
  std::vector<std::vector<i64>> out;
  for (std::size_t start = 0; start < d; ++start) {
    if (seen[start]) continue;
    std::vector<i64> cycle;
    auto j = start;
    while (!seen[j]) {
      seen[j] = true;
      cycle.push_back(static_cast<i64>(j));
      j = static_cast<std::size_t>(x.sigma()[j]);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

MonoMatrix power(const MonoMatrix& x, i64 k) {
  if (k < 0) return power(inverse(x), -k);
  const i64 m = x.modulus();
  const auto d = static_cast<std::size_t>(x.dim());
  std::vector<i64> sigma(d), phase(d);
  for (const auto& cycle : cycles(x)) {
    const auto len = static_cast<i64>(cycle.size());
    // prefix[t] = sum of phases along the first t steps, for t < 2 * len.
    std::vector<i64> prefix(static_cast<std::size_t>(2 * len + 1), 0);
    for (i64 t = 0; t < 2 * len; ++t) {
      prefix[static_cast<std::size_t>(t + 1)] =
          (prefix[static_cast<std::size_t>(t)] + x.phase(cycle[static_cast<std::size_t>(t % len)])) % m;
    }
    const i64 omega = prefix[static_cast<std::size_t>(len)];
    const i64 wraps = k / len;
    const i64 rest = k % len;
    const i64 wrap_phase = mul_mod(omega, wraps, m);
    for (i64 i = 0; i < len; ++i) {
      const auto from = static_cast<std::size_t>(cycle[static_cast<std::size_t>(i)]);
      sigma[from] = cycle[static_cast<std::size_t>((i + rest) % len)];
      phase[from] = (wrap_phase + prefix[static_cast<std::size_t>(i + rest)] -
                     prefix[static_cast<std::size_t>(i)] + m) %
                    m;
    }
  }
  return MonoMatrix(std::move(sigma), std::move(phase), m);
}

CycleFactors char_factors(const MonoMatrix& x) {
  CycleFactors out;
  out.d = x.dim();
  const i64 m = x.modulus();
  for (const auto& cycle : cycles(x)) {
    i64 omega = 0;
    for (i64 j : cycle) omega = (omega + x.phase(j)) % m;
    out.factors.push_back({static_cast<i64>(cycle.size()), RootExp(omega, m)});
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const CycleFactor& a, const CycleFactor& b) {
    return std::make_tuple(a.length, reduced(a.omega)) < std::make_tuple(b.length, reduced(b.omega));
  });
  return out;
}

i64 order(const MonoMatrix& x) {
  i64 result = 1;
  for (const auto& f : char_factors(x).factors) {
    result = lcm(result, checked_mul(f.length, f.omega.order()));
  }
  return result;
}

bool CycleFactors::operator==(const CycleFactors& other) const {
  if (d != other.d || factors.size() != other.factors.size()) return false;
  auto key = [](const CycleFactors& f) {
    std::vector<std::tuple<i64, i64, i64>> k;
    for (const auto& c : f.factors) {
      auto [e, m] = reduced(c.omega);
      k.emplace_back(c.length, e, m);
    }
    std::sort(k.begin(), k.end());
    return k;
  };
  return key(*this) == key(other);
}

Spectrum Spectrum::lifted(i64 new_N) const {
  if (new_N % N != 0) throw Error("can only lift a spectrum to a multiple of N");
  Spectrum out{new_N, exps};
  for (i64& e : out.exps) e = checked_mul(e, new_N / N);
  return out;
}

bool Spectrum::operator==(const Spectrum& other) const {
  if (exps.size() != other.exps.size()) return false;
  const i64 m = lcm(N, other.N);
  auto a = lifted(m).exps;
  auto b = other.lifted(m).exps;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

Spectrum eigenvalues(const CycleFactors& f) {
  // Roots of x^l = zeta_M^e are zeta_(M l)^(e + M t) for t in [0, l).
  i64 n = 1;
  for (const auto& c : f.factors) n = lcm(n, checked_mul(c.omega.modulus, c.length));
  Spectrum out;
  out.N = n;
  out.exps.reserve(static_cast<std::size_t>(f.d));
  for (const auto& c : f.factors) {
    const i64 fine = c.omega.modulus * c.length;
    const i64 scale = n / fine;
    for (i64 t = 0; t < c.length; ++t) {
      out.exps.push_back(checked_mul(c.omega.exp + c.omega.modulus * t, scale) % n);
    }
  }
  std::sort(out.exps.begin(), out.exps.end());
  return out;
}

Spectrum merge(const Spectrum& x, const Spectrum& y) {
  const i64 n = lcm(x.N, y.N);
  Spectrum out = x.lifted(n);
  auto other = y.lifted(n).exps;
  out.exps.insert(out.exps.end(), other.begin(), other.end());
  std::sort(out.exps.begin(), out.exps.end());
  return out;
}

MonoMatrix restrict(const MonoMatrix& x, std::span<const i64> subset) {
  std::vector<i64> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("restriction subset has repeated indices");
  }
  const auto d = static_cast<std::size_t>(x.dim());
  std::vector<i64> local(d, -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || static_cast<std::size_t>(sorted[i]) >= d) {
      throw Error("restriction index out of range");
    }
    local[static_cast<std::size_t>(sorted[i])] = static_cast<i64>(i);
  }
  std::vector<i64> sigma(sorted.size()), phase(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const i64 image = local[static_cast<std::size_t>(x.sigma(sorted[i]))];
    if (image < 0) throw Error("subspace not invariant");
    sigma[i] = image;
    phase[i] = x.phase(sorted[i]);
  }
  return MonoMatrix(std::move(sigma), std::move(phase), x.modulus());
}

std::vector<RootExp> fixed_point_phases(const MonoMatrix& x) {
  std::vector<RootExp> out;
  for (i64 j = 0; j < x.dim(); ++j) {
    if (x.sigma(j) == j) out.emplace_back(x.phase(j), x.modulus());
  }
  return out;
}

MonoMatrix cycle_C(i64 p, int n, i64 modulus) {
  if (!is_prime(p) || n < 1) throw Error("cycle_C needs a prime p and n >= 1");
  const i64 d = checked_pow(p, n);
  if (modulus % d != 0) throw Error("phase modulus must be a multiple of p^n");
  const i64 step = modulus / d;
  std::vector<i64> sigma(static_cast<std::size_t>(d)), phase(static_cast<std::size_t>(d));
  for (i64 j = 0; j < d; ++j) {
    sigma[static_cast<std::size_t>(j)] = j;
    phase[static_cast<std::size_t>(j)] = j * step;
  }
  return MonoMatrix(std::move(sigma), std::move(phase), modulus);
}

MonoMatrix normalizer_A(i64 p, int n, const Residue& r, const std::map<i64, i64>& phases,
                        i64 modulus) {
  if (!is_prime(p) || n < 1) throw Error("normalizer_A needs a prime p and n >= 1");
  const i64 d = checked_pow(p, n);
  if (modulus % d != 0) throw Error("phase modulus must be a multiple of p^n");
  if (r.modulus != d) throw Error("r must be a residue mod p^n");
  const OrbitPartition part = mu_orbits(d, r);
  if (phases.size() != part.orbits.size()) throw Error("phases must name every orbit exactly once");
  std::vector<i64> sigma(static_cast<std::size_t>(d)), phase(static_cast<std::size_t>(d), 0);
  for (i64 j = 0; j < d; ++j) sigma[static_cast<std::size_t>(j)] = mul_mod(r.value, j, d);
  for (const Orbit& orbit : part.orbits) {
    auto it = phases.find(orbit.rep);
    if (it == phases.end()) {
      throw Error("missing phase for orbit representative " + std::to_string(orbit.rep));
    }
    phase[static_cast<std::size_t>(orbit.members.back())] = it->second;
  }
  return MonoMatrix(std::move(sigma), std::move(phase), modulus);
}

std::optional<i64> as_power_of_cycle(const MonoMatrix& x) {
  const i64 d = x.dim();
  const i64 m = x.modulus();
  if (d == 0 || m % d != 0) throw Error("phase modulus must be a multiple of the dimension");
  const i64 step = m / d;
  if (d == 1) return x.is_identity() ? std::optional<i64>(0) : std::nullopt;
  if (x.phase(1) % step != 0) return std::nullopt;
  const i64 c = x.phase(1) / step;
  for (i64 j = 0; j < d; ++j) {
    if (x.sigma(j) != j || x.phase(j) != mul_mod(c, j * step, m)) return std::nullopt;
  }
  return c;
}

std::string to_string(const RootExp& w) {
  auto [e, m] = reduced(w);
  if (e == 0) return "1";
  if (m == 2) return "-1";
  std::ostringstream os;
  os << "z" << m;
  if (e != 1) os << "^" << e;
  return os.str();
}

std::string to_string(const CycleFactors& f) {
  if (f.factors.empty()) return "1";
  std::ostringstream os;
  std::size_t i = 0;
  while (i < f.factors.size()) {
    std::size_t j = i;
    while (j < f.factors.size() && f.factors[j].length == f.factors[i].length &&
           f.factors[j].omega == f.factors[i].omega) {
      ++j;
    }
    os << "(x";
    if (f.factors[i].length != 1) os << "^" << f.factors[i].length;
    const std::string w = to_string(f.factors[i].omega);
    if (w == "-1") {
      os << "+1)";
    } else {
      os << "-" << w << ")";
    }
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

}  // namespace permlike
