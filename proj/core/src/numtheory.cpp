#include "permlike/numtheory.hpp"

#include <algorithm>
#include <cstdlib>

namespace permlike {

namespace {

using i128 = __int128;

i64 narrow(i128 x) {
  if (x > std::numeric_limits<i64>::max() || x < std::numeric_limits<i64>::min()) {
    throw OverflowError("64-bit overflow");
  }
  return static_cast<i64>(x);
}

}  // namespace

Residue::Residue(i64 v, i64 m) : value(0), modulus(m) {
  if (m <= 0) throw Error("modulus must be positive");
  value = mod(v, m);
}

i64 checked_mul(i64 a, i64 b) { return narrow(static_cast<i128>(a) * b); }

i64 checked_add(i64 a, i64 b) { return narrow(static_cast<i128>(a) + b); }

i64 checked_pow(i64 base, int exp) {
  if (exp < 0) throw Error("negative exponent");
  i64 result = 1;
  for (int i = 0; i < exp; ++i) result = checked_mul(result, base);
  return result;
}

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mul_mod(i64 a, i64 b, i64 m) {
  i128 r = (static_cast<i128>(a) * b) % m;
  if (r < 0) r += m;
  return static_cast<i64>(r);
}

i64 pow_mod(i64 base, i64 exp, i64 m) {
  if (exp < 0) {
    base = inverse_mod(base, m);
    exp = -exp;
  }
  i64 result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 lcm(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / gcd(a, b), b < 0 ? -b : b);
}

ExtGcd ext_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b;
  i64 old_s = 1, s = 0;
  i64 old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

i64 inverse_mod(i64 a, i64 m) {
  ExtGcd e = ext_gcd(mod(a, m), m);
  if (e.g != 1) throw Error("not a unit");
  return mod(e.x, m);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 q = 2; q <= n / q; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> small, large;
  for (i64 q = 1; q <= n / q; ++q) {
    if (n % q != 0) continue;
    small.push_back(q);
    if (q != n / q) large.push_back(n / q);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> out;
  for (i64 q = 2; q <= n / q; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

i64 euler_phi(i64 n) {
  i64 result = n;
  for (i64 q : prime_factors(n)) result = result / q * (q - 1);
  return result;
}

int mobius(i64 n) {
  int sign = 1;
  for (i64 q = 2; q <= n / q; ++q) {
    if (n % q != 0) continue;
    n /= q;
    if (n % q == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

int prime_power_exponent(i64 d, i64 p) {
  if (p < 2 || d < p) return 0;
  int e = 0;
  while (d % p == 0) {
    d /= p;
    ++e;
  }
  return d == 1 ? e : 0;
}

i64 mult_order(const Residue& r) {
  const i64 d = r.modulus;
  if (gcd(r.value, d) != 1) throw Error("not a unit");
  if (d == 1) return 1;
  // The order divides phi(d); strip prime factors while the power stays 1.
  i64 order = euler_phi(d);
  for (i64 q : prime_factors(order)) {
    while (order % q == 0 && pow_mod(r.value, order / q, d) == 1) order /= q;
  }
  return order;
}

int p_adic_valuation(i64 k, i64 p) {
  if (p < 2) throw Error("valuation base must be at least 2");
  if (k == 0) return kValuationInf;
  int e = 0;
  while (k % p == 0) {
    k /= p;
    ++e;
  }
  return e;
}

OrbitPartition mu_orbits(i64 d, const Residue& r) {
  if (r.modulus != d) throw Error("residue modulus does not match orbit modulus");
  if (gcd(r.value, d) != 1) throw Error("not a unit");
  OrbitPartition part;
  part.d = d;
  part.r = r;
  const auto n = static_cast<std::size_t>(d);
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  part.orbit_of.assign(n, kUnset);
  part.position_in_orbit.assign(n, 0);
  for (i64 j = 0; j < d; ++j) {
    if (part.orbit_of[static_cast<std::size_t>(j)] != kUnset) continue;
    Orbit orbit;
    orbit.rep = j;
    i64 x = j;
    do {
      part.orbit_of[static_cast<std::size_t>(x)] = part.orbits.size();
      part.position_in_orbit[static_cast<std::size_t>(x)] = orbit.members.size();
      orbit.members.push_back(x);
      x = mul_mod(x, r.value, d);
    } while (x != j);
    orbit.length = static_cast<i64>(orbit.members.size());
    part.orbits.push_back(std::move(orbit));
  }
  return part;
}

i64 UnitOrderDecomp::order() const { return checked_mul(s, checked_pow(p, a)); }

UnitOrderDecomp decompose_unit(const Residue& r, i64 p) {
  if (p % 2 == 0 || !is_prime(p)) throw Error("decompose_unit needs an odd prime");
  const int n = prime_power_exponent(r.modulus, p);
  if (n == 0) throw Error("modulus is not a power of p");
  if (gcd(r.value, p) != 1) throw Error("not a unit");
  const i64 d = r.modulus;

  UnitOrderDecomp out;
  out.r = r;
  out.p = p;
  out.n = n;
  i64 ord = mult_order(r);
  while (ord % p == 0) {
    ord /= p;
    ++out.a;
  }
  out.s = ord;

  // p^(n-1) = 1 mod (p-1), so r^(p^(n-1)) kills the p-part of the order and
  // keeps the component of order s.
  const i64 exponent = checked_pow(p, n - 1);
  out.u = Residue(pow_mod(r.value, exponent, d), d);

  if (out.a == 0) {
    out.v = 0;
  } else {
    const i64 step = checked_pow(p, n - out.a);
    const i64 diff = r.value - out.u.value;
    if (diff % step != 0) throw Error("unit decomposition congruence failed");
    out.v = diff / step;
  }
  return out;
}

Residue geometric_sum(const Residue& r, i64 j) {
  if (j < 0) throw Error("geometric_sum needs j >= 0");
  const i64 d = r.modulus;
  // Returns (1 + r + ... + r^(m-1), r^m) mod d by binary splitting.
  struct Pair {
    i64 sum;
    i64 power;
  };
  auto rec = [&](auto&& self, i64 m) -> Pair {
    if (m == 0) return {0, 1 % d};
    if (m % 2 == 1) {
      Pair half = self(self, m - 1);
      return {mod(1 + mul_mod(r.value, half.sum, d), d), mul_mod(half.power, r.value, d)};
    }
    Pair half = self(self, m / 2);
    return {mul_mod(half.sum, 1 + half.power, d), mul_mod(half.power, half.power, d)};
  };
  return Residue(rec(rec, j).sum, d);
}

}  // namespace permlike
