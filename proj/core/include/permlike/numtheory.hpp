#pragma once

// Modular arithmetic over Z_d, the unit group Z_d^*, and the orbit structure
// of multiplication maps k -> r*k on Z_d.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "permlike/error.hpp"

namespace permlike {

using i64 = std::int64_t;

/// An element of Z_d, always stored reduced to [0, d).
struct Residue {
  i64 value = 0;
  i64 modulus = 1;

  Residue() = default;
  /// Reduces `v` modulo `m`; throws if m <= 0.
  Residue(i64 v, i64 m);

  bool operator==(const Residue&) const = default;
};

// Overflow-checked helpers. Products of residues are widened to 128 bits, so
// modular operations never wrap for any modulus representable in i64.
i64 checked_mul(i64 a, i64 b);
i64 checked_add(i64 a, i64 b);
i64 checked_pow(i64 base, int exp);
i64 mod(i64 a, i64 m);
i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 base, i64 exp, i64 m);
i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);

/// Solves a*x + b*y = g = gcd(a, b).
struct ExtGcd {
  i64 g;
  i64 x;
  i64 y;
};
ExtGcd ext_gcd(i64 a, i64 b);

/// Inverse of a unit; throws Error("not a unit") otherwise.
i64 inverse_mod(i64 a, i64 m);

bool is_prime(i64 n);
std::vector<i64> divisors(i64 n);
std::vector<i64> prime_factors(i64 n);
i64 euler_phi(i64 n);
int mobius(i64 n);

/// If d = p^n for a prime p (n >= 1) returns n, otherwise 0.
int prime_power_exponent(i64 d, i64 p);

/// Multiplicative order of a unit; throws Error("not a unit") otherwise.
i64 mult_order(const Residue& r);

/// nu_p(0) is represented by this sentinel, which compares greater than every
/// finite valuation.
inline constexpr int kValuationInf = std::numeric_limits<int>::max();

/// Largest e with p^e | k, or kValuationInf for k == 0.
int p_adic_valuation(i64 k, i64 p);

struct Orbit {
  i64 rep = 0;
  i64 length = 0;
  std::vector<i64> members;  // rep, r*rep, r^2*rep, ...
};

/// Partition of Z_d into orbits of k -> r*k. Orbits are sorted by their
/// smallest member, which is also the representative, so {0} comes first.
struct OrbitPartition {
  i64 d = 0;
  Residue r;
  std::vector<Orbit> orbits;

  // Lookup tables indexed by j in [0, d).
  std::vector<std::size_t> orbit_of;
  std::vector<std::size_t> position_in_orbit;

  /// Index into `orbits` of the orbit containing j.
  std::size_t orbit_index(i64 j) const { return orbit_of.at(static_cast<std::size_t>(j)); }
  /// Position of j inside its orbit's member list.
  std::size_t position(i64 j) const { return position_in_orbit.at(static_cast<std::size_t>(j)); }
};

OrbitPartition mu_orbits(i64 d, const Residue& r);

/// ord(r) = s * p^a with s | p-1, together with the split r = u + v*p^(n-a)
/// where u has order exactly s. For a == 0, v is 0.
struct UnitOrderDecomp {
  Residue r;
  i64 p = 0;
  int n = 0;
  i64 s = 1;
  int a = 0;
  Residue u;
  i64 v = 0;

  i64 order() const;
};

UnitOrderDecomp decompose_unit(const Residue& r, i64 p);

/// 1 + r + ... + r^(j-1) mod d.
Residue geometric_sum(const Residue& r, i64 j);

}  // namespace permlike
