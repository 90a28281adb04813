#pragma once

// Monomial (generalized permutation) matrices whose nonzero entries are roots
// of unity, stored exactly as a permutation plus exponents of zeta_M.
//
// Convention, used everywhere in the library: the basis vector b_j is mapped
// to zeta_M^phase(j) * b_sigma(j). Column j of the dense matrix therefore has
// its single nonzero entry zeta_M^phase(j) in row sigma(j).

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permlike/numtheory.hpp"

namespace permlike {

/// The root of unity zeta_modulus^exp, exp reduced into [0, modulus).
struct RootExp {
  i64 exp = 0;
  i64 modulus = 1;

  RootExp() = default;
  RootExp(i64 e, i64 m);

  /// Multiplicative order of the root.
  i64 order() const { return modulus / gcd(exp, modulus); }
  bool is_one() const { return exp == 0; }
  /// Same root expressed over a multiple of the modulus.
  RootExp lifted(i64 new_modulus) const;

  /// Compares the roots themselves, independent of the modulus used.
  bool operator==(const RootExp& other) const;
};

class MonoMatrix {
 public:
  MonoMatrix() = default;
  /// Validates that sigma is a bijection of [0, d) and reduces phases mod M.
  MonoMatrix(std::vector<i64> sigma, std::vector<i64> phase, i64 modulus);

  static MonoMatrix identity(i64 d, i64 modulus = 1);
  /// The 0/1 matrix of a permutation (phases all trivial).
  static MonoMatrix permutation(std::vector<i64> sigma, i64 modulus = 1);

  i64 dim() const { return static_cast<i64>(sigma_.size()); }
  i64 modulus() const { return modulus_; }
  std::span<const i64> sigma() const { return sigma_; }
  std::span<const i64> phase() const { return phase_; }
  i64 sigma(i64 j) const { return sigma_[static_cast<std::size_t>(j)]; }
  i64 phase(i64 j) const { return phase_[static_cast<std::size_t>(j)]; }

  /// Re-expresses the phases over a multiple of the current modulus.
  MonoMatrix lifted(i64 new_modulus) const;

  bool is_identity() const;
  /// True when every phase is trivial, i.e. a 0/1 permutation matrix.
  bool is_permutation() const;

  /// Equality of the matrices themselves (phase moduli may differ).
  bool operator==(const MonoMatrix& other) const;

 private:
  std::vector<i64> sigma_;
  std::vector<i64> phase_;
  i64 modulus_ = 1;
};

MonoMatrix multiply(const MonoMatrix& x, const MonoMatrix& y);
MonoMatrix inverse(const MonoMatrix& x);
/// Any integer power; negative powers go through the inverse.
MonoMatrix power(const MonoMatrix& x, i64 k);
/// Order from the cycle structure: lcm over cycles of length * order(product).
i64 order(const MonoMatrix& x);

/// Cycles of the underlying permutation, each starting at its smallest index;
/// cycles are listed in order of their starting index.
std::vector<std::vector<i64>> cycles(const MonoMatrix& x);

/// char poly in factored form, one factor x^length - omega per cycle.
struct CycleFactor {
  i64 length = 1;
  RootExp omega;
};

struct CycleFactors {
  i64 d = 0;
  std::vector<CycleFactor> factors;  // sorted by (length, omega)

  bool operator==(const CycleFactors& other) const;
};

CycleFactors char_factors(const MonoMatrix& x);

/// The multiset of eigenvalues, as sorted exponents of zeta_N.
struct Spectrum {
  i64 N = 1;
  std::vector<i64> exps;

  /// Expresses the same multiset over a multiple of N.
  Spectrum lifted(i64 new_N) const;
  bool operator==(const Spectrum& other) const;
};

Spectrum eigenvalues(const CycleFactors& f);
/// Concatenation of two eigenvalue multisets.
Spectrum merge(const Spectrum& x, const Spectrum& y);

/// Restriction to the span of {b_j : j in subset}, reindexed by the subset's
/// sorted order. Throws Error("subspace not invariant") unless sigma(S) = S.
MonoMatrix restrict(const MonoMatrix& x, std::span<const i64> subset);

/// Phases of the fixed points of sigma; their sum is the trace.
std::vector<RootExp> fixed_point_phases(const MonoMatrix& x);

/// The maximal cycle of order p^n in its own eigenbasis: b_j -> lambda^j b_j
/// with lambda = zeta_M^(M / p^n). Needs p^n | M.
MonoMatrix cycle_C(i64 p, int n, i64 modulus);

/// Normal form of an element normalizing <C> with A^-1 C A = C^r:
/// sigma(j) = r*j, and the only nontrivial phase of each mu_r-orbit sits on
/// the orbit's last member (the edge that wraps around to the
/// representative). `phases` maps every orbit representative to the exponent
/// of that orbit's cycle product.
MonoMatrix normalizer_A(i64 p, int n, const Residue& r, const std::map<i64, i64>& phases,
                        i64 modulus);

/// If x equals C^c for the maximal cycle C of dimension x.dim() (realized over
/// x's modulus), returns c in [0, d); needs d | modulus.
std::optional<i64> as_power_of_cycle(const MonoMatrix& x);

std::string to_string(const RootExp& w);
std::string to_string(const CycleFactors& f);

}  // namespace permlike
