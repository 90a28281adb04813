#pragma once

// Similarity to a permutation matrix. A finite-order matrix is similar to a
// permutation matrix exactly when its char poly is a product of factors
// x^l - 1. The cycle type is recovered from the cyclotomic multiplicities a_k
// (the multiplicity of each primitive k-th root) by Moebius inversion of
// a_k = sum over l with k | l of c_l.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "permlike/monomial.hpp"
#include "permlike/structure.hpp"

namespace permlike {

/// k -> a_k, the common multiplicity of the primitive k-th roots of unity.
struct PhiMultiplicity {
  std::map<i64, i64> a;

  /// sum a_k * phi(k).
  i64 degree() const;
  bool operator==(const PhiMultiplicity&) const = default;
};

/// l -> c_l, the number of l-cycles.
struct CycleType {
  std::map<i64, i64> c;

  /// sum l * c_l.
  i64 degree() const;
  bool operator==(const CycleType&) const = default;
};

std::string to_string(const CycleType& t);

enum class SpectrumFailureKind {
  kNone,
  kNotRational,         // multiplicity not constant on the primitive k-th roots
  kNegativeCycleCount,  // Moebius inversion produced c_l < 0
};

struct SpectrumFailure {
  SpectrumFailureKind kind = SpectrumFailureKind::kNone;
  i64 witness = 0;  // the order k, or the cycle length l
  i64 value = 0;    // the offending c_l for kNegativeCycleCount

  std::string message() const;
};

class SpectrumError : public Error {
 public:
  explicit SpectrumError(SpectrumFailure failure)
      : Error(failure.message()), failure_(failure) {}
  const SpectrumFailure& failure() const { return failure_; }

 private:
  SpectrumFailure failure_;
};

/// Throws SpectrumError(kNotRational) with the smallest offending order.
PhiMultiplicity eigen_multiplicities(const CycleFactors& f);

/// Throws SpectrumError(kNegativeCycleCount) with the smallest negative l.
CycleType cycle_type_from_multiplicities(const PhiMultiplicity& m, i64 d);

struct ElementVerdict {
  bool permutation_like = false;
  CycleType cycle_type;
  SpectrumFailure failure;
  // Finite order implies diagonalizable; every monomial matrix over roots of
  // unity has finite order, so this is never computed, only reported.
  bool diagonalizable_by_finite_order = true;
};

/// Non-throwing composition of the two steps above.
ElementVerdict classify_spectrum(const CycleFactors& f);
ElementVerdict is_permutation_like_element(const MonoMatrix& x);

struct GroupVerdict {
  bool permutation_like = true;
  std::vector<std::pair<Element, CycleType>> cycle_types;  // filled when requested
  std::optional<Element> failing_element;
  SpectrumFailure failure;
  CycleFactors failing_factors;
};

struct CosetFailure {
  i64 k = 0;
  SpectrumFailure failure;
};

/// Checks X C^k for every k, where C is the maximal cycle over X's modulus,
/// and returns the first failing k. Cycle types are appended when requested.
std::optional<CosetFailure> coset_failure(const MonoMatrix& x, std::vector<CycleType>* types = nullptr);

/// Checks every element in enumeration order, stopping at the first failure.
GroupVerdict is_permutation_like_group(const GroupSpec& g, bool record_cycle_types = true);

}  // namespace permlike
