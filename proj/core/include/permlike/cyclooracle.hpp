#pragma once

// Independent dense verifier. Numbers live in the cyclotomic field Q(zeta_M),
// stored as rational coefficient vectors reduced modulo Phi_M. Nothing in
// here looks at cycle structure: matrices are dense and char polys come from
// the Faddeev-LeVerrier trace recursion.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "permlike/monomial.hpp"

namespace permlike {

struct Certificate;

/// Integer polynomial, coefficients from the constant term up.
using IntPoly = std::vector<mpz_class>;

/// Phi_M by dividing x^M - 1 by Phi_k for every proper divisor k.
IntPoly cyclotomic_polynomial(i64 m);

IntPoly multiply(const IntPoly& x, const IntPoly& y);
std::string to_string(const IntPoly& f);

/// Conductors above this are refused; Phi_M has degree phi(M).
inline constexpr i64 kDefaultConductorCap = 2000;

class CycloField {
 public:
  /// Shared, cached instance; throws above the conductor cap.
  static std::shared_ptr<const CycloField> get(i64 conductor, i64 cap = kDefaultConductorCap);

  explicit CycloField(i64 conductor);

  i64 conductor() const { return conductor_; }
  std::size_t degree() const { return phi_.size() - 1; }
  const IntPoly& phi() const { return phi_; }
  /// zeta^e in reduced form.
  const std::vector<mpq_class>& root(i64 e) const;

  /// Reduces a coefficient vector of any length modulo Phi_M, in place.
  void reduce(std::vector<mpq_class>& coeffs) const;

 private:
  i64 conductor_;
  IntPoly phi_;
  std::vector<std::vector<mpq_class>> roots_;
};

using FieldPtr = std::shared_ptr<const CycloField>;

class CycloNum {
 public:
  CycloNum() = default;
  explicit CycloNum(FieldPtr field);  // zero
  CycloNum(FieldPtr field, std::vector<mpq_class> coeffs);
  CycloNum(FieldPtr field, const mpq_class& scalar);

  static CycloNum root(FieldPtr field, i64 e);

  const FieldPtr& field() const { return field_; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  /// The value when it lies in Q.
  std::optional<mpq_class> as_rational() const;

  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  CycloNum operator-() const;
  CycloNum scaled(const mpq_class& q) const;
  /// Throws Error("inverse of zero") for zero.
  CycloNum inverse() const;

  bool operator==(const CycloNum& o) const;
  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<mpq_class> coeffs_;  // length degree(), power basis 1, z, z^2, ...
};

/// Polynomial over Q(zeta_M), coefficients from the constant term up.
using CycloPoly = std::vector<CycloNum>;

CycloPoly multiply(const CycloPoly& x, const CycloPoly& y);
bool equal(const CycloPoly& x, const CycloPoly& y);
CycloPoly embed(const IntPoly& f, const FieldPtr& field);
/// Each coefficient as a list of "num/den" strings in the power basis.
std::vector<std::vector<std::string>> serialize(const CycloPoly& f);

class DenseMatrix {
 public:
  DenseMatrix(std::size_t d, FieldPtr field);
  static DenseMatrix identity(std::size_t d, FieldPtr field);

  std::size_t dim() const { return d_; }
  const FieldPtr& field() const { return field_; }
  CycloNum& at(std::size_t row, std::size_t col) { return entries_[row * d_ + col]; }
  const CycloNum& at(std::size_t row, std::size_t col) const { return entries_[row * d_ + col]; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  CycloNum trace() const;

 private:
  std::size_t d_;
  FieldPtr field_;
  std::vector<CycloNum> entries_;
};

/// Dense matrix of a monomial matrix; the field conductor must be a multiple
/// of x.modulus().
DenseMatrix realize(const MonoMatrix& x, const FieldPtr& field);

/// det(x I - D) by the Faddeev-LeVerrier recursion.
CycloPoly char_poly_dense(const DenseMatrix& dense);

/// prod (x^l - omega) over the factors.
CycloPoly expand_factors(const CycleFactors& f, const FieldPtr& field);

/// Sum of the diagonal of the realized matrix.
CycloNum trace(const MonoMatrix& x, const FieldPtr& field);

/// Exact determinant by Gaussian elimination over Q(zeta_M).
CycloNum determinant(DenseMatrix dense);

/// Maps Z[zeta_M] to F_q for a prime q = 1 mod M via zeta_M -> g of order M.
/// A nonzero image proves the determinant nonzero; returns nullopt when the
/// image vanishes (inconclusive) or an entry's denominator is divisible by q.
std::optional<bool> determinant_nonzero_mod_prime(const DenseMatrix& dense);

struct VerifyOptions {
  bool exact_determinant = false;  // skip the modular shortcut
  i64 conductor_cap = kDefaultConductorCap;
};

struct VerificationResult {
  bool ok = false;
  std::string generator;  // where the first mismatch was found
  i64 row = -1;
  i64 col = -1;
  std::string reason;
  bool det_nonzero = false;
  std::string det_method;  // "mod-prime" or "exact"
};

/// Builds P with columns C^k f in eigen-coordinates and checks g P = P Pi(g)
/// entry by entry for both generators, then that det P != 0.
VerificationResult verify_certificate(const Certificate& cert, const VerifyOptions& opts = {});

}  // namespace permlike
