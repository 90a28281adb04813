#pragma once

// Constructive certification. The basis E of eigenvectors permuted by A leads
// to an explicit conjugator, with restriction identities checked on
// V^p = span{b_j : p | j} and V* = span{b_j : j a unit}.

#include <optional>
#include <string>
#include <vector>

#include "permlike/certificate.hpp"
#include "permlike/cyclooracle.hpp"
#include "permlike/permsim.hpp"
#include "permlike/structure.hpp"

namespace permlike {

struct BasisBuild {
  BasisE basis;
  std::vector<RootExp> omegas;  // per orbit, the cycle product of A
};

/// Builds E for A and checks omega_k^(ord(A)/d_k) = 1 for every orbit.
BasisBuild build_basis_E(const GroupSpec& g);
/// Same for an explicit generator normalizing C with A^-1 C A = C^r.
BasisBuild build_basis_E(const MonoMatrix& a, const Residue& r);

/// X written in the basis E: the vector of E at index j maps to
/// zeta^phase(j) times the vector of E at index sigma(j).
MonoMatrix in_basis(const MonoMatrix& x, const BasisE& basis);

/// The closed-form char poly of (A^l C^k) on V* for A^(p^a) = I:
/// Phi_base(x)^exponent, or (x^base - 1)^exponent.
struct ClosedForm {
  enum class Kind { kCyclotomic, kBinomial };
  Kind kind = Kind::kCyclotomic;
  i64 base = 1;
  i64 exponent = 0;

  /// The roots as exponents of zeta_N; base must divide N.
  Spectrum spectrum(i64 N) const;
  IntPoly expand() const;
  std::string to_string() const;
  bool operator==(const ClosedForm&) const = default;
};

ClosedForm charpoly_Vstar_closed_form(i64 p, int n, int a, i64 k);

/// Units of Z_(p^n), ascending.
std::vector<i64> unit_indices(i64 p, int n);
/// Multiples of p in Z_(p^n), ascending.
std::vector<i64> p_multiple_indices(i64 p, int n);

/// Needs s = 1. The hypothesis A^(p^a) = I is itself reported as a check;
/// the closed-form check only applies when it holds.
RestrictionReport verify_restriction(const GroupSpec& g);

/// A predicted structural assertion failed.
class CounterexampleError : public Error {
 public:
  CounterexampleError(int case_label, std::string witness)
      : Error("case " + std::to_string(case_label) + ": " + witness),
        case_label_(case_label),
        witness_(std::move(witness)) {}
  int case_label() const { return case_label_; }
  const std::string& witness() const { return witness_; }

 private:
  int case_label_;
  std::string witness_;
};

struct CertifyOptions {
  bool oracle = true;
  bool run_restriction = true;
  VerifyOptions verify;
};

struct CertifyOutcome {
  GroupVerdict verdict;
  std::optional<Certificate> certificate;
  std::optional<VerificationResult> verification;
};

/// Checks permutation-likeness first; a non permutation-like group yields no
/// certificate. Throws CounterexampleError when a pipeline assertion fails.
CertifyOutcome certify_group(const GroupSpec& g, const CertifyOptions& opts = {});

/// The structural part of the pipeline alone, for a group already known to
/// be permutation-like.
Certificate build_certificate(const GroupSpec& g, bool run_restriction = true);

/// Checks that the claimed images satisfy Pi(A)^-1 Pi(C) Pi(A) = Pi(C)^r.
bool images_consistent(const Certificate& cert);

}  // namespace permlike
