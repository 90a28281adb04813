#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permlike/monomial.hpp"
#include "permlike/numtheory.hpp"
#include "permlike/structure.hpp"

namespace permlike {

/// Where an index j of Z_d sits in the basis E: its orbit and its position
/// inside the orbit block.
struct BasisEntry {
  std::size_t orbit = 0;
  std::size_t position = 0;
  i64 index = 0;  // the eigenline j
};

/// The basis E: block k holds e, A e, ..., A^(d_k - 1) e for the
/// representative eigenvector e of orbit k. The vector A^i e_rep equals
/// zeta^coords[j] b_j for j = r^i rep.
struct BasisE {
  OrbitPartition partition;
  std::vector<BasisEntry> ordering;  // position in E -> entry
  std::vector<i64> coords;           // indexed by j, exponents of zeta_modulus
  i64 modulus = 1;
};

struct RestrictionCheck {
  std::string name;
  bool applicable = true;
  bool passed = true;
  std::string witness;
};

/// Outcome of the restriction identities for a group with s = 1 and A^(p^a) = I.
struct RestrictionReport {
  i64 p = 0;
  int n = 0;
  int a = 0;
  std::vector<RestrictionCheck> checks;
  /// j in (x-1)^(p^(n-1) - p j) (x^p - 1)^j for A on V^p, when that form occurs.
  std::optional<i64> observed_j;
  /// The report for the restriction to V^p, one level down.
  std::vector<RestrictionReport> restricted;

  bool passed() const;
};

struct CertificateEvidence {
  std::optional<i64> t;  // case 1: A' = A C^-t; case 3: s t + p^a m = 1
  std::optional<i64> m;
  std::optional<RestrictionReport> restriction;
};

/// The conjugator {f, C f, ..., C^(d-1) f} with f the sum of the vectors of E
/// (built for generator_E = A C^-shift), and the claimed images of A and C as
/// permutations of the column index k.
struct Certificate {
  GroupSpec group;
  int case_label = 0;
  i64 shift = 0;
  MonoMatrix generator_E;
  BasisE basis;
  std::vector<i64> f_coords;  // eigen-coordinates of f, exponents of zeta_(f_modulus)
  i64 f_modulus = 1;
  std::vector<i64> image_C;
  std::vector<i64> image_A;
  CertificateEvidence evidence;
  bool verified = false;
  bool oracle_checked = false;
};

}  // namespace permlike
