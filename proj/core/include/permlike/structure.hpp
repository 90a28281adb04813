#pragma once

// The group G = <A, C> with A^-1 C A = C^r, realized in the eigenbasis of the
// maximal cycle C. Elements are kept abstractly as A^l C^k and realized as
// monomial matrices on demand.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "permlike/monomial.hpp"
#include "permlike/numtheory.hpp"

namespace permlike {

/// The element A^l C^k, with 0 <= l < |G/<C>| and 0 <= k < d.
struct Element {
  i64 l = 0;
  i64 k = 0;

  auto operator<=>(const Element&) const = default;
};

std::string to_string(const Element& x);

class GroupSpec {
 public:
  /// A in normal form (see normalizer_A) with one cycle-product exponent per
  /// mu_r-orbit representative.
  static GroupSpec from_phases(i64 p, int n, const Residue& r, std::map<i64, i64> phases,
                               i64 modulus);
  /// Any monomial A normalizing the maximal cycle; r is read off sigma.
  static GroupSpec from_generator(i64 p, int n, MonoMatrix a);

  i64 p() const { return p_; }
  int n() const { return n_; }
  i64 d() const { return d_; }
  const Residue& r() const { return r_; }
  i64 modulus() const { return modulus_; }
  const MonoMatrix& A() const { return a_; }
  const MonoMatrix& C() const { return c_; }
  i64 order_A() const { return order_a_; }

  /// ord(r) split as s * p^a; only available for odd p.
  bool has_decomp() const { return decomp_.has_value(); }
  const UnitOrderDecomp& decomp() const;

  /// |G/<C>|: the least L >= 1 with A^L in <C>.
  i64 quotient_order() const { return quotient_order_; }
  /// The c with A^L = C^c.
  i64 quotient_relation() const { return quotient_relation_; }
  i64 size() const { return checked_mul(quotient_order_, d_); }

  /// Orbit-product exponents when the group was built from phases.
  const std::optional<std::map<i64, i64>>& phases() const { return phases_; }

 private:
  GroupSpec() = default;
  void finish();

  i64 p_ = 0;
  int n_ = 0;
  i64 d_ = 0;
  Residue r_;
  i64 modulus_ = 1;
  MonoMatrix a_;
  MonoMatrix c_;
  i64 order_a_ = 1;
  std::optional<UnitOrderDecomp> decomp_;
  i64 quotient_order_ = 1;
  i64 quotient_relation_ = 0;
  std::optional<std::map<i64, i64>> phases_;
};

/// (A^l1 C^k1)(A^l2 C^k2) = A^(l1+l2) C^(k1 r^l2 + k2), reduced with A^L = C^c.
Element compose(const Element& x, const Element& y, const GroupSpec& g);
Element inverse(const Element& x, const GroupSpec& g);
Element power(const Element& x, i64 e, const GroupSpec& g);
MonoMatrix realize(const Element& x, const GroupSpec& g);

/// Every element once, in lexicographic (l, k) order.
std::vector<Element> enumerate_elements(const GroupSpec& g);

/// Raised when A^(p^a) is not in <C^(p^a)>.
class SplitHypothesisError : public Error {
 public:
  using Error::Error;
};

struct SplitAdjustment {
  GroupSpec adjusted;  // generated by A' = A C^-t and C
  i64 t = 0;
};

/// For s == 1: finds t with A^(p^a) = C^(p^a t) and returns A' = A C^-t,
/// which satisfies A'^(p^a) = I.
SplitAdjustment adjust_generator_p_case(const GroupSpec& g);

struct SplitVerdict {
  bool holds = false;
  i64 expected_order = 0;  // s * p^a
  i64 actual_order = 0;    // ord(A)
};

/// For s > 1: whether A^(s p^a) = I, i.e. <A> meets <C> trivially.
SplitVerdict check_split_nonp_case(const GroupSpec& g);

struct Centralizer {
  std::vector<Element> elements;
  bool is_cycle_group = false;  // equals <C>
};

/// All elements commuting with C, by exact monomial commutation.
Centralizer centralizer_of_C(const GroupSpec& g);

}  // namespace permlike
