#include "permlike/structure.hpp"

#include <sstream>

namespace permlike {

std::string to_string(const Element& x) {
  if (x.l == 0 && x.k == 0) return "I";
  std::ostringstream os;
  if (x.l != 0) os << (x.l == 1 ? "A" : "A^" + std::to_string(x.l));
  if (x.l != 0 && x.k != 0) os << ' ';
  if (x.k != 0) os << (x.k == 1 ? "C" : "C^" + std::to_string(x.k));
  return os.str();
}

GroupSpec GroupSpec::from_phases(i64 p, int n, const Residue& r, std::map<i64, i64> phases,
                                 i64 modulus) {
  GroupSpec g;
  g.p_ = p;
  g.n_ = n;
  g.d_ = checked_pow(p, n);
  g.r_ = r;
  g.modulus_ = modulus;
  g.a_ = normalizer_A(p, n, r, phases, modulus);
  for (auto& [rep, e] : phases) e = mod(e, modulus);
  g.phases_ = std::move(phases);
  g.finish();
  return g;
}

GroupSpec GroupSpec::from_generator(i64 p, int n, MonoMatrix a) {
  if (!is_prime(p) || n < 1) throw Error("group needs a prime p and n >= 1");
  GroupSpec g;
  g.p_ = p;
  g.n_ = n;
  g.d_ = checked_pow(p, n);
  if (a.dim() != g.d_) throw Error("generator dimension is not p^n");
  if (a.modulus() % g.d_ != 0) a = a.lifted(lcm(a.modulus(), g.d_));
  g.modulus_ = a.modulus();
  const i64 r = g.d_ == 1 ? 0 : a.sigma(1);
  g.r_ = Residue(r, g.d_);
  for (i64 j = 0; j < g.d_; ++j) {
    if (a.sigma(j) != mul_mod(r, j, g.d_)) {
      throw Error("generator does not normalize the maximal cycle");
    }
  }
  if (gcd(r, g.d_) != 1) throw Error("generator does not normalize the maximal cycle");
  g.a_ = std::move(a);
  g.finish();
  return g;
}

void GroupSpec::finish() {
  c_ = cycle_C(p_, n_, modulus_);
  order_a_ = order(a_);
  if (p_ % 2 == 1) decomp_ = decompose_unit(r_, p_);

  // A^l commutes with C only when r^l = 1, so L is a multiple of ord(r).
  const i64 ord_r = mult_order(r_);
  const MonoMatrix step = power(a_, ord_r);
  MonoMatrix x = step;
  i64 l = ord_r;
  while (true) {
    if (auto c = as_power_of_cycle(x)) {
      quotient_order_ = l;
      quotient_relation_ = *c;
      break;
    }
    x = multiply(x, step);
    l = checked_add(l, ord_r);
    if (l > order_a_) throw Error("no power of A lies in <C>");
  }
}

const UnitOrderDecomp& GroupSpec::decomp() const {
  if (!decomp_) throw Error("unit decomposition needs an odd prime");
  return *decomp_;
}

Element compose(const Element& x, const Element& y, const GroupSpec& g) {
  const i64 d = g.d();
  const i64 rl = pow_mod(g.r().value, y.l, d);
  Element out{x.l + y.l, mod(mul_mod(x.k, rl, d) + y.k, d)};
  if (out.l >= g.quotient_order()) {
    out.l -= g.quotient_order();
    out.k = mod(out.k + g.quotient_relation(), d);
  }
  return out;
}

Element inverse(const Element& x, const GroupSpec& g) {
  const i64 d = g.d();
  if (x.l == 0) return {0, mod(-x.k, d)};
  const i64 l = g.quotient_order() - x.l;
  const i64 rl = pow_mod(g.r().value, l, d);
  return {l, mod(-g.quotient_relation() - mul_mod(x.k, rl, d), d)};
}

Element power(const Element& x, i64 e, const GroupSpec& g) {
  Element base = e < 0 ? inverse(x, g) : x;
  if (e < 0) e = -e;
  Element result{0, 0};
  while (e > 0) {
    if (e & 1) result = compose(result, base, g);
    base = compose(base, base, g);
    e >>= 1;
  }
  return result;
}

MonoMatrix realize(const Element& x, const GroupSpec& g) {
  return multiply(power(g.A(), x.l), power(g.C(), x.k));
}

std::vector<Element> enumerate_elements(const GroupSpec& g) {
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(g.size()));
  for (i64 l = 0; l < g.quotient_order(); ++l) {
    for (i64 k = 0; k < g.d(); ++k) out.push_back({l, k});
  }
  return out;
}

SplitAdjustment adjust_generator_p_case(const GroupSpec& g) {
  const UnitOrderDecomp& dec = g.decomp();
  if (dec.s != 1) throw Error("adjust_generator_p_case needs |G/<C>| to be a power of p");
  const i64 pa = checked_pow(g.p(), dec.a);
  const MonoMatrix target = power(g.A(), pa);
  const MonoMatrix c_pa = power(g.C(), pa);
  // Scan <C^(p^a)>, which has p^(n-a) elements.
  MonoMatrix candidate = MonoMatrix::identity(g.d(), g.modulus());
  const i64 count = g.d() / pa;
  for (i64 t = 0; t < count; ++t) {
    if (candidate == target) {
      MonoMatrix adjusted = multiply(g.A(), power(g.C(), -t));
      if (!power(adjusted, pa).is_identity()) {
        throw SplitHypothesisError("split hypothesis failed: (A C^-t)^(p^a) != I");
      }
      return {GroupSpec::from_generator(g.p(), g.n(), std::move(adjusted)), t};
    }
    candidate = multiply(candidate, c_pa);
  }
  throw SplitHypothesisError("split hypothesis failed: A^(p^a) is not in <C^(p^a)>");
}

SplitVerdict check_split_nonp_case(const GroupSpec& g) {
  const UnitOrderDecomp& dec = g.decomp();
  SplitVerdict v;
  v.expected_order = dec.order();
  v.actual_order = g.order_A();
  v.holds = power(g.A(), v.expected_order).is_identity();
  return v;
}

Centralizer centralizer_of_C(const GroupSpec& g) {
  Centralizer out;
  out.is_cycle_group = true;
  for (const Element& x : enumerate_elements(g)) {
    const MonoMatrix m = realize(x, g);
    if (multiply(m, g.C()) == multiply(g.C(), m)) {
      out.elements.push_back(x);
      if (x.l != 0) out.is_cycle_group = false;
    }
  }
  return out;
}

}  // namespace permlike
