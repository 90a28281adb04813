#include "permlike/certify.hpp"

#include <algorithm>
#include <sstream>

namespace permlike {

bool RestrictionReport::passed() const {
  for (const auto& c : checks) {
    if (c.applicable && !c.passed) return false;
  }
  for (const auto& sub : restricted) {
    if (!sub.passed()) return false;
  }
  return true;
}

BasisBuild build_basis_E(const MonoMatrix& a, const Residue& r) {
  const i64 d = a.dim();
  const i64 m = a.modulus();
  BasisBuild out;
  out.basis.partition = mu_orbits(d, r);
  out.basis.modulus = m;
  out.basis.coords.assign(static_cast<std::size_t>(d), 0);
  for (i64 j = 0; j < d; ++j) {
    if (a.sigma(j) != mul_mod(r.value, j, d)) throw Error("generator does not map b_j to the line of b_(r j)");
  }
  const i64 ord_a = order(a);
  const auto& orbits = out.basis.partition.orbits;
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const Orbit& orbit = orbits[k];
    i64 acc = 0;
    for (std::size_t i = 0; i < orbit.members.size(); ++i) {
      const i64 j = orbit.members[i];
      out.basis.coords[static_cast<std::size_t>(j)] = acc;
      out.basis.ordering.push_back({k, i, j});
      acc = mod(acc + a.phase(j), m);
    }
    RootExp omega(acc, m);
    if ((ord_a / orbit.length) % omega.order() != 0) {
      std::ostringstream os;
      os << "omega of orbit " << orbit.rep << " has order " << omega.order() << ", which does not divide ord(A)/d_k = "
         << ord_a / orbit.length;
      throw Error(os.str());
    }
    out.omegas.push_back(omega);
  }
  return out;
}

BasisBuild build_basis_E(const GroupSpec& g) { return build_basis_E(g.A(), g.r()); }

MonoMatrix in_basis(const MonoMatrix& x, const BasisE& basis) {
  const i64 d = x.dim();
  if (static_cast<i64>(basis.coords.size()) != d) throw Error("dimension mismatch");
  const i64 m = lcm(x.modulus(), basis.modulus);
  const i64 xs = m / x.modulus();
  const i64 bs = m / basis.modulus;
  std::vector<i64> sigma(x.sigma().begin(), x.sigma().end());
  std::vector<i64> phase(static_cast<std::size_t>(d));
  for (i64 j = 0; j < d; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const auto sj = static_cast<std::size_t>(x.sigma(j));
    phase[ju] = x.phase(j) * xs + (basis.coords[ju] - basis.coords[sj]) * bs;
  }
  return MonoMatrix(std::move(sigma), std::move(phase), m);
}

Spectrum ClosedForm::spectrum(i64 N) const {
  if (N % base != 0) throw Error("closed form roots do not lie in mu_N");
  Spectrum out;
  out.N = N;
  const i64 step = N / base;
  for (i64 e = 0; e < base; ++e) {
    if (kind == Kind::kCyclotomic && gcd(e, base) != 1) continue;
    for (i64 t = 0; t < exponent; ++t) out.exps.push_back(e * step);
  }
  std::sort(out.exps.begin(), out.exps.end());
  return out;
}

IntPoly ClosedForm::expand() const {
  IntPoly factor;
  if (kind == Kind::kCyclotomic) {
    factor = cyclotomic_polynomial(base);
  } else {
    factor.assign(static_cast<std::size_t>(base) + 1, 0);
    factor.front() = -1;
    factor.back() = 1;
  }
  IntPoly out{1};
  for (i64 i = 0; i < exponent; ++i) out = multiply(out, factor);
  return out;
}

std::string ClosedForm::to_string() const {
  std::ostringstream os;
  if (kind == Kind::kCyclotomic) {
    os << "Phi_" << base << "(x)";
  } else if (base == 1) {
    os << "(x-1)";
  } else {
    os << "(x^" << base << "-1)";
  }
  if (exponent != 1) os << "^" << exponent;
  return os.str();
}

ClosedForm charpoly_Vstar_closed_form(i64 p, int n, int a, i64 k) {
  if (a < 0 || a >= n) throw Error("closed form needs 0 <= a < n");
  const int nu = p_adic_valuation(k, p);
  if (nu < n - a) {
    return {ClosedForm::Kind::kCyclotomic, checked_pow(p, n - nu), checked_pow(p, nu)};
  }
  return {ClosedForm::Kind::kBinomial, checked_pow(p, a), checked_mul(checked_pow(p, n - a - 1), p - 1)};
}

std::vector<i64> unit_indices(i64 p, int n) {
  std::vector<i64> out;
  const i64 d = checked_pow(p, n);
  for (i64 j = 0; j < d; ++j) {
    if (j % p != 0) out.push_back(j);
  }
  return out;
}

std::vector<i64> p_multiple_indices(i64 p, int n) {
  std::vector<i64> out;
  const i64 d = checked_pow(p, n);
  for (i64 j = 0; j < d; j += p) out.push_back(j);
  return out;
}

namespace {

bool all_trivial(const std::vector<RootExp>& omegas) {
  return std::all_of(omegas.begin(), omegas.end(), [](const RootExp& w) { return w.is_one(); });
}

std::string first_nontrivial(const BasisBuild& b) {
  for (std::size_t k = 0; k < b.omegas.size(); ++k) {
    if (!b.omegas[k].is_one()) {
      return "orbit of " + std::to_string(b.basis.partition.orbits[k].rep) + " has omega " + to_string(b.omegas[k]);
    }
  }
  return "";
}

RestrictionCheck check_closed_form(const GroupSpec& g, int a) {
  RestrictionCheck check{"closed_form_Vstar"};
  const i64 p = g.p();
  const int n = g.n();
  const i64 d = g.d();
  const auto units = unit_indices(p, n);
  const i64 pa = checked_pow(p, a);
  MonoMatrix a_power = MonoMatrix::identity(d, g.modulus());
  for (i64 l = 0; l < pa; ++l) {
    const int a_prime = l == 0 ? 0 : a - p_adic_valuation(l, p);
    MonoMatrix x = a_power;
    for (i64 k = 0; k < d; ++k) {
      const CycleFactors computed = char_factors(restrict(x, units));
      const ClosedForm expected = charpoly_Vstar_closed_form(p, n, a_prime, k);
      const Spectrum spec = eigenvalues(computed);
      if (!(spec == expected.spectrum(d))) {
        check.passed = false;
        check.witness = "l=" + std::to_string(l) + " k=" + std::to_string(k) + ": " + to_string(computed) +
                        " vs " + expected.to_string();
        return check;
      }
      x = multiply(x, g.C());
    }
    a_power = multiply(a_power, g.A());
  }
  return check;
}

}  // namespace

RestrictionReport verify_restriction(const GroupSpec& g) {
  const UnitOrderDecomp& dec = g.decomp();
  if (dec.s != 1) throw Error("restriction checks need |G/<C>| to be a power of p");
  const i64 p = g.p();
  const int n = g.n();
  const int a = dec.a;

  RestrictionReport report;
  report.p = p;
  report.n = n;
  report.a = a;
  RestrictionCheck hyp{"A_pa_identity"};
  hyp.passed = power(g.A(), checked_pow(p, a)).is_identity();
  if (!hyp.passed) hyp.witness = "A^(p^a) != I";
  report.checks.push_back(hyp);
  if (hyp.passed) {
    report.checks.push_back(check_closed_form(g, a));
  } else {
    report.checks.push_back({"closed_form_Vstar", false, true, "hypothesis A^(p^a) = I fails"});
  }

  const auto multiples = p_multiple_indices(p, n);
  const MonoMatrix a_vp = restrict(g.A(), multiples);

  RestrictionCheck vp{"Vp_permutation_like"};
  if (n == 1) {
    vp.passed = a_vp.is_identity();
    if (!vp.passed) vp.witness = "A on V^p is the scalar " + to_string(RootExp(a_vp.phase(0), a_vp.modulus()));
  } else {
    const GroupSpec sub = GroupSpec::from_generator(p, n - 1, a_vp);
    const GroupVerdict verdict = is_permutation_like_group(sub, false);
    vp.passed = verdict.permutation_like;
    if (!vp.passed) {
      vp.witness = to_string(*verdict.failing_element) + ": " + verdict.failure.message();
    } else {
      try {
        const GroupSpec adjusted = adjust_generator_p_case(sub).adjusted;
        report.restricted.push_back(verify_restriction(adjusted));
      } catch (const SplitHypothesisError& e) {
        vp.passed = false;
        vp.witness = e.what();
      }
    }
  }
  report.checks.push_back(vp);

  RestrictionCheck ident{"A_on_Vp_identity"};
  ident.applicable = dec.order() == p && hyp.passed;
  if (ident.applicable) {
    ident.passed = a_vp.is_identity();
    if (!ident.passed) ident.witness = "A restricted to V^p is not the identity";
  }
  report.checks.push_back(ident);

  RestrictionCheck form{"Vp_charpoly_form"};
  form.applicable = a >= 1;
  if (form.applicable) {
    const ElementVerdict v = is_permutation_like_element(a_vp);
    bool ok = v.permutation_like;
    for (const auto& [len, count] : v.cycle_type.c) {
      if (len != 1 && len != p) ok = false;
    }
    form.passed = ok;
    if (ok) {
      const auto it = v.cycle_type.c.find(p);
      report.observed_j = it == v.cycle_type.c.end() ? 0 : it->second;
    } else {
      form.witness = "A on V^p has char " + to_string(char_factors(a_vp));
    }
  }
  report.checks.push_back(form);

  RestrictionCheck perm{"A_permutes_E"};
  try {
    const BasisBuild basis = build_basis_E(g);
    perm.passed = all_trivial(basis.omegas);
    if (!perm.passed) perm.witness = first_nontrivial(basis);
  } catch (const Error& e) {
    perm.passed = false;
    perm.witness = e.what();
  }
  report.checks.push_back(perm);
  return report;
}

namespace {

std::string failed_checks(const RestrictionReport& r) {
  for (const auto& c : r.checks) {
    if (c.applicable && !c.passed) return c.name + " (" + c.witness + ")";
  }
  for (const auto& sub : r.restricted) {
    if (!sub.passed()) return "on V^p: " + failed_checks(sub);
  }
  return "";
}

void require_permutes(const MonoMatrix& x, const BasisE& basis, int case_label, const std::string& what) {
  const MonoMatrix y = in_basis(x, basis);
  if (!y.is_permutation()) {
    for (i64 j = 0; j < y.dim(); ++j) {
      if (y.phase(j) != 0) {
        throw CounterexampleError(case_label, what + " does not permute E (index " + std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

Certificate build_certificate(const GroupSpec& g, bool run_restriction) {
  const i64 d = g.d();
  CertificateEvidence evidence;
  int case_label = 0;
  i64 shift = 0;
  MonoMatrix generator = g.A();

  if (!g.has_decomp()) {
    // p = 2: look for any shift A C^-t that permutes its E.
    bool found = false;
    for (i64 t = 0; t < d && !found; ++t) {
      MonoMatrix candidate = multiply(g.A(), power(g.C(), -t));
      try {
        if (all_trivial(build_basis_E(candidate, g.r()).omegas)) {
          generator = std::move(candidate);
          shift = t;
          found = true;
        }
      } catch (const Error&) {
      }
    }
    if (!found) throw CounterexampleError(0, "no A C^-t permutes its basis E");
  } else {
    const UnitOrderDecomp& dec = g.decomp();
    const i64 pa = checked_pow(g.p(), dec.a);
    if (dec.s == 1) {
      case_label = 1;
      SplitAdjustment adj = [&] {
        try {
          return adjust_generator_p_case(g);
        } catch (const SplitHypothesisError& e) {
          throw CounterexampleError(1, e.what());
        }
      }();
      shift = adj.t;
      evidence.t = adj.t;
      if (run_restriction) {
        evidence.restriction = verify_restriction(adj.adjusted);
        if (!evidence.restriction->passed()) throw CounterexampleError(1, failed_checks(*evidence.restriction));
      }
      generator = adj.adjusted.A();
    } else if (dec.a == 0) {
      case_label = 2;
      if (!power(g.A(), dec.s).is_identity()) {
        throw CounterexampleError(2, "A^s != I (ord A = " + std::to_string(g.order_A()) + ")");
      }
      CycleFactors expected;
      expected.d = d;
      expected.factors.push_back({1, RootExp(0, 1)});
      for (i64 i = 0; i < (d - 1) / dec.s; ++i) expected.factors.push_back({dec.s, RootExp(0, 1)});
      const CycleFactors actual = char_factors(g.A());
      if (!(actual == expected)) {
        throw CounterexampleError(2, "char A = " + to_string(actual) + ", expected (x-1)(x^s-1)^((d-1)/s)");
      }
    } else {
      case_label = 3;
      const SplitVerdict split = check_split_nonp_case(g);
      if (!split.holds) {
        throw CounterexampleError(3, "A^(s p^a) != I (ord A = " + std::to_string(split.actual_order) + ")");
      }
      const ExtGcd eg = ext_gcd(dec.s, pa);
      const i64 t = mod(eg.x, pa);
      const i64 m = (1 - dec.s * t) / pa;
      evidence.t = t;
      evidence.m = m;
      const MonoMatrix a1 = power(g.A(), dec.s * t);
      const MonoMatrix a2 = power(g.A(), pa * m);
      const BasisBuild basis = build_basis_E(g);
      require_permutes(a1, basis.basis, 3, "A^(s t)");
      require_permutes(a2, basis.basis, 3, "A^(p^a m)");
      if (run_restriction) {
        evidence.restriction = verify_restriction(GroupSpec::from_generator(g.p(), g.n(), a1));
        if (!evidence.restriction->passed()) throw CounterexampleError(3, failed_checks(*evidence.restriction));
      }
    }
  }

  BasisBuild basis = build_basis_E(generator, g.r());
  if (!all_trivial(basis.omegas)) throw CounterexampleError(case_label, "A_E: " + first_nontrivial(basis));
  require_permutes(generator, basis.basis, case_label, "A_E");

  const i64 r_inv = inverse_mod(g.r().value, d);
  std::vector<i64> image_c(static_cast<std::size_t>(d));
  std::vector<i64> image_a(static_cast<std::size_t>(d));
  for (i64 k = 0; k < d; ++k) {
    image_c[static_cast<std::size_t>(k)] = (k + 1) % d;
    image_a[static_cast<std::size_t>(k)] = mul_mod(k + shift, r_inv, d);
  }
  Certificate cert{
      .group = g,
      .case_label = case_label,
      .shift = shift,
      .generator_E = generator,
      .basis = basis.basis,
      .f_coords = basis.basis.coords,
      .f_modulus = basis.basis.modulus,
      .image_C = std::move(image_c),
      .image_A = std::move(image_a),
      .evidence = std::move(evidence),
  };
  if (!images_consistent(cert)) throw CounterexampleError(case_label, "claimed images break the relation");
  return cert;
}

bool images_consistent(const Certificate& cert) {
  const i64 d = cert.group.d();
  const auto du = static_cast<std::size_t>(d);
  if (cert.image_A.size() != du || cert.image_C.size() != du) return false;
  std::vector<i64> inv_a(du, -1);
  for (std::size_t k = 0; k < du; ++k) {
    const i64 v = cert.image_A[k];
    if (v < 0 || v >= d || inv_a[static_cast<std::size_t>(v)] != -1) return false;
    inv_a[static_cast<std::size_t>(v)] = static_cast<i64>(k);
  }
  // Powers of Pi(C) by iteration, then compare Pi(A)^-1 Pi(C) Pi(A) with Pi(C)^r.
  const i64 r = cert.group.r().value;
  for (std::size_t k = 0; k < du; ++k) {
    i64 cr = static_cast<i64>(k);
    for (i64 i = 0; i < r; ++i) {
      const i64 next = cert.image_C[static_cast<std::size_t>(cr)];
      if (next < 0 || next >= d) return false;
      cr = next;
    }
    const i64 lhs = inv_a[static_cast<std::size_t>(cert.image_C[static_cast<std::size_t>(cert.image_A[k])])];
    if (lhs != cr) return false;
  }
  return true;
}

CertifyOutcome certify_group(const GroupSpec& g, const CertifyOptions& opts) {
  CertifyOutcome out;
  out.verdict = is_permutation_like_group(g, false);
  if (!out.verdict.permutation_like) return out;
  Certificate cert = build_certificate(g, opts.run_restriction);
  cert.verified = true;
  if (opts.oracle) {
    out.verification = verify_certificate(cert, opts.verify);
    cert.oracle_checked = true;
    cert.verified = out.verification->ok;
  }
  out.certificate = std::move(cert);
  return out;
}

}  // namespace permlike
