#include <doctest.h>

#include "oracles.hpp"
#include "permlike/certify.hpp"

using namespace permlike;

namespace {

std::map<i64, i64> trivial_phases(i64 d, i64 r) {
  std::map<i64, i64> out;
  for (const Orbit& o : mu_orbits(d, Residue(r, d)).orbits) out[o.rep] = 0;
  return out;
}

GroupSpec trivial_group(i64 p, int n, i64 r, i64 m) {
  const i64 d = checked_pow(p, n);
  return GroupSpec::from_phases(p, n, Residue(r, d), trivial_phases(d, r), m);
}

const RestrictionCheck& check_named(const RestrictionReport& report, const std::string& name) {
  for (const auto& c : report.checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("no check " + name);
}

// Roots of Phi_m(x)^e or (x^m - 1)^e listed one by one, as exponents of zeta_N.
std::vector<i64> roots_by_listing(bool cyclotomic, i64 m, i64 e, i64 N) {
  std::vector<i64> out;
  for (i64 j = 0; j < N; ++j) {
    const i64 ord = N / std::gcd(j, N);
    const bool hit = cyclotomic ? ord == m : m % ord == 0;
    if (hit) {
      for (i64 t = 0; t < e; ++t) out.push_back(j);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("build_basis_E examples") {
  const GroupSpec g = trivial_group(3, 2, 4, 9);
  const BasisBuild b = build_basis_E(g);
  for (const RootExp& w : b.omegas) CHECK(w.is_one());
  CHECK(in_basis(g.A(), b.basis).is_permutation());
  CHECK(b.basis.ordering.size() == 9);

  // p = 3, n = 1, r = 2 with phase -1 on the unit orbit, M = 6.
  const GroupSpec neg = GroupSpec::from_phases(3, 1, Residue(2, 3), {{0, 0}, {1, 3}}, 6);
  const BasisBuild bn = build_basis_E(neg);
  REQUIRE(bn.omegas.size() == 2);
  CHECK(bn.omegas[0].is_one());
  CHECK(bn.omegas[1] == RootExp(1, 2));
  CHECK(neg.order_A() == 4);
  CHECK(bn.omegas[1].order() == 2);

  // Unit orbits of a group with A^(p^a) = I carry trivial omega.
  const GroupSpec h = GroupSpec::from_phases(3, 3, Residue(10, 27), trivial_phases(27, 10), 54);
  REQUIRE(power(h.A(), 3).is_identity());
  const BasisBuild bh = build_basis_E(h);
  for (std::size_t k = 0; k < bh.omegas.size(); ++k) {
    if (bh.basis.partition.orbits[k].rep % 3 != 0) CHECK(bh.omegas[k].is_one());
  }

  // E really is made of eigenvectors cycled by A: A maps each vector of an
  // orbit block to the next one, and the last one to omega times the first.
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    auto phases = trivial_phases(9, 4);
    for (auto& [rep, e] : phases) e = static_cast<i64>(rng() % 18);
    const GroupSpec x = GroupSpec::from_phases(3, 2, Residue(4, 9), phases, 18);
    const BasisBuild bx = build_basis_E(x);
    const MonoMatrix y = in_basis(x.A(), bx.basis);
    for (std::size_t k = 0; k < bx.omegas.size(); ++k) {
      const auto& members = bx.basis.partition.orbits[k].members;
      for (std::size_t i = 0; i + 1 < members.size(); ++i) CHECK(y.phase(members[i]) == 0);
      CHECK(RootExp(y.phase(members.back()), y.modulus()) == bx.omegas[k]);
    }
  }
}

TEST_CASE("build_basis_E refuses generators of the wrong shape") {
  CHECK_THROWS_AS(build_basis_E(MonoMatrix({1, 2, 0}, {0, 0, 0}, 3), Residue(2, 3)), Error);
}

TEST_CASE("charpoly_Vstar_closed_form examples") {
  const ClosedForm f1 = charpoly_Vstar_closed_form(3, 2, 1, 1);
  CHECK(f1.to_string() == "Phi_9(x)");
  CHECK(f1.expand() == cyclotomic_polynomial(9));
  const ClosedForm f3 = charpoly_Vstar_closed_form(3, 2, 1, 3);
  CHECK(f3.to_string() == "(x^3-1)^2");
  CHECK(f3 == charpoly_Vstar_closed_form(3, 2, 1, 0));
  CHECK(charpoly_Vstar_closed_form(3, 2, 0, 3).to_string() == "Phi_3(x)^3");
  CHECK(charpoly_Vstar_closed_form(3, 2, 0, 0).to_string() == "(x-1)^6");
  CHECK_THROWS_AS(charpoly_Vstar_closed_form(3, 2, 2, 0), Error);

  for (i64 p : {3, 5}) {
    for (int n = 1; n <= 3; ++n) {
      const i64 d = checked_pow(p, n);
      for (int a = 0; a < n; ++a) {
        for (i64 k = 0; k < d; ++k) {
          const ClosedForm f = charpoly_Vstar_closed_form(p, n, a, k);
          const Spectrum s = f.spectrum(d);
          CHECK(static_cast<i64>(s.exps.size()) == euler_phi(d));
          const bool cyc = f.kind == ClosedForm::Kind::kCyclotomic;
          CHECK(s.exps == roots_by_listing(cyc, f.base, f.exponent, d));
        }
      }
    }
  }
}

TEST_CASE("index sets") {
  CHECK(unit_indices(3, 2) == std::vector<i64>{1, 2, 4, 5, 7, 8});
  CHECK(p_multiple_indices(3, 2) == std::vector<i64>{0, 3, 6});
}

TEST_CASE("verify_restriction examples") {
  const RestrictionReport ok = verify_restriction(trivial_group(3, 2, 4, 9));
  CHECK(ok.passed());
  for (const char* name : {"A_pa_identity", "closed_form_Vstar", "Vp_permutation_like", "A_on_Vp_identity",
                           "Vp_charpoly_form", "A_permutes_E"}) {
    CAPTURE(name);
    CHECK(check_named(ok, name).applicable);
    CHECK(check_named(ok, name).passed);
  }
  REQUIRE(ok.observed_j.has_value());
  CHECK(*ok.observed_j == 0);
  REQUIRE(ok.restricted.size() == 1);
  CHECK(ok.restricted.front().n == 1);

  // A unit-orbit phase of zeta_3 breaks A permuting E, and the group.
  const GroupSpec bad = GroupSpec::from_phases(3, 2, Residue(4, 9), {{0, 0}, {1, 3}, {2, 0}, {3, 0}, {6, 0}}, 9);
  const RestrictionReport rb = verify_restriction(bad);
  CHECK_FALSE(rb.passed());
  CHECK_FALSE(check_named(rb, "A_permutes_E").passed);
  CHECK(check_named(rb, "A_permutes_E").witness.find("orbit of 1") != std::string::npos);
  CHECK_FALSE(is_permutation_like_group(bad, false).permutation_like);

  // j in (x-1)^(p^(n-1) - p j) (x^p - 1)^j: 0 for r = 10, 2 for r = 4 mod 27.
  auto phases = trivial_phases(27, 10);
  const GroupSpec h = GroupSpec::from_phases(3, 3, Residue(10, 27), phases, 27);
  const RestrictionReport rh = verify_restriction(h);
  CHECK(rh.passed());
  REQUIRE(rh.observed_j.has_value());
  CHECK(*rh.observed_j == 0);
  const GroupSpec h4 = GroupSpec::from_phases(3, 3, Residue(4, 27), trivial_phases(27, 4), 27);
  const RestrictionReport r4 = verify_restriction(h4);
  CHECK(r4.passed());
  REQUIRE(r4.observed_j.has_value());
  CHECK(*r4.observed_j == 2);
  CHECK_FALSE(check_named(r4, "A_on_Vp_identity").applicable);

  CHECK_THROWS_AS(verify_restriction(trivial_group(3, 1, 2, 6)), Error);
}

TEST_CASE("certify_group examples") {
  // Case 2: p = 3, n = 1, r = 2.
  const GroupSpec s3 = trivial_group(3, 1, 2, 6);
  const CertifyOutcome o = certify_group(s3);
  REQUIRE(o.certificate.has_value());
  const Certificate& c = *o.certificate;
  CHECK(c.case_label == 2);
  CHECK(c.image_C == std::vector<i64>{1, 2, 0});
  CHECK(c.image_A == std::vector<i64>{0, 2, 1});
  i64 fixed = 0;
  for (i64 k = 0; k < 3; ++k) fixed += c.image_A[static_cast<std::size_t>(k)] == k;
  CHECK(fixed == 1);
  CHECK(trace(s3.A(), CycloField::get(6)).as_rational() == mpq_class(1));
  CHECK(c.verified);
  CHECK(c.oracle_checked);
  REQUIRE(o.verification.has_value());
  CHECK(o.verification->ok);
  CHECK(images_consistent(c));

  // <C>, d = 9: Pi(C) is the 9-cycle and A maps to the identity.
  const GroupSpec cyc = trivial_group(3, 2, 1, 9);
  const CertifyOutcome oc = certify_group(cyc);
  REQUIRE(oc.certificate.has_value());
  CHECK(oc.certificate->case_label == 1);
  for (i64 k = 0; k < 9; ++k) {
    CHECK(oc.certificate->image_C[static_cast<std::size_t>(k)] == (k + 1) % 9);
    CHECK(oc.certificate->image_A[static_cast<std::size_t>(k)] == k);
  }
  CHECK(oc.certificate->verified);

  // Case 3: p = 3, n = 2, r = 2 has s = 2, a = 1; 2*2 + 3*(-1) = 1.
  const GroupSpec g = trivial_group(3, 2, 2, 18);
  const CertifyOutcome o3 = certify_group(g);
  REQUIRE(o3.certificate.has_value());
  const Certificate& c3 = *o3.certificate;
  CHECK(c3.case_label == 3);
  CHECK(c3.evidence.t == 2);
  CHECK(c3.evidence.m == -1);
  const BasisE& basis = c3.basis;
  CHECK(in_basis(power(g.A(), 4), basis).is_permutation());
  CHECK(in_basis(power(g.A(), -3), basis).is_permutation());
  CHECK(c3.verified);
  REQUIRE(c3.evidence.restriction.has_value());
  CHECK(c3.evidence.restriction->passed());

  // Case 1 with a shift: A^3 = C^3 for r = 4.
  const MonoMatrix a0 = normalizer_A(3, 2, Residue(4, 9), trivial_phases(9, 4), 9);
  const GroupSpec shifted = GroupSpec::from_generator(3, 2, multiply(a0, cycle_C(3, 2, 9)));
  const CertifyOutcome o1 = certify_group(shifted);
  REQUIRE(o1.certificate.has_value());
  CHECK(o1.certificate->case_label == 1);
  CHECK(o1.certificate->shift == 1);
  CHECK(o1.certificate->verified);

  // Not permutation-like: no certificate, with the failing element.
  const GroupSpec bad = GroupSpec::from_phases(3, 2, Residue(4, 9), {{0, 0}, {1, 3}, {2, 0}, {3, 0}, {6, 0}}, 9);
  const CertifyOutcome ob = certify_group(bad);
  CHECK_FALSE(ob.certificate.has_value());
  CHECK(ob.verdict.failing_element.has_value());
}

TEST_CASE("certificates from a random family all verify and respect the relation") {
  std::mt19937_64 rng(59);
  i64 certified = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const i64 r = std::vector<i64>{1, 2, 4, 5, 7, 8}[rng() % 6];
    auto phases = trivial_phases(9, r);
    for (auto& [rep, e] : phases) e = (rng() % 3 == 0) ? static_cast<i64>(rng() % 18) : 0;
    const GroupSpec g = GroupSpec::from_phases(3, 2, Residue(r, 9), phases, 18);
    const CertifyOutcome o = certify_group(g);
    if (!o.verdict.permutation_like) {
      CHECK_FALSE(o.certificate.has_value());
      continue;
    }
    REQUIRE(o.certificate.has_value());
    CHECK(o.certificate->verified);
    CHECK(images_consistent(*o.certificate));
    ++certified;
  }
  CHECK(certified > 20);
}

TEST_CASE("corrupted certificates") {
  Certificate c = *certify_group(trivial_group(3, 1, 2, 6)).certificate;
  std::swap(c.image_A[0], c.image_A[1]);
  CHECK_FALSE(images_consistent(c));
  const VerificationResult v = verify_certificate(c);
  CHECK_FALSE(v.ok);
  CHECK(v.generator == "A");
  CHECK(v.row >= 0);
  CHECK(v.col >= 0);

  Certificate short_c = *certify_group(trivial_group(3, 1, 2, 6)).certificate;
  short_c.image_C.pop_back();
  CHECK_FALSE(images_consistent(short_c));
}
