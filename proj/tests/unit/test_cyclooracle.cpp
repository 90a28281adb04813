#include <doctest.h>

#include "oracles.hpp"
#include "permlike/certify.hpp"
#include "permlike/cyclooracle.hpp"

using namespace permlike;

namespace {

IntPoly ints(std::initializer_list<long> cs) {
  IntPoly out;
  for (long c : cs) out.emplace_back(c);
  return out;
}

std::map<i64, i64> trivial_phases(i64 d, i64 r) {
  std::map<i64, i64> out;
  for (const Orbit& o : mu_orbits(d, Residue(r, d)).orbits) out[o.rep] = 0;
  return out;
}

CycloNum eval(const CycloPoly& f, const CycloNum& x) {
  CycloNum acc(x.field());
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// det(t I - D) at an integer t, by elimination: an independent route to the
// char poly value.
CycloNum char_value_by_elimination(const DenseMatrix& dense, long t) {
  DenseMatrix m(dense.dim(), dense.field());
  for (std::size_t i = 0; i < dense.dim(); ++i) {
    for (std::size_t j = 0; j < dense.dim(); ++j) {
      m.at(i, j) = -dense.at(i, j);
      if (i == j) m.at(i, j) += CycloNum(dense.field(), mpq_class(t));
    }
  }
  return determinant(m);
}

}  // namespace

TEST_CASE("cyclotomic_polynomial examples") {
  CHECK(cyclotomic_polynomial(1) == ints({-1, 1}));
  CHECK(cyclotomic_polynomial(3) == ints({1, 1, 1}));
  CHECK(cyclotomic_polynomial(9) == ints({1, 0, 0, 1, 0, 0, 1}));
  CHECK(cyclotomic_polynomial(6) == ints({1, -1, 1}));
  CHECK(cyclotomic_polynomial(12) == ints({1, 0, -1, 0, 1}));
  for (i64 m = 1; m <= 60; ++m) {
    CHECK(static_cast<i64>(cyclotomic_polynomial(m).size()) == euler_phi(m) + 1);
  }
  // x^n - 1 is the product of Phi_k over k | n.
  for (i64 n : {12, 18, 27, 30}) {
    IntPoly prod = ints({1});
    for (i64 k : divisors(n)) prod = multiply(prod, cyclotomic_polynomial(k));
    IntPoly expected(static_cast<std::size_t>(n + 1), 0);
    expected.front() = -1;
    expected.back() = 1;
    CHECK(prod == expected);
  }
  CHECK(to_string(cyclotomic_polynomial(3)) == "x^2 + x + 1");
}

TEST_CASE("field arithmetic") {
  const FieldPtr f9 = CycloField::get(9);
  CHECK(f9->degree() == 6);
  const CycloNum z = CycloNum::root(f9, 1);
  CycloNum z9 = CycloNum(f9, mpq_class(1));
  for (int i = 0; i < 9; ++i) z9 = z9 * z;
  CHECK(z9 == CycloNum(f9, mpq_class(1)));
  // zeta_9^3 is a primitive cube root: w^2 + w + 1 = 0.
  const CycloNum w = CycloNum::root(f9, 3);
  CHECK((w * w + w + CycloNum(f9, mpq_class(1))).is_zero());
  // Sum of all 9th roots vanishes.
  CycloNum sum(f9);
  for (i64 e = 0; e < 9; ++e) sum += CycloNum::root(f9, e);
  CHECK(sum.is_zero());
  CHECK(CycloNum::root(f9, -1) * z == CycloNum(f9, mpq_class(1)));

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<mpq_class> cs(f9->degree());
    for (auto& c : cs) c = mpq_class(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
    const CycloNum x(f9, cs);
    if (x.is_zero()) continue;
    CHECK(x * x.inverse() == CycloNum(f9, mpq_class(1)));
  }
  CHECK_THROWS_WITH_AS(CycloNum(f9).inverse(), "inverse of zero", Error);

  CHECK(CycloNum::root(f9, 0).as_rational() == mpq_class(1));
  CHECK_FALSE(z.as_rational().has_value());
  CHECK_THROWS_AS(CycloField::get(5000), Error);
}

TEST_CASE("realize examples") {
  const FieldPtr f6 = CycloField::get(6);
  const DenseMatrix id = realize(MonoMatrix::identity(4), f6);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(id.at(i, j) == CycloNum(f6, mpq_class(i == j ? 1 : 0)));
    }
  }
  // Column j holds zeta^phase(j) in row sigma(j).
  const MonoMatrix x({1, 2, 0}, {1, 0, 2}, 3);
  const DenseMatrix dx = realize(x, f6);
  CHECK(dx.at(1, 0) == CycloNum::root(f6, 2));
  CHECK(dx.at(0, 2) == CycloNum::root(f6, 4));
  CHECK(dx.at(0, 0).is_zero());
  CHECK_THROWS_AS(realize(x, CycloField::get(4)), Error);

  std::mt19937_64 rng(43);
  const FieldPtr f12 = CycloField::get(12);
  for (int trial = 0; trial < 40; ++trial) {
    const i64 d = 1 + static_cast<i64>(rng() % 5);
    const MonoMatrix a = oracle::random_mono(rng, d, 12);
    const MonoMatrix b = oracle::random_mono(rng, d, 6);
    const DenseMatrix lhs = realize(multiply(a, b), f12);
    const DenseMatrix rhs = realize(a, f12) * realize(b, f12);
    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j) CHECK(lhs.at(i, j) == rhs.at(i, j));
    }
  }
}

TEST_CASE("char_poly_dense examples") {
  const FieldPtr f3 = CycloField::get(3);
  CHECK(equal(char_poly_dense(realize(cycle_C(3, 1, 3), f3)), embed(ints({-1, 0, 0, 1}), f3)));
  CHECK(equal(char_poly_dense(realize(MonoMatrix::identity(2), f3)), embed(ints({1, -2, 1}), f3)));
  const FieldPtr f9 = CycloField::get(9);
  const MonoMatrix a = normalizer_A(3, 2, Residue(4, 9), trivial_phases(9, 4), 9);
  // (x - 1)^3 (x^3 - 1)^2
  IntPoly expected = ints({1});
  for (int i = 0; i < 3; ++i) expected = multiply(expected, ints({-1, 1}));
  for (int i = 0; i < 2; ++i) expected = multiply(expected, ints({-1, 0, 0, 1}));
  CHECK(equal(char_poly_dense(realize(a, f9)), embed(expected, f9)));
}

TEST_CASE("factored and dense char polys agree on random monomial matrices") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const i64 d = 1 + static_cast<i64>(rng() % 9);
    const i64 m = std::vector<i64>{1, 2, 3, 4, 6, 9, 12, 18}[rng() % 8];
    const MonoMatrix x = oracle::random_mono(rng, d, m);
    const FieldPtr field = CycloField::get(x.modulus());
    const DenseMatrix dense = realize(x, field);
    const CycloPoly dense_poly = char_poly_dense(dense);
    CHECK(equal(dense_poly, expand_factors(char_factors(x), field)));
    CHECK(trace(x, field) == dense.trace());
    if (trial % 10 == 0) {
      for (long t : {0L, 2L, -3L}) {
        CHECK(eval(dense_poly, CycloNum(field, mpq_class(t))) == char_value_by_elimination(dense, t));
      }
    }
  }
}

TEST_CASE("determinant and the modular shortcut") {
  const FieldPtr f9 = CycloField::get(9);
  const DenseMatrix c = realize(cycle_C(3, 2, 9), f9);
  CHECK_FALSE(determinant(c).is_zero());
  CHECK(determinant_nonzero_mod_prime(c) == std::optional<bool>(true));
  DenseMatrix singular(2, f9);
  singular.at(0, 0) = CycloNum::root(f9, 1);
  singular.at(0, 1) = CycloNum::root(f9, 2);
  singular.at(1, 0) = CycloNum::root(f9, 2);
  singular.at(1, 1) = CycloNum::root(f9, 3);
  CHECK(determinant(singular).is_zero());
  CHECK_FALSE(determinant_nonzero_mod_prime(singular).has_value());
  // A permutation matrix has determinant its sign.
  const FieldPtr f1 = CycloField::get(1);
  CHECK(determinant(realize(MonoMatrix({1, 0, 2}, {0, 0, 0}, 1), f1)) == CycloNum(f1, mpq_class(-1)));
}

TEST_CASE("verify_certificate on built certificates") {
  const GroupSpec cyc = GroupSpec::from_phases(3, 2, Residue(1, 9), trivial_phases(9, 1), 9);
  const Certificate cert = build_certificate(cyc);
  const VerificationResult ok = verify_certificate(cert);
  CHECK(ok.ok);
  CHECK(ok.det_nonzero);
  CHECK(ok.det_method == "mod-prime");
  const VerificationResult exact = verify_certificate(cert, VerifyOptions{true});
  CHECK(exact.ok);
  CHECK(exact.det_method == "exact");

  Certificate bad = cert;
  std::swap(bad.image_C[0], bad.image_C[1]);
  const VerificationResult v = verify_certificate(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.generator == "C");
  CHECK(v.row >= 0);
  CHECK(v.col >= 0);

  const GroupSpec s3 = GroupSpec::from_phases(3, 1, Residue(2, 3), trivial_phases(3, 2), 6);
  Certificate moved_f = build_certificate(s3);
  CHECK(verify_certificate(moved_f).ok);
  moved_f.f_coords[1] = mod(moved_f.f_coords[1] + 1, moved_f.f_modulus);
  const VerificationResult vz = verify_certificate(moved_f);
  CHECK_FALSE(vz.ok);
  CHECK(vz.generator == "A");
}
