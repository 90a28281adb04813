#include <doctest.h>

#include "permlike/serialize.hpp"

using namespace permlike;

TEST_CASE("default modulus is s p^n") {
  CHECK(default_modulus(3, 1, Residue(2, 3)) == 6);
  CHECK(default_modulus(3, 2, Residue(4, 9)) == 9);
  CHECK(default_modulus(5, 1, Residue(2, 5)) == 20);
  CHECK(default_modulus(5, 1, Residue(4, 5)) == 10);
}

TEST_CASE("group JSON round trips") {
  const GroupSpec g = group_from_json(parse_json(R"({"p": 3, "n": 2, "r": 4, "phases": [{"orbit_rep": 1, "exp": 3}]})"));
  CHECK(g.modulus() == 9);
  REQUIRE(g.phases().has_value());
  CHECK(g.phases()->at(0) == 0);
  CHECK(g.phases()->at(1) == 3);
  const GroupSpec back = group_from_json(to_json(g));
  CHECK(back.A() == g.A());
  CHECK(back.modulus() == g.modulus());
  CHECK(to_json(back) == to_json(g));

  const GroupSpec gen = GroupSpec::from_generator(3, 1, MonoMatrix({0, 2, 1}, {0, 1, 2}, 3));
  const json jg = to_json(gen);
  CHECK(jg.contains("generator"));
  CHECK(group_from_json(jg).A() == gen.A());

  const MonoMatrix x({2, 0, 1}, {1, 4, 5}, 6);
  CHECK(mono_from_json(to_json(x)) == x);
}

TEST_CASE("malformed group JSON is an InputError") {
  CHECK_THROWS_AS(parse_json("{not json"), InputError);
  CHECK_THROWS_AS(group_from_json(parse_json(R"({"p": 3, "n": 2})")), InputError);
  CHECK_THROWS_AS(group_from_json(parse_json(R"({"p": 3, "n": 2, "r": "four"})")), InputError);
  CHECK_THROWS_AS(group_from_json(parse_json(R"({"p": 3, "n": 2, "r": 3})")), InputError);
  CHECK_THROWS_AS(group_from_json(parse_json(R"({"p": 3, "n": 2, "r": 4, "phases": [{"orbit_rep": 4, "exp": 0}]})")),
                  InputError);
  CHECK_THROWS_AS(
      group_from_json(parse_json(R"({"p": 3, "n": 1, "r": 2, "phases": [{"orbit_rep": 1, "exp": 0}, {"orbit_rep": 1, "exp": 1}]})")),
      InputError);
  CHECK_THROWS_AS(group_from_json(parse_json(R"({"p": 3, "n": 2, "r": 4, "M": 12})")), InputError);
  CHECK_THROWS_AS(mono_from_json(parse_json(R"({"d": 2, "M": 3, "sigma": [0, 0], "phase": [0, 0]})")), InputError);
}

TEST_CASE("verdict JSON carries the witness") {
  const GroupSpec bad = group_from_json(parse_json(R"({"p": 3, "n": 2, "r": 4, "phases": [{"orbit_rep": 1, "exp": 3}]})"));
  const json v = to_json(is_permutation_like_group(bad, false));
  CHECK(v.at("verdict") == "not permutation-like");
  CHECK(v.at("witness").at("element") == "A");
  CHECK(v.at("witness").at("failure").at("kind") == "not_rational");
  CHECK(v.at("witness").at("char_factors").at("text").get<std::string>().find("x^3") != std::string::npos);
}

TEST_CASE("certificate JSON round trips and still verifies") {
  const GroupSpec g = group_from_json(parse_json(R"({"p": 3, "n": 2, "r": 2})"));
  const CertifyOutcome o = certify_group(g);
  REQUIRE(o.certificate.has_value());
  const json j = to_json(*o.certificate);
  CHECK(j.at("case") == 3);
  CHECK(j.at("perm_images").at("C").size() == 9);
  CHECK(j.at("verified") == true);
  CHECK(j.at("oracle_checked") == true);
  CHECK(j.at("basis_order").size() == 9);
  const Certificate back = certificate_from_json(parse_json(j.dump()));
  CHECK(back.image_A == o.certificate->image_A);
  CHECK(back.f_coords == o.certificate->f_coords);
  CHECK(verify_certificate(back).ok);

  json broken = j;
  broken.erase("perm_images");
  CHECK_THROWS_AS(certificate_from_json(broken), InputError);
}

TEST_CASE("restriction report JSON") {
  const GroupSpec g = group_from_json(parse_json(R"({"p": 3, "n": 2, "r": 4})"));
  const json r = to_json(verify_restriction(g));
  CHECK(r.at("passed") == true);
  CHECK(r.at("checks").size() == 6);
  CHECK(r.at("observed_j") == 0);
  CHECK(r.at("restricted").at("n") == 1);
}
