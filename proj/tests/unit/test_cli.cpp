#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "permlike/certify.hpp"
#include "permlike/serialize.hpp"

using namespace permlike;
using namespace permlike::cli;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("permlike_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(PERMLIKE_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("analyze examples") {
  std::ostringstream out, err;
  AnalyzeOptions opts;
  opts.input = write_file("s3.json", R"({"p": 3, "n": 1, "r": 2})");
  CHECK(cmd_analyze(opts, out, err) == kOk);
  CHECK(out.str().find("permutation-like: yes; case 2; certified") != std::string::npos);
  CHECK(out.str().find("orbits: {0} {1,2}") != std::string::npos);

  std::ostringstream out2, err2;
  opts.input = write_file("diag.json", R"({"p": 3, "n": 2, "r": 1, "M": 9, "phases": [{"orbit_rep": 1, "exp": 3}]})");
  CHECK(cmd_analyze(opts, out2, err2) == kOk);
  CHECK(out2.str().find("permutation-like: no; witness A") != std::string::npos);
  CHECK(out2.str().find("trace = ") != std::string::npos);

  std::ostringstream out3, err3;
  opts.input = write_file("r4.json", R"({"p": 3, "n": 2, "r": 4})");
  opts.json_out = "-";
  CHECK(cmd_analyze(opts, out3, err3) == kOk);
  const json report = parse_json(out3.str());
  CHECK(report.at("certificate").at("case") == 1);
  CHECK(report.at("restriction").at("passed") == true);
  CHECK(report.at("decomposition").at("a") == 1);

  opts.input = write_file("broken.json", R"({"p": 3)");
  std::ostringstream sink;
  CHECK_THROWS_AS(cmd_analyze(opts, sink, sink), InputError);
}

TEST_CASE("certify examples") {
  std::ostringstream out, err;
  CertifyCommandOptions opts;
  opts.input = write_file("s3.json", R"({"p": 3, "n": 1, "r": 2})");
  opts.oracle = true;
  opts.out = (scratch_dir() / "s3_cert.json").string();
  CHECK(cmd_certify(opts, out, err) == kOk);
  const json cert = parse_json(slurp(*opts.out));
  CHECK(cert.at("verified") == true);
  CHECK(cert.at("oracle_checked") == true);
  CHECK(cert.at("perm_images").at("A") == json::array({0, 2, 1}));

  // Replaying the certificate verifies; corrupting Pi(A) gives exit 4.
  CertifyCommandOptions replay;
  replay.verify_only = true;
  replay.input = *opts.out;
  std::ostringstream rout, rerr;
  CHECK(cmd_certify(replay, rout, rerr) == kOk);

  json bad = cert;
  bad["perm_images"]["A"] = json::array({1, 0, 2});
  replay.input = write_file("bad_cert.json", bad.dump());
  std::ostringstream bout, berr;
  CHECK(cmd_certify(replay, bout, berr) == kVerificationFailed);
  CHECK(berr.str().find("at generator A, row") != std::string::npos);

  // <C>: the identity reordering.
  CertifyCommandOptions cyc;
  cyc.input = write_file("cyc.json", R"({"p": 3, "n": 2, "r": 1})");
  std::ostringstream cout_, cerr_;
  CHECK(cmd_certify(cyc, cout_, cerr_) == kOk);
  const json cc = parse_json(cout_.str());
  for (int k = 0; k < 9; ++k) CHECK(cc.at("perm_images").at("A")[k] == k);

  // Not permutation-like: exit 3 with the witness.
  CertifyCommandOptions no;
  no.input = write_file("no.json", R"({"p": 3, "n": 2, "r": 4, "phases": [{"orbit_rep": 1, "exp": 3}]})");
  std::ostringstream nout, nerr;
  CHECK(cmd_certify(no, nout, nerr) == kNotPermutationLike);
  CHECK(nerr.str().find("not permutation-like: A") != std::string::npos);
}

TEST_CASE("charpoly examples") {
  std::ostringstream out, err;
  CharpolyOptions opts;
  CHECK(cmd_charpoly(opts, out, err) == kOk);
  const std::string csv = out.str();
  CHECK(csv.find("1,1,") != std::string::npos);
  std::istringstream lines(csv);
  std::string line;
  int rows = 0, not_applicable = 0;
  while (std::getline(lines, line)) {
    if (line.starts_with("1,1,")) {
      CHECK(line.find(",Phi_9(x),Phi_9,Phi_9,true") != std::string::npos);
    }
    if (line.starts_with("1,0,")) {
      CHECK(line.find(",(x^3-1)^2,") != std::string::npos);
      CHECK(line.ends_with(",true"));
    }
    if (line.find("hypothesis not applicable") != std::string::npos) {
      CHECK(line.starts_with("3,"));
      ++not_applicable;
    }
    ++rows;
  }
  CHECK(rows == 1 + 3 * 9);
  CHECK(not_applicable == 9);
  CHECK(err.str().empty());

  CharpolyOptions bad;
  bad.a = 2;
  CHECK_THROWS_AS(cmd_charpoly(bad, out, err), InputError);
}

TEST_CASE("enumerate examples") {
  EnumerateOptions opts;
  opts.config.primes = {3};
  opts.config.ns = {1};
  opts.config.modulus = 3;
  opts.config.all_records = true;
  opts.out = (scratch_dir() / "sweep31.json").string();
  std::ostringstream out, err;
  CHECK(cmd_enumerate(opts, out, err) == kOk);
  const json report = parse_json(slurp(*opts.out));
  i64 configs = 0;
  for (const auto& b : report.at("blocks")) configs += b.at("configs").get<i64>();
  CHECK(configs == 27 + 9);
  CHECK(report.at("totals").at("violations") == 0);
  CHECK(out.str().find("violations: 0") != std::string::npos);
  const std::string csv = slurp((scratch_dir() / "sweep31.csv").string());
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 36);

  // Byte-identical reruns.
  std::ostringstream again_out, again_err;
  const std::string first = slurp(*opts.out);
  CHECK(cmd_enumerate(opts, again_out, again_err) == kOk);
  CHECK(slurp(*opts.out) == first);

  EnumerateOptions empty;
  std::ostringstream eout, eerr;
  CHECK(cmd_enumerate(empty, eout, eerr) == kOk);
  CHECK(parse_json(eout.str()).at("blocks").empty());

  EnumerateOptions two;
  two.config.primes = {2};
  two.config.ns = {1};
  CHECK_THROWS_AS(cmd_enumerate(two, eout, eerr), Error);
}

TEST_CASE("p = 3, n = 2, M = 9, r = 4: with A^3 = I, permutation-like iff every omega is trivial") {
  SweepConfig cfg;
  cfg.primes = {3};
  cfg.ns = {2};
  cfg.modulus = 9;
  cfg.r_values = {4};
  cfg.all_records = true;
  cfg.oracle = false;
  const SweepReport report = run_sweep(cfg);
  REQUIRE(report.records.size() == 9 * 9 * 9 * 9 * 9);
  const OrbitPartition part = mu_orbits(9, Residue(4, 9));
  i64 with_identity = 0, positives = 0, agree = 0;
  for (const SweepRecord& rec : report.records) {
    std::map<i64, i64> by_rep;
    for (std::size_t i = 0; i < part.orbits.size(); ++i) by_rep[part.orbits[i].rep] = rec.phases[i];
    const GroupSpec g = GroupSpec::from_phases(3, 2, Residue(4, 9), by_rep, 9);
    if (!power(g.A(), 3).is_identity()) continue;
    ++with_identity;
    const BasisBuild b = build_basis_E(g);
    bool units_trivial = true, all_trivial = true;
    for (std::size_t k = 0; k < b.omegas.size(); ++k) {
      if (b.omegas[k].is_one()) continue;
      all_trivial = false;
      if (part.orbits[k].rep % 3 != 0) units_trivial = false;
    }
    // A^3 = I already forces the unit-orbit products to be trivial.
    CHECK(units_trivial);
    positives += rec.permutation_like;
    agree += all_trivial == rec.permutation_like;
  }
  CHECK(with_identity == 27);
  CHECK(positives == 1);
  CHECK(agree == with_identity);
  CHECK(report.violations() == 0);
}

TEST_CASE("the installed tool maps failures to exit codes") {
  const std::string good = write_file("tool_s3.json", R"({"p": 3, "n": 1, "r": 2})");
  const std::string no = write_file("tool_no.json", R"({"p": 3, "n": 2, "r": 4, "phases": [{"orbit_rep": 1, "exp": 3}]})");
  const std::string broken = write_file("tool_broken.json", "{");
  CHECK(run_tool("analyze " + good) == 0);
  CHECK(run_tool("analyze " + broken) == 2);
  CHECK(run_tool("analyze") == 2);
  CHECK(run_tool("bogus") == 2);
  CHECK(run_tool("--help") == 0);
  CHECK(run_tool("certify --oracle " + good) == 0);
  CHECK(run_tool("certify " + no) == 3);
  CHECK(run_tool("charpoly --p 3 --n 2 --a 1") == 0);
  CHECK(run_tool("charpoly --p 4") == 2);
  CHECK(run_tool("enumerate --p 3 --n 1") == 0);
  CHECK(run_tool("enumerate --p 2 --n 1") == 2);
  CHECK(run_tool("enumerate --p 2 --n 1 --explore-p2") == 0);

  const std::string cert_path = (scratch_dir() / "tool_cert.json").string();
  REQUIRE(run_tool("certify --oracle --out " + cert_path + " " + good) == 0);
  json bad = parse_json(slurp(cert_path));
  bad["perm_images"]["C"] = json::array({2, 0, 1});
  const std::string bad_path = write_file("tool_bad_cert.json", bad.dump());
  CHECK(run_tool("certify --verify-only " + cert_path) == 0);
  CHECK(run_tool("certify --verify-only " + bad_path) == 4);
}
