#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "permlike/serialize.hpp"

namespace {

using permlike::i64;

// "3,5,7" or "1-3" or a mix such as "1-3,5".
std::vector<i64> parse_list(const std::string& text) {
  std::vector<i64> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) {
      const std::size_t dash = item.find('-', 1);
      try {
        if (dash == std::string::npos) {
          out.push_back(std::stoll(item));
        } else {
          const i64 lo = std::stoll(item.substr(0, dash));
          const i64 hi = std::stoll(item.substr(dash + 1));
          for (i64 v = lo; v <= hi; ++v) out.push_back(v);
        }
      } catch (const std::exception&) {
        throw permlike::InputError("bad list item '" + item + "'");
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = permlike::cli;
  CLI::App app{"Permutation-like matrix groups with a normal maximal cycle"};
  app.require_subcommand(1);

  cli::AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze one group given as JSON");
  analyze_cmd->add_option("file", analyze.input, "Group JSON file, or - for stdin")->required();
  analyze_cmd->add_option("--json", analyze.json_out, "Also write the JSON report (- for stdout only)");
  bool no_types = false;
  analyze_cmd->add_flag("--no-cycle-types", no_types, "Skip per-element cycle types");

  cli::EnumerateOptions enumerate;
  std::string primes = "3", ns = "1", rs;
  std::string records = "interesting";
  bool no_oracle = false, no_structure = false;
  auto* enum_cmd = app.add_subcommand("enumerate", "Sweep r and orbit phases, certify every permutation-like group");
  enum_cmd->add_option("--p", primes, "Primes, e.g. 3,5")->capture_default_str();
  enum_cmd->add_option("--n", ns, "Exponents, e.g. 1-3")->capture_default_str();
  enum_cmd->add_option("--modulus", enumerate.config.modulus, "Phase modulus M (default (p-1) p^n)");
  enum_cmd->add_option("--r", rs, "Units r to sweep (default: all)");
  enum_cmd->add_option("--out", enumerate.out, "JSON report path (CSV written alongside)");
  enum_cmd->add_option("--csv", enumerate.csv, "CSV report path");
  enum_cmd->add_option("--samples", enumerate.config.samples, "Draws per sampled block")->capture_default_str();
  enum_cmd->add_option("--exhaustive-cap", enumerate.config.exhaustive_cap, "Largest phase space swept exhaustively")
      ->capture_default_str();
  enum_cmd->add_option("--element-cap", enumerate.config.element_cap, "Skip groups larger than this")
      ->capture_default_str();
  enum_cmd->add_option("--seed", enumerate.config.seed, "Sampling seed")->capture_default_str();
  enum_cmd->add_option("--records", records, "interesting or all")
      ->check(CLI::IsMember({"interesting", "all"}))
      ->capture_default_str();
  enum_cmd->add_flag("--explore-p2", enumerate.config.explore_p2, "Allow p = 2 (exploratory)");
  enum_cmd->add_flag("--no-oracle", no_oracle, "Skip the dense certificate check");
  enum_cmd->add_flag("--no-structure", no_structure, "Skip centralizer, split and trace checks");
  enum_cmd->add_flag("--timing", enumerate.config.timing, "Include timings (reports stop being byte-stable)");

  cli::CertifyCommandOptions certify;
  auto* certify_cmd = app.add_subcommand("certify", "Emit a conjugation certificate for a group");
  certify_cmd->add_option("file", certify.input, "Group JSON, or certificate JSON with --verify-only")->required();
  certify_cmd->add_flag("--oracle", certify.oracle, "Confirm with the dense verifier");
  certify_cmd->add_flag("--verify-only", certify.verify_only, "Replay a certificate through the dense verifier");
  certify_cmd->add_flag("--exact-det", certify.exact_determinant, "Exact determinant instead of the modular test");
  certify_cmd->add_option("--out", certify.out, "Certificate output path");

  cli::CharpolyOptions charpoly;
  std::string ks;
  auto* charpoly_cmd = app.add_subcommand("charpoly", "Char polys on V* against the closed form, as CSV");
  charpoly_cmd->add_option("--p", charpoly.p)->capture_default_str();
  charpoly_cmd->add_option("--n", charpoly.n)->capture_default_str();
  charpoly_cmd->add_option("--a", charpoly.a)->capture_default_str();
  charpoly_cmd->add_option("--r", charpoly.r, "Unit of order p^a (default 1 + p^(n-a))");
  charpoly_cmd->add_option("--k", ks, "k values, e.g. 0-8");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kMalformedInput;
  }

  try {
    if (*analyze_cmd) {
      analyze.cycle_types = !no_types;
      return cli::cmd_analyze(analyze, std::cout, std::cerr);
    }
    if (*enum_cmd) {
      for (i64 p : parse_list(primes)) enumerate.config.primes.push_back(p);
      for (i64 n : parse_list(ns)) enumerate.config.ns.push_back(static_cast<int>(n));
      enumerate.config.r_values = parse_list(rs);
      enumerate.config.oracle = !no_oracle;
      enumerate.config.structure_checks = !no_structure;
      enumerate.config.all_records = records == "all";
      enumerate.config.threads = cli::threads_from_env();
      return cli::cmd_enumerate(enumerate, std::cout, std::cerr);
    }
    if (*certify_cmd) return cli::cmd_certify(certify, std::cout, std::cerr);
    if (*charpoly_cmd) {
      charpoly.ks = parse_list(ks);
      return cli::cmd_charpoly(charpoly, std::cout, std::cerr);
    }
  } catch (const permlike::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kMalformedInput;
  }
  return cli::kMalformedInput;
}
