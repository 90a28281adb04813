#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "permlike/numtheory.hpp"

namespace permlike::cli {

struct SweepConfig {
  std::vector<i64> primes;
  std::vector<int> ns;
  std::optional<i64> modulus;  // default (p - 1) p^n
  std::vector<i64> r_values;   // empty: every unit
  bool explore_p2 = false;
  bool oracle = true;
  bool structure_checks = true;
  i64 exhaustive_cap = 4'000'000;  // largest phase space swept exhaustively
  i64 samples = 1000;              // draws per sampled (p, n, r) block
  i64 element_cap = 10'000;        // larger groups are skipped
  std::uint64_t seed = 20240601;
  bool all_records = false;
  i64 negative_examples = 3;  // recorded per block when not recording all
  bool timing = false;
  int threads = 1;
};

struct SweepRecord {
  i64 p = 0;
  int n = 0;
  i64 r = 0;
  i64 modulus = 0;
  std::vector<i64> phases;  // per orbit, in orbit order
  bool skipped = false;
  bool permutation_like = false;
  bool certified = false;
  int case_label = 0;
  bool oracle_verified = false;
  std::string witness;
  std::vector<std::string> structure_check_failures;
  bool violation = false;
  double millis = 0;
};

struct RestrictionTally {
  i64 applicable = 0;
  i64 passed = 0;
};

struct BlockSummary {
  i64 p = 0;
  int n = 0;
  i64 r = 0;
  i64 modulus = 0;
  i64 orbits = 0;
  std::string mode;  // "exhaustive" or "sampled"
  i64 space = 0;     // M^orbits, saturated at INT64_MAX
  i64 draws = 0;
  i64 configs = 0;  // distinct phase assignments evaluated
  i64 permutation_like = 0;
  i64 certified = 0;
  i64 oracle_verified = 0;
  i64 skipped = 0;
  i64 violations = 0;
  i64 structure_check_failures = 0;
  i64 restriction_runs = 0;
  std::map<std::string, RestrictionTally> restriction_checks;  // every recursion level
  std::map<int, i64> cases;
  double millis = 0;
};

struct SweepReport {
  SweepConfig config;
  std::vector<BlockSummary> blocks;
  std::vector<SweepRecord> records;

  i64 total(i64 BlockSummary::*field) const;
  /// Violations at odd p; p = 2 anomalies are exploration only.
  i64 violations() const;
};

SweepReport run_sweep(const SweepConfig& config);

nlohmann::json to_json(const SweepReport& report);
std::string to_csv(const SweepReport& report);

}  // namespace permlike::cli
