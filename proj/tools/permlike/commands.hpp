#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sweep.hpp"

namespace permlike::cli {

enum ExitCode : int {
  kOk = 0,
  kMalformedInput = 2,
  kNotPermutationLike = 3,
  kVerificationFailed = 4,
};

struct AnalyzeOptions {
  std::string input;  // path, or "-" for stdin
  std::optional<std::string> json_out;
  bool cycle_types = true;
};

struct CertifyCommandOptions {
  std::string input;
  bool oracle = false;
  bool verify_only = false;
  bool exact_determinant = false;
  std::optional<std::string> out;
};

struct CharpolyOptions {
  i64 p = 3;
  int n = 2;
  int a = 1;
  std::optional<i64> r;
  std::vector<i64> ks;  // empty: every k in [0, p^n)
};

struct EnumerateOptions {
  SweepConfig config;
  std::optional<std::string> out;  // JSON path; the CSV goes next to it
  std::optional<std::string> csv;
};

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);
int cmd_certify(const CertifyCommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_charpoly(const CharpolyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_enumerate(const EnumerateOptions& opts, std::ostream& out, std::ostream& err);

/// Thread count from PERMLIKE_THREADS, defaulting to the hardware count.
int threads_from_env();

}  // namespace permlike::cli
