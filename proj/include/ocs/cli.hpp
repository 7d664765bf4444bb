#pragma once

// Subcommand implementations behind the `ocsreconf` executable. Each returns
// the process exit code and writes only to the given streams / output files.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace ocs::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kParseError = 2,
  kInvalidInstance = 3,
  kNotProportional = 4,
  kInfeasibleDecomposition = 5,
  kBudgetExceeded = 6,
  kUsage = 64,
  kInternal = 70,
};

int cmd_validate(const std::string& instance_path, std::ostream& out, std::ostream& err);

struct SolveArgs {
  std::string instance_path;
  std::string algo = "bimcf";  // bimcf | greedy | oracle
  bool strict = true;
  std::string order;  // comma-separated OCS permutation for greedy; empty = ascending
  std::string backend = "ssp";
  std::string out_path;  // empty = stdout
  std::uint64_t budget = 20'000'000;
  std::string dump_arcs_path;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);

struct GenArgs {
  std::size_t m = 0;
  std::size_t n = 0;
  std::string r;
  std::string a_prime;
  std::string b_prime;
  std::string churn = "0";
  std::uint64_t seed = 0;
  std::string out_path;   // empty = stdout
  std::string meta_path;  // empty = <out_path without .json>.meta.json, none for stdout
};

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);

struct BenchArgs {
  std::string config_path;
  std::string out_path;        // CSV; empty = stdout
  std::string error_log_path;  // empty = err stream
  int jobs = 1;
};

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

}  // namespace ocs::cli
