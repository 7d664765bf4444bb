#pragma once

// Benchmark harness: generates instances over a parameter grid, runs the
// selected algorithms, re-verifies every result and writes CSV rows.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ocs/flow.hpp"
#include "ocs/workload.hpp"

namespace ocs {

inline constexpr const char* kCsvHeader =
    "instance_id,algo,m,n,total_links,rewires,rewire_ratio,solve_ms,mcf_invocations,feasible";

/// Oracle runs are limited to instances with at most this many logical links.
inline constexpr Count kOracleMaxLinks = 16;

struct GridPoint {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Count> r;
  std::vector<Count> a_prime;
  std::vector<Count> b_prime;
  ChurnFraction churn;
};

struct BenchConfig {
  std::vector<GridPoint> grid;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> algos;  // subset of {bimcf, greedy, oracle}
  std::uint64_t oracle_budget = 20'000'000;
  McfBackend backend = McfBackend::kSuccessiveShortestPath;
  int jobs = 1;
};

/// Grid entries need "m", "n" and "churn". "r", "a_prime" and "b_prime" may be
/// arrays, a single integer broadcast to the right length, or omitted (all ones).
/// Throws ParseError.
BenchConfig parse_bench_config(const std::string& text);

struct BenchRecord {
  std::string instance_id;
  std::string algo;
  std::size_t m = 0;
  std::size_t n = 0;
  Count total_links = 0;
  Count rewires = 0;
  double rewire_ratio = 0.0;
  double solve_ms = 0.0;
  int mcf_invocations = 0;
  bool feasible = true;

  std::string csv_row() const;
};

struct BenchSummary {
  std::string algo;
  std::size_t rows = 0;
  double geomean_solve_ms = 0.0;
  double mean_rewire_ratio = 0.0;
};

struct BenchReport {
  std::vector<BenchRecord> records;
  std::vector<BenchSummary> summaries;
  std::size_t errors = 0;                // failed runs, written to the error log
  std::size_t feasibility_failures = 0;  // results rejected by the verifier
  std::size_t order_violations = 0;      // oracle > other, or bimcf > greedy at n = 2
  std::size_t skipped = 0;
};

/// Writes header, rows and `#` summary lines to `csv`; failures go to `errors`.
BenchReport run_bench(const BenchConfig& config, std::ostream& csv, std::ostream& errors);

}  // namespace ocs
