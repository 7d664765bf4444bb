#pragma once

// Comparison algorithms: the greedy per-OCS min-cost-flow baseline and an
// exhaustive branch-and-bound oracle for small instances.

#include <cstdint>
#include <vector>

#include "ocs/flow.hpp"
#include "ocs/model.hpp"
#include "ocs/reconfig.hpp"

namespace ocs {

/// Raised when the greedy remainder cannot host OCS `ocs()`.
class GreedyStepInfeasible : public InfeasibleDecomposition {
 public:
  GreedyStepInfeasible(const std::string& what, int k)
      : InfeasibleDecomposition(what, {k}), k_(k) {}

  int ocs() const { return k_; }

 private:
  int k_;
};

struct GreedyOptions {
  /// Permutation of 0..n-1; empty means ascending index.
  std::vector<int> order;
  McfBackend backend = McfBackend::kSuccessiveShortestPath;
};

/// Fixes OCSes one at a time, each keeping as many of its own old links as
/// the remaining target allows. No look-ahead.
SolveResult greedy_solve(const Instance& instance, const GreedyOptions& options = {});

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InfeasibleInstance : public Error {
 public:
  using Error::Error;
};

enum class CellOrder { kRowMajor, kColumnMajor };

struct OracleOptions {
  std::uint64_t node_budget = 20'000'000;
  CellOrder cell_order = CellOrder::kRowMajor;
};

struct OracleResult {
  Matching best;
  Count min_rewires = 0;
  std::uint64_t nodes = 0;
};

/// Certified minimum of sum (u - x)^+ over all feasible x.
/// Throws BudgetExceeded or InfeasibleInstance.
OracleResult oracle_min_rewires(const Instance& instance, const OracleOptions& options = {});

}  // namespace ocs
