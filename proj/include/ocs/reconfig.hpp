#pragma once

// Bipartition + min-cost-flow reconfiguration solver.
//
// Two OCS groups are treated as two imaginary OCSes. The split of each target
// cell between them is a min-cost flow with the convex rewire cost
// (u1 - x)^+ + (u2 - c + x)^+, which is exact when both groups are single
// OCSes. Larger groups are split recursively until every group is one OCS.

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ocs/flow.hpp"
#include "ocs/model.hpp"

namespace ocs {

struct SolveResult {
  Matching matching;
  Count rewires = 0;
  double solver_millis = 0.0;
  int mcf_invocations = 0;
  std::string algo;
};

/// Raised when a sub-problem has no feasible flow (only possible on
/// non-proportional topologies or corrupted input).
class InfeasibleDecomposition : public Error {
 public:
  InfeasibleDecomposition(const std::string& what, std::vector<int> group)
      : Error(what), group_(std::move(group)) {}

  const std::vector<int>& group() const { return group_; }

 private:
  std::vector<int> group_;
};

using Groups = std::pair<std::vector<int>, std::vector<int>>;
using SplitRule = std::function<Groups(std::span<const int>)>;

/// First ceil(|group| / 2) indices in ascending order, then the rest.
Groups bipartition(std::span<const int> group);

struct TwoGroupSplit {
  IntMatrix c1;
  IntMatrix c2;
  Count merged_cost = 0;  // sum of f_ij(c1[i][j]), unshifted
};

struct TwoGroupOptions {
  McfBackend backend = McfBackend::kSuccessiveShortestPath;
  std::ostream* arc_dump = nullptr;
};

/// Splits c_target between the aggregated OCS groups `group1` and `group2`.
/// Throws InfeasibleFlow when no split satisfies group1's aggregated marginals.
TwoGroupSplit solve_two_groups(const PhysicalTopology& phys, const Matching& u,
                               const IntMatrix& c_target, std::span<const int> group1,
                               std::span<const int> group2, const TwoGroupOptions& options = {});

struct SolveOptions {
  bool strict_proportional = true;
  McfBackend backend = McfBackend::kSuccessiveShortestPath;
  SplitRule split = bipartition;
  /// When set, every flow network is dumped here as `s d cap cost` lines,
  /// each preceded by a `# group ...` header.
  std::ostream* arc_dump = nullptr;
};

/// Throws InvalidInstance, NotProportional (strict mode) or InfeasibleDecomposition.
SolveResult solve(const Instance& instance, const SolveOptions& options = {});

}  // namespace ocs
