#pragma once

// Integral min-cost flow on bipartite supply/demand networks, plus the convex
// piecewise-linear rewire cost and its expansion into parallel arcs.

#include <iosfwd>
#include <string>
#include <vector>

#include "ocs/model.hpp"

namespace ocs {

/// Convex piecewise-linear function on [0, domain_max].
/// Segment p spans [x_{p-1}, x_p] with x_0 = 0, x_{q+1} = domain_max and has
/// slope slopes[p]. An empty domain (domain_max == 0) has no segments.
struct PiecewiseLinearCost {
  Count domain_max = 0;
  std::vector<Count> breakpoints;  // strictly inside (0, domain_max), ascending
  std::vector<Count> slopes;       // breakpoints.size() + 1 entries, strictly increasing
  Count value_at_zero = 0;

  Count evaluate(Count x) const;
};

/// f(x) = (u1 - x)^+ + (u2 - c + x)^+ on [0, c].
PiecewiseLinearCost piecewise_rewire_cost(Count u1, Count u2, Count c);

struct CostArc {
  Count capacity = 0;
  Count unit_cost = 0;

  bool operator==(const CostArc&) const = default;
};

/// One arc per nonzero-width segment, in ascending cost order.
std::vector<CostArc> expand_to_arcs(const PiecewiseLinearCost& plc);

struct FlowArc {
  int supply = 0;
  int demand = 0;
  Count capacity = 0;
  Count unit_cost = 0;
  // Cell of the result matrix this arc contributes to.
  int cell_i = 0;
  int cell_j = 0;
};

/// Bipartite network: every arc goes from a supply node to a demand node.
class FlowNetwork {
 public:
  FlowNetwork(std::vector<Count> supplies, std::vector<Count> demands);

  void add_arc(int supply, int demand, Count capacity, Count unit_cost);
  /// Adds the arcs of `plc` between supply i and demand j, tagged with cell (i, j).
  void add_cell(int i, int j, const PiecewiseLinearCost& plc);

  const std::vector<Count>& supplies() const { return supplies_; }
  const std::vector<Count>& demands() const { return demands_; }
  const std::vector<FlowArc>& arcs() const { return arcs_; }
  std::size_t supply_count() const { return supplies_.size(); }
  std::size_t demand_count() const { return demands_.size(); }

  /// Plain-text arc list, one `s d cap cost` line per arc.
  void dump(std::ostream& os) const;

 private:
  std::vector<Count> supplies_;
  std::vector<Count> demands_;
  std::vector<FlowArc> arcs_;
};

struct FlowResult {
  std::vector<Count> arc_flow;  // parallel to FlowNetwork::arcs()
  Count total_cost = 0;
  IntMatrix cell_flow;  // supply_count x demand_count
};

enum class McfBackend { kSuccessiveShortestPath, kCostScaling };

const char* backend_name(McfBackend backend);
/// Accepts "ssp" and "cost-scaling". Throws std::invalid_argument otherwise.
McfBackend parse_backend(const std::string& name);

class InfeasibleFlow : public Error {
 public:
  using Error::Error;
};

/// Minimum-cost integral flow meeting every supply and demand exactly.
/// Throws InfeasibleFlow when no such flow exists and std::overflow_error when
/// cost magnitudes could overflow 64-bit arithmetic.
FlowResult solve_min_cost_flow(const FlowNetwork& net,
                               McfBackend backend = McfBackend::kSuccessiveShortestPath);

}  // namespace ocs
