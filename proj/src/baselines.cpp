#include "ocs/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

namespace ocs {

SolveResult greedy_solve(const Instance& instance, const GreedyOptions& options) {
  if (const auto errors = validate_instance(instance); !errors.empty()) {
    throw InvalidInstance(errors.front());
  }
  const auto& phys = instance.phys;
  const auto& u = instance.old_matching;
  const std::size_t m = phys.m();
  const std::size_t n = phys.n();

  std::vector<int> order = options.order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(n);
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected) throw std::invalid_argument("greedy order is not a permutation of K");
  }

  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  result.matching = Matching::zeros(n, m);
  IntMatrix remaining = instance.target.c;
  for (const int k : order) {
    std::vector<Count> supplies(m);
    std::vector<Count> demands(m);
    for (std::size_t s = 0; s < m; ++s) {
      supplies[s] = phys.b(s, k);
      demands[s] = phys.a(s, k);
    }
    FlowNetwork net(std::move(supplies), std::move(demands));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        net.add_cell(static_cast<int>(i), static_cast<int>(j),
                     piecewise_rewire_cost(u[k](i, j), 0, remaining(i, j)));
      }
    }
    FlowResult flow;
    try {
      ++result.mcf_invocations;
      flow = solve_min_cost_flow(net, options.backend);
    } catch (const InfeasibleFlow& e) {
      throw GreedyStepInfeasible(
          "greedy step for OCS " + std::to_string(k) + " has no feasible flow: " + e.what(), k);
    }
    result.matching[k] = flow.cell_flow;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) remaining(i, j) -= flow.cell_flow(i, j);
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  result.solver_millis = std::chrono::duration<double, std::milli>(stop - start).count();
  result.rewires = rewire_count(u, result.matching);
  result.algo = "greedy";
  return result;
}

namespace {

struct Cell {
  int i;
  int j;
  bool last_in_row;
  bool last_in_col;
};

std::vector<Cell> cell_sequence(std::size_t m, CellOrder order) {
  std::vector<Cell> cells;
  cells.reserve(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const int i = static_cast<int>(order == CellOrder::kRowMajor ? a : b);
      const int j = static_cast<int>(order == CellOrder::kRowMajor ? b : a);
      const bool end_inner = b + 1 == m;
      const bool end_outer = a + 1 == m;
      cells.push_back(order == CellOrder::kRowMajor ? Cell{i, j, end_inner, end_outer}
                                                    : Cell{i, j, end_outer, end_inner});
    }
  }
  return cells;
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const OracleOptions& options)
      : phys_(inst.phys),
        u_(inst.old_matching),
        budget_(options.node_budget),
        cells_(cell_sequence(inst.phys.m(), options.cell_order)),
        x_(Matching::zeros(inst.phys.n(), inst.phys.m())),
        remaining_(inst.target.c),
        row_left_(inst.phys.b),
        col_left_(inst.phys.a) {}

  OracleResult run() {
    descend(0, 0, 0);
    if (best_cost_ == kNone) throw InfeasibleInstance("no feasible matching exists for the target");
    return OracleResult{best_, best_cost_, nodes_};
  }

 private:
  static constexpr Count kNone = std::numeric_limits<Count>::max();

  void descend(std::size_t k, std::size_t t, Count cost) {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("oracle node budget of " + std::to_string(budget_) + " exhausted");
    }
    if (k + 1 == phys_.n()) {
      finish_last(cost);
      return;
    }
    if (t == cells_.size()) {
      descend(k + 1, 0, cost);
      return;
    }
    const Cell& cell = cells_[t];
    const Count row_left = row_left_(cell.i, k);
    const Count col_left = col_left_(cell.j, k);
    const Count ub = std::min({row_left, col_left, remaining_(cell.i, cell.j)});
    Count lo = 0;
    Count hi = ub;
    if (cell.last_in_row || cell.last_in_col) {
      const Count forced = cell.last_in_row ? row_left : col_left;
      if ((cell.last_in_row && cell.last_in_col && row_left != col_left) || forced > ub) return;
      lo = hi = forced;
    }
    const Count old = u_[k](cell.i, cell.j);
    const Count first = std::clamp(old, lo, hi);
    auto try_value = [&](Count v) {
      const Count next = cost + std::max<Count>(old - v, 0);
      if (next >= best_cost_) return false;
      assign(k, cell, v);
      descend(k, t + 1, next);
      assign(k, cell, -v);
      return true;
    };
    try_value(first);
    // Below `first` the cost grows as v shrinks, so stop at the first pruned value.
    for (Count v = first - 1; v >= lo; --v) {
      if (!try_value(v)) break;
    }
    for (Count v = first + 1; v <= hi; ++v) try_value(v);
  }

  void assign(std::size_t k, const Cell& cell, Count delta) {
    x_[k](cell.i, cell.j) += delta;
    remaining_(cell.i, cell.j) -= delta;
    row_left_(cell.i, k) -= delta;
    col_left_(cell.j, k) -= delta;
  }

  void finish_last(Count cost) {
    const std::size_t k = phys_.n() - 1;
    const std::size_t m = phys_.m();
    for (std::size_t s = 0; s < m; ++s) {
      if (remaining_.row_sum(s) != row_left_(s, k) || remaining_.col_sum(s) != col_left_(s, k)) {
        return;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        cost += std::max<Count>(u_[k](i, j) - remaining_(i, j), 0);
      }
    }
    if (cost < best_cost_) {
      best_cost_ = cost;
      best_ = x_;
      best_[k] = remaining_;
    }
  }

  const PhysicalTopology& phys_;
  const Matching& u_;
  std::uint64_t budget_;
  std::vector<Cell> cells_;
  Matching x_;
  IntMatrix remaining_;
  IntMatrix row_left_;  // b minus assigned, per (i, k)
  IntMatrix col_left_;  // a minus assigned, per (j, k)
  Matching best_;
  Count best_cost_ = kNone;
  std::uint64_t nodes_ = 0;
};

}  // namespace

OracleResult oracle_min_rewires(const Instance& instance, const OracleOptions& options) {
  if (const auto errors = validate_instance(instance); !errors.empty()) {
    throw InvalidInstance(errors.front());
  }
  return BranchAndBound(instance, options).run();
}

}  // namespace ocs
