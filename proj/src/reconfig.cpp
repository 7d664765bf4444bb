#include "ocs/reconfig.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>

namespace ocs {

namespace {

std::string group_label(std::span<const int> group) {
  std::string out = "{";
  for (std::size_t t = 0; t < group.size(); ++t) {
    if (t) out += ",";
    out += std::to_string(group[t]);
  }
  return out + "}";
}

}  // namespace

Groups bipartition(std::span<const int> group) {
  if (group.size() < 2) throw std::invalid_argument("bipartition needs at least two OCSes");
  std::vector<int> sorted(group.begin(), group.end());
  std::sort(sorted.begin(), sorted.end());
  const auto half = static_cast<std::ptrdiff_t>((sorted.size() + 1) / 2);
  return {std::vector<int>(sorted.begin(), sorted.begin() + half),
          std::vector<int>(sorted.begin() + half, sorted.end())};
}

TwoGroupSplit solve_two_groups(const PhysicalTopology& phys, const Matching& u,
                               const IntMatrix& c_target, std::span<const int> group1,
                               std::span<const int> group2, const TwoGroupOptions& options) {
  const std::size_t m = phys.m();
  const auto g1 = aggregate_group(phys, u, group1);
  const auto g2 = aggregate_group(phys, u, group2);

  // Supplies are group 1's uplinks (b), demands its downlinks (a).
  FlowNetwork net(g1.b_col, g1.a_col);
  std::vector<PiecewiseLinearCost> costs;
  costs.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      costs.push_back(piecewise_rewire_cost(g1.u(i, j), g2.u(i, j), c_target(i, j)));
      net.add_cell(static_cast<int>(i), static_cast<int>(j), costs.back());
    }
  }
  if (options.arc_dump) {
    *options.arc_dump << "# group1=" << group_label(group1) << " group2=" << group_label(group2)
                      << '\n';
    net.dump(*options.arc_dump);
  }

  const FlowResult flow = solve_min_cost_flow(net, options.backend);
  TwoGroupSplit split{flow.cell_flow, IntMatrix(m, m), 0};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      split.c2(i, j) = c_target(i, j) - split.c1(i, j);
      split.merged_cost += costs[i * m + j].evaluate(split.c1(i, j));
    }
  }
  return split;
}

namespace {

class Recursion {
 public:
  Recursion(const Instance& inst, const SolveOptions& options)
      : inst_(inst), options_(options), x_(Matching::zeros(inst.phys.n(), inst.phys.m())) {}

  void run(std::span<const int> group, const IntMatrix& c_group) {
    if (group.size() == 1) {
      assign_leaf(group.front(), c_group);
      return;
    }
    const auto [k1, k2] = options_.split(group);
    if (k1.empty() || k2.empty() || k1.size() + k2.size() != group.size()) {
      throw std::invalid_argument("split rule must partition the group into two nonempty parts");
    }
    TwoGroupSplit split;
    try {
      ++mcf_invocations_;
      split = solve_two_groups(inst_.phys, inst_.old_matching, c_group, k1, k2,
                               {options_.backend, options_.arc_dump});
    } catch (const InfeasibleFlow& e) {
      throw InfeasibleDecomposition("no feasible split of group " + group_label(group) + " into " +
                                        group_label(k1) + " / " + group_label(k2) + ": " +
                                        e.what(),
                                    std::vector<int>(group.begin(), group.end()));
    }
    run(k1, split.c1);
    run(k2, split.c2);
  }

  Matching take_matching() { return std::move(x_); }
  int mcf_invocations() const { return mcf_invocations_; }

 private:
  void assign_leaf(int k, const IntMatrix& c) {
    const auto& phys = inst_.phys;
    for (std::size_t s = 0; s < phys.m(); ++s) {
      if (c.col_sum(s) != phys.a(s, k) || c.row_sum(s) != phys.b(s, k)) {
        throw InternalInvariantError("leaf OCS " + std::to_string(k) +
                                     " received a matrix with wrong marginals at switch " +
                                     std::to_string(s));
      }
    }
    x_[k] = c;
  }

  const Instance& inst_;
  const SolveOptions& options_;
  Matching x_;
  int mcf_invocations_ = 0;
};

}  // namespace

SolveResult solve(const Instance& instance, const SolveOptions& options) {
  if (const auto errors = validate_instance(instance); !errors.empty()) {
    throw InvalidInstance(errors.front());
  }
  if (options.strict_proportional) {
    try {
      if (!detect_proportional(instance.phys)) {
        throw NotProportional("physical topology is not proportional");
      }
    } catch (const ZeroRowError& e) {
      throw NotProportional(e.what());
    }
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<int> all(instance.phys.n());
  std::iota(all.begin(), all.end(), 0);
  Recursion rec(instance, options);
  rec.run(all, instance.target.c);

  SolveResult result;
  result.matching = rec.take_matching();
  result.mcf_invocations = rec.mcf_invocations();
  const auto stop = std::chrono::steady_clock::now();
  result.solver_millis = std::chrono::duration<double, std::milli>(stop - start).count();
  result.rewires = rewire_count(instance.old_matching, result.matching);
  result.algo = "bimcf";
  return result;
}

}  // namespace ocs
