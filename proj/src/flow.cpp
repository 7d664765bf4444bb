#include "ocs/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>

namespace ocs {

Count PiecewiseLinearCost::evaluate(Count x) const {
  if (x < 0 || x > domain_max) {
    throw std::out_of_range("x=" + std::to_string(x) + " outside [0, " +
                            std::to_string(domain_max) + "]");
  }
  Count value = value_at_zero;
  Count left = 0;
  for (std::size_t p = 0; p < slopes.size() && left < x; ++p) {
    const Count right = p < breakpoints.size() ? breakpoints[p] : domain_max;
    value += slopes[p] * (std::min(x, right) - left);
    left = right;
  }
  return value;
}

PiecewiseLinearCost piecewise_rewire_cost(Count u1, Count u2, Count c) {
  if (u1 < 0 || u2 < 0 || c < 0) {
    throw std::invalid_argument("piecewise_rewire_cost: negative argument");
  }
  PiecewiseLinearCost plc;
  plc.domain_max = c;
  plc.value_at_zero = u1 + std::max<Count>(u2 - c, 0);
  if (c == 0) return plc;

  // The first term decreases until x = u1, the second increases from x = c - u2.
  const Count fall_end = std::clamp<Count>(u1, 0, c);
  const Count rise_start = std::clamp<Count>(c - u2, 0, c);
  std::set<Count> points{0, fall_end, rise_start, c};

  Count prev = 0;
  for (auto it = std::next(points.begin()); it != points.end(); ++it) {
    const Count lo = prev;
    const Count hi = *it;
    const Count slope = (hi <= u1 ? -1 : 0) + (lo >= c - u2 ? 1 : 0);
    if (!plc.slopes.empty() && plc.slopes.back() == slope) {
      plc.breakpoints.pop_back();
    }
    if (plc.slopes.empty() || plc.slopes.back() != slope) plc.slopes.push_back(slope);
    if (hi != c) plc.breakpoints.push_back(hi);
    prev = hi;
  }
  return plc;
}

std::vector<CostArc> expand_to_arcs(const PiecewiseLinearCost& plc) {
  std::vector<CostArc> arcs;
  Count left = 0;
  for (std::size_t p = 0; p < plc.slopes.size(); ++p) {
    const Count right = p < plc.breakpoints.size() ? plc.breakpoints[p] : plc.domain_max;
    if (right > left) arcs.push_back({right - left, plc.slopes[p]});
    left = right;
  }
  return arcs;
}

FlowNetwork::FlowNetwork(std::vector<Count> supplies, std::vector<Count> demands)
    : supplies_(std::move(supplies)), demands_(std::move(demands)) {
  for (const Count s : supplies_) {
    if (s < 0) throw std::invalid_argument("negative supply");
  }
  for (const Count d : demands_) {
    if (d < 0) throw std::invalid_argument("negative demand");
  }
}

void FlowNetwork::add_arc(int supply, int demand, Count capacity, Count unit_cost) {
  if (supply < 0 || static_cast<std::size_t>(supply) >= supplies_.size() || demand < 0 ||
      static_cast<std::size_t>(demand) >= demands_.size()) {
    throw std::out_of_range("arc endpoint outside network");
  }
  if (capacity < 0) throw std::invalid_argument("negative arc capacity");
  arcs_.push_back({supply, demand, capacity, unit_cost, supply, demand});
}

void FlowNetwork::add_cell(int i, int j, const PiecewiseLinearCost& plc) {
  for (const auto& arc : expand_to_arcs(plc)) add_arc(i, j, arc.capacity, arc.unit_cost);
}

void FlowNetwork::dump(std::ostream& os) const {
  for (const auto& arc : arcs_) {
    os << arc.supply << ' ' << arc.demand << ' ' << arc.capacity << ' ' << arc.unit_cost << '\n';
  }
}

const char* backend_name(McfBackend backend) {
  return backend == McfBackend::kCostScaling ? "cost-scaling" : "ssp";
}

McfBackend parse_backend(const std::string& name) {
  if (name == "ssp") return McfBackend::kSuccessiveShortestPath;
  if (name == "cost-scaling") return McfBackend::kCostScaling;
  throw std::invalid_argument("unknown MCF backend '" + name + "' (expected ssp|cost-scaling)");
}

namespace {

constexpr Count kInf = std::numeric_limits<Count>::max() / 4;

// Residual graph with paired edges: edge e and its reverse e ^ 1.
struct Residual {
  struct Edge {
    int from;
    int to;
    Count cap;
    Count cost;
  };

  explicit Residual(int nodes) : adj(nodes) {}

  int add(int from, int to, Count cap, Count cost) {
    const int id = static_cast<int>(edges.size());
    edges.push_back({from, to, cap, cost});
    edges.push_back({to, from, 0, -cost});
    adj[from].push_back(id);
    adj[to].push_back(id + 1);
    return id;
  }

  void push(int e, Count amount) {
    edges[e].cap -= amount;
    edges[e ^ 1].cap += amount;
  }

  int size() const { return static_cast<int>(adj.size()); }

  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj;
};

// Arc indices in (supply, demand, unit_cost) lexicographic order.
std::vector<int> canonical_order(const FlowNetwork& net) {
  const auto& arcs = net.arcs();
  std::vector<int> order(arcs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
    const auto& a = arcs[l];
    const auto& b = arcs[r];
    return std::tie(a.supply, a.demand, a.unit_cost) < std::tie(b.supply, b.demand, b.unit_cost);
  });
  return order;
}

bool mul_fits(Count a, Count b, Count limit) { return a == 0 || b <= limit / a; }

void check_magnitudes(const FlowNetwork& net, Count total, Count max_abs_cost) {
  const Count nodes = static_cast<Count>(net.supply_count() + net.demand_count()) + 2;
  // Total cost, potentials and scaled costs all stay below these products.
  const bool ok = mul_fits(total, max_abs_cost + 1, kInf) &&
                  mul_fits(nodes * (nodes + 1), 2 * (max_abs_cost + 1), kInf);
  if (!ok) throw std::overflow_error("flow network cost magnitude exceeds 64-bit headroom");
}

// Successive shortest paths with Dijkstra and node potentials. Costs are
// shifted to be nonnegative first; every unit crosses exactly one bipartite
// arc, so the shift changes every feasible flow's cost by the same amount.
std::vector<Count> solve_ssp(const FlowNetwork& net, const std::vector<int>& order, Count total,
                             Count shift) {
  const int ns = static_cast<int>(net.supply_count());
  const int nd = static_cast<int>(net.demand_count());
  const int src = ns + nd;
  const int snk = src + 1;
  Residual g(ns + nd + 2);
  for (int i = 0; i < ns; ++i) g.add(src, i, net.supplies()[i], 0);
  std::vector<int> edge_of(net.arcs().size());
  for (const int a : order) {
    const auto& arc = net.arcs()[a];
    edge_of[a] = g.add(arc.supply, ns + arc.demand, arc.capacity, arc.unit_cost + shift);
  }
  for (int j = 0; j < nd; ++j) g.add(ns + j, snk, net.demands()[j], 0);

  const int nodes = g.size();
  std::vector<Count> pot(nodes, 0);
  std::vector<Count> dist(nodes);
  std::vector<int> via(nodes);
  using Entry = std::pair<Count, int>;
  Count flow = 0;
  while (flow < total) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[src] = 0;
    heap.emplace(0, src);
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d != dist[v]) continue;
      for (const int e : g.adj[v]) {
        const auto& edge = g.edges[e];
        if (edge.cap == 0) continue;
        const Count nd2 = d + edge.cost + pot[v] - pot[edge.to];
        if (nd2 < dist[edge.to]) {
          dist[edge.to] = nd2;
          via[edge.to] = e;
          heap.emplace(nd2, edge.to);
        }
      }
    }
    if (dist[snk] == kInf) break;
    // Nodes unreachable now stay unreachable: new residual edges only appear on paths.
    for (int v = 0; v < nodes; ++v) {
      if (dist[v] < kInf) pot[v] += dist[v];
    }
    Count bottleneck = total - flow;
    for (int v = snk; v != src; v = g.edges[via[v]].from) {
      bottleneck = std::min(bottleneck, g.edges[via[v]].cap);
    }
    for (int v = snk; v != src; v = g.edges[via[v]].from) g.push(via[v], bottleneck);
    flow += bottleneck;
  }
  if (flow < total) {
    throw InfeasibleFlow("only " + std::to_string(flow) + " of " + std::to_string(total) +
                         " supply units can be routed");
  }
  std::vector<Count> arc_flow(net.arcs().size());
  for (std::size_t a = 0; a < arc_flow.size(); ++a) {
    arc_flow[a] = net.arcs()[a].capacity - g.edges[edge_of[a]].cap;
  }
  return arc_flow;
}

// Dinic max-flow from the super source, used to establish feasibility before
// cost scaling (push-relabel refinement assumes a feasible flow exists).
Count max_flow(const FlowNetwork& net) {
  const int ns = static_cast<int>(net.supply_count());
  const int nd = static_cast<int>(net.demand_count());
  const int src = ns + nd;
  const int snk = src + 1;
  Residual g(ns + nd + 2);
  for (int i = 0; i < ns; ++i) g.add(src, i, net.supplies()[i], 0);
  for (const auto& arc : net.arcs()) g.add(arc.supply, ns + arc.demand, arc.capacity, 0);
  for (int j = 0; j < nd; ++j) g.add(ns + j, snk, net.demands()[j], 0);

  std::vector<int> level(g.size());
  std::vector<std::size_t> it(g.size());
  auto bfs = [&] {
    std::fill(level.begin(), level.end(), -1);
    std::deque<int> q{src};
    level[src] = 0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (const int e : g.adj[v]) {
        const auto& edge = g.edges[e];
        if (edge.cap > 0 && level[edge.to] < 0) {
          level[edge.to] = level[v] + 1;
          q.push_back(edge.to);
        }
      }
    }
    return level[snk] >= 0;
  };
  auto dfs = [&](auto&& self, int v, Count limit) -> Count {
    if (v == snk) return limit;
    for (; it[v] < g.adj[v].size(); ++it[v]) {
      const int e = g.adj[v][it[v]];
      const auto& edge = g.edges[e];
      if (edge.cap > 0 && level[edge.to] == level[v] + 1) {
        const Count pushed = self(self, edge.to, std::min(limit, edge.cap));
        if (pushed > 0) {
          g.push(e, pushed);
          return pushed;
        }
      }
    }
    return 0;
  };
  Count flow = 0;
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    while (const Count f = dfs(dfs, src, kInf)) flow += f;
  }
  return flow;
}

// Goldberg-Tarjan cost scaling with FIFO push-relabel refinement. Costs are
// multiplied by (nodes + 1) so that finishing at epsilon = 1 is exact.
std::vector<Count> solve_cost_scaling(const FlowNetwork& net, const std::vector<int>& order,
                                      Count total, Count max_abs_cost) {
  if (max_flow(net) < total) {
    throw InfeasibleFlow("supplies cannot be routed within arc capacities");
  }
  const int ns = static_cast<int>(net.supply_count());
  const int nd = static_cast<int>(net.demand_count());
  const int nodes = ns + nd;
  const Count scale = nodes + 1;
  Residual g(nodes);
  std::vector<int> edge_of(net.arcs().size());
  for (const int a : order) {
    const auto& arc = net.arcs()[a];
    edge_of[a] = g.add(arc.supply, ns + arc.demand, arc.capacity, arc.unit_cost * scale);
  }
  std::vector<Count> excess(nodes, 0);
  for (int i = 0; i < ns; ++i) excess[i] = net.supplies()[i];
  for (int j = 0; j < nd; ++j) excess[ns + j] = -net.demands()[j];

  std::vector<Count> price(nodes, 0);
  std::vector<std::size_t> current(nodes, 0);
  auto reduced = [&](int e) {
    const auto& edge = g.edges[e];
    return edge.cost + price[edge.from] - price[edge.to];
  };
  auto push = [&](int e, Count amount) {
    g.push(e, amount);
    excess[g.edges[e].from] -= amount;
    excess[g.edges[e].to] += amount;
  };

  auto refine = [&](Count eps) {
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
      if (g.edges[e].cap > 0 && reduced(e) < 0) push(e, g.edges[e].cap);
    }
    std::deque<int> active;
    for (int v = 0; v < nodes; ++v) {
      current[v] = 0;
      if (excess[v] > 0) active.push_back(v);
    }
    while (!active.empty()) {
      const int v = active.front();
      active.pop_front();
      while (excess[v] > 0) {
        if (current[v] == g.adj[v].size()) {
          // Relabel: lower the price just enough to make one residual arc admissible.
          Count best = -kInf;
          for (const int e : g.adj[v]) {
            const auto& edge = g.edges[e];
            if (edge.cap > 0) best = std::max(best, price[edge.to] - edge.cost);
          }
          if (best == -kInf) {
            throw InternalInvariantError("cost scaling: active node without residual arcs");
          }
          price[v] = best - eps;
          current[v] = 0;
          continue;
        }
        const int e = g.adj[v][current[v]];
        if (g.edges[e].cap > 0 && reduced(e) < 0) {
          const int w = g.edges[e].to;
          const bool was_active = excess[w] > 0;
          push(e, std::min(excess[v], g.edges[e].cap));
          if (!was_active && excess[w] > 0) active.push_back(w);
          if (g.edges[e].cap == 0) ++current[v];
        } else {
          ++current[v];
        }
      }
    }
  };

  constexpr Count kAlpha = 5;
  Count eps = std::max<Count>(1, max_abs_cost * scale);
  do {
    eps = std::max<Count>(1, eps / kAlpha);
    refine(eps);
  } while (eps > 1);

  std::vector<Count> arc_flow(net.arcs().size());
  for (std::size_t a = 0; a < arc_flow.size(); ++a) {
    arc_flow[a] = net.arcs()[a].capacity - g.edges[edge_of[a]].cap;
  }
  return arc_flow;
}

}  // namespace

FlowResult solve_min_cost_flow(const FlowNetwork& net, McfBackend backend) {
  const Count total_supply =
      std::accumulate(net.supplies().begin(), net.supplies().end(), Count{0});
  const Count total_demand = std::accumulate(net.demands().begin(), net.demands().end(), Count{0});
  if (total_supply != total_demand) {
    throw InfeasibleFlow("total supply " + std::to_string(total_supply) +
                         " differs from total demand " + std::to_string(total_demand));
  }
  Count min_cost = 0;
  Count max_abs = 0;
  for (const auto& arc : net.arcs()) {
    min_cost = std::min(min_cost, arc.unit_cost);
    max_abs = std::max(max_abs, arc.unit_cost < 0 ? -arc.unit_cost : arc.unit_cost);
  }
  const Count shift = -min_cost;
  check_magnitudes(net, total_supply, max_abs + shift);

  const auto order = canonical_order(net);
  FlowResult result;
  result.arc_flow = backend == McfBackend::kCostScaling
                        ? solve_cost_scaling(net, order, total_supply, max_abs)
                        : solve_ssp(net, order, total_supply, shift);
  result.cell_flow = IntMatrix(net.supply_count(), net.demand_count());
  for (std::size_t a = 0; a < result.arc_flow.size(); ++a) {
    const auto& arc = net.arcs()[a];
    result.total_cost += result.arc_flow[a] * arc.unit_cost;
    result.cell_flow(arc.cell_i, arc.cell_j) += result.arc_flow[a];
  }
  return result;
}

}  // namespace ocs
