#include "ocs/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ocs {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Count>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix out(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw std::invalid_argument("ragged matrix: row " + std::to_string(r) + " has " +
                                  std::to_string(rows[r].size()) + " entries, expected " +
                                  std::to_string(cols));
    }
    std::copy(rows[r].begin(), rows[r].end(), out.data_.begin() + r * cols);
  }
  return out;
}

Count IntMatrix::row_sum(std::size_t r) const {
  Count s = 0;
  for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c);
  return s;
}

Count IntMatrix::col_sum(std::size_t c) const {
  Count s = 0;
  for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, c);
  return s;
}

Count IntMatrix::total() const { return std::accumulate(data_.begin(), data_.end(), Count{0}); }

std::vector<std::vector<Count>> IntMatrix::to_rows() const {
  std::vector<std::vector<Count>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    out[r].assign(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  return out;
}

Matching Matching::zeros(std::size_t n, std::size_t m) {
  return Matching{std::vector<IntMatrix>(n, IntMatrix(m, m))};
}

std::string Violation::describe() const {
  std::ostringstream os;
  switch (family) {
    case Family::kA:
      os << "sum_i x[" << k << "][i][" << j << "]=" << lhs << " != a[" << j << "][" << k
         << "]=" << rhs;
      break;
    case Family::kB:
      os << "sum_j x[" << k << "][" << i << "][j]=" << lhs << " != b[" << i << "][" << k
         << "]=" << rhs;
      break;
    case Family::kC:
      os << "sum_k x[k][" << i << "][" << j << "]=" << lhs << " != c[" << i << "][" << j
         << "]=" << rhs;
      break;
    case Family::kSign:
      os << "x[" << k << "][" << i << "][" << j << "]=" << lhs << " < 0";
      break;
    case Family::kShape:
      os << "shape mismatch";
      break;
  }
  return os.str();
}

std::vector<std::string> validate_physical(const PhysicalTopology& phys) {
  std::vector<std::string> out;
  const auto& a = phys.a;
  const auto& b = phys.b;
  if (a.rows() < 1 || a.cols() < 1) {
    out.push_back("topology needs m >= 1 and n >= 1");
    return out;
  }
  if (b.rows() != a.rows() || b.cols() != a.cols()) {
    std::ostringstream os;
    os << "a is " << a.rows() << "x" << a.cols() << " but b is " << b.rows() << "x" << b.cols();
    out.push_back(os.str());
    return out;
  }
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(r, k) < 0) {
        out.push_back("a[" + std::to_string(r) + "][" + std::to_string(k) +
                      "]=" + std::to_string(a(r, k)) + " < 0");
      }
      if (b(r, k) < 0) {
        out.push_back("b[" + std::to_string(r) + "][" + std::to_string(k) +
                      "]=" + std::to_string(b(r, k)) + " < 0");
      }
    }
  }
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const Count sa = a.col_sum(k);
    const Count sb = b.col_sum(k);
    if (sa != sb) {
      std::ostringstream os;
      os << "OCS " << k << ": Σa=" << sa << " ≠ Σb=" << sb;
      out.push_back(os.str());
    }
  }
  return out;
}

LogicalTopology logical_of(const Matching& x) {
  const std::size_t m = x.m();
  IntMatrix c(m, m);
  for (const auto& xk : x.ocs) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) c(i, j) += xk(i, j);
    }
  }
  return LogicalTopology{std::move(c)};
}

FeasibilityReport is_feasible(const Matching& x, const PhysicalTopology& phys,
                              const LogicalTopology& c) {
  FeasibilityReport rep;
  const std::size_t m = phys.m();
  const std::size_t n = phys.n();
  bool shape_ok = x.n() == n && c.c.rows() == m && c.c.cols() == m && phys.b.rows() == m &&
                  phys.b.cols() == n;
  for (const auto& xk : x.ocs) shape_ok = shape_ok && xk.rows() == m && xk.cols() == m;
  if (!shape_ok) {
    rep.violations.push_back(Violation{});
    return rep;
  }
  auto idx = [](std::size_t v) { return static_cast<int>(v); };
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (x[k](i, j) < 0) {
          rep.violations.push_back(
              {Violation::Family::kSign, idx(i), idx(j), idx(k), x[k](i, j), 0});
        }
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      const Count s = x[k].col_sum(j);
      if (s != phys.a(j, k)) {
        rep.violations.push_back({Violation::Family::kA, -1, idx(j), idx(k), s, phys.a(j, k)});
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      const Count s = x[k].row_sum(i);
      if (s != phys.b(i, k)) {
        rep.violations.push_back({Violation::Family::kB, idx(i), -1, idx(k), s, phys.b(i, k)});
      }
    }
  }
  const LogicalTopology got = logical_of(x);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (got.c(i, j) != c.c(i, j)) {
        rep.violations.push_back(
            {Violation::Family::kC, idx(i), idx(j), -1, got.c(i, j), c.c(i, j)});
      }
    }
  }
  return rep;
}

namespace {

void require_same_shape(const Matching& u, const Matching& x) {
  bool same = u.n() == x.n();
  for (std::size_t k = 0; same && k < u.n(); ++k) {
    same = u[k].rows() == x[k].rows() && u[k].cols() == x[k].cols();
  }
  if (!same) throw std::invalid_argument("matchings have different shapes");
}

}  // namespace

Count rewire_count(const Matching& u, const Matching& x) {
  require_same_shape(u, x);
  Count total = 0;
  for (std::size_t k = 0; k < u.n(); ++k) {
    const auto uv = u[k].values();
    const auto xv = x[k].values();
    for (std::size_t t = 0; t < uv.size(); ++t) total += std::max<Count>(uv[t] - xv[t], 0);
  }
  return total;
}

Count added_links(const Matching& u, const Matching& x) { return rewire_count(x, u); }

std::optional<ProportionalSpec> detect_proportional(const PhysicalTopology& phys) {
  const std::size_t m = phys.m();
  const std::size_t n = phys.n();
  for (std::size_t s = 0; s < m; ++s) {
    if (phys.a.row_sum(s) == 0) {
      throw ZeroRowError("switch " + std::to_string(s) + " has no downlinks (row of a is zero)");
    }
    if (phys.b.row_sum(s) == 0) {
      throw ZeroRowError("switch " + std::to_string(s) + " has no uplinks (row of b is zero)");
    }
  }

  std::vector<Count> col(n);
  Count g = 0;
  for (std::size_t k = 0; k < n; ++k) {
    col[k] = phys.a.col_sum(k);
    if (col[k] <= 0) return std::nullopt;
    g = std::gcd(g, col[k]);
  }
  ProportionalSpec spec;
  spec.r.resize(n);
  for (std::size_t k = 0; k < n; ++k) spec.r[k] = col[k] / g;

  auto fit = [&](const IntMatrix& mat, std::vector<Count>& prime) -> bool {
    prime.resize(m);
    for (std::size_t s = 0; s < m; ++s) {
      if (mat(s, 0) % spec.r[0] != 0) return false;
      prime[s] = mat(s, 0) / spec.r[0];
      if (prime[s] <= 0) return false;
      for (std::size_t k = 0; k < n; ++k) {
        if (mat(s, k) != spec.r[k] * prime[s]) return false;
      }
    }
    return true;
  };
  if (!fit(phys.a, spec.a_prime) || !fit(phys.b, spec.b_prime)) return std::nullopt;
  return spec;
}

GroupAggregate aggregate_group(const PhysicalTopology& phys, const Matching& u,
                               std::span<const int> group) {
  const std::size_t m = phys.m();
  GroupAggregate agg{std::vector<Count>(m, 0), std::vector<Count>(m, 0), IntMatrix(m, m)};
  for (const int k : group) {
    if (k < 0 || static_cast<std::size_t>(k) >= phys.n()) {
      throw std::out_of_range("OCS index " + std::to_string(k) + " outside topology");
    }
    for (std::size_t s = 0; s < m; ++s) {
      agg.a_col[s] += phys.a(s, k);
      agg.b_col[s] += phys.b(s, k);
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) agg.u(i, j) += u[k](i, j);
    }
  }
  return agg;
}

std::vector<std::string> check_marginals(const PhysicalTopology& phys, const LogicalTopology& c) {
  std::vector<std::string> out;
  const std::size_t m = phys.m();
  if (c.c.rows() != m || c.c.cols() != m) {
    out.push_back("logical topology is " + std::to_string(c.c.rows()) + "x" +
                  std::to_string(c.c.cols()) + ", expected " + std::to_string(m) + "x" +
                  std::to_string(m));
    return out;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (c.c(i, j) < 0) {
        out.push_back("c[" + std::to_string(i) + "][" + std::to_string(j) + "] < 0");
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    const Count lhs = c.c.col_sum(j);
    const Count rhs = phys.a.row_sum(j);
    if (lhs != rhs) {
      out.push_back("switch " + std::to_string(j) + ": Σ_i c[i][j]=" + std::to_string(lhs) +
                    " ≠ Σ_k a[j][k]=" + std::to_string(rhs));
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Count lhs = c.c.row_sum(i);
    const Count rhs = phys.b.row_sum(i);
    if (lhs != rhs) {
      out.push_back("switch " + std::to_string(i) + ": Σ_j c[i][j]=" + std::to_string(lhs) +
                    " ≠ Σ_k b[i][k]=" + std::to_string(rhs));
    }
  }
  return out;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  auto out = validate_physical(inst.phys);
  if (!out.empty()) return out;
  const auto& u = inst.old_matching;
  if (u.n() != inst.phys.n()) {
    out.push_back("old matching has " + std::to_string(u.n()) + " OCS layers, expected " +
                  std::to_string(inst.phys.n()));
    return out;
  }
  const auto rep = is_feasible(u, inst.phys, logical_of(u));
  for (const auto& v : rep.violations) out.push_back("old matching: " + v.describe());
  for (auto& s : check_marginals(inst.phys, inst.target)) out.push_back("target: " + s);
  return out;
}

}  // namespace ocs
