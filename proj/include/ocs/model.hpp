#pragma once

// Domain model for OCS reconfiguration: physical/logical topologies,
// per-OCS matchings, feasibility checks and rewire counting.
//
// Index conventions:
//   a(j, k)  links from OCS k to switch j          (m x n)
//   b(i, k)  links from switch i to OCS k          (m x n)
//   c(i, j)  logical links from switch i to j      (m x m)
//   x[k](i, j) links i -> j forwarded through OCS k (n matrices, m x m)

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocs {

using Count = std::int64_t;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Count fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Throws std::invalid_argument on ragged input.
  static IntMatrix from_rows(const std::vector<std::vector<Count>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Count& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Count operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Count row_sum(std::size_t r) const;
  Count col_sum(std::size_t c) const;
  Count total() const;

  std::span<const Count> values() const { return data_; }
  std::vector<std::vector<Count>> to_rows() const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Count> data_;
};

struct PhysicalTopology {
  IntMatrix a;  // m x n, OCS -> switch
  IntMatrix b;  // m x n, switch -> OCS

  std::size_t m() const { return a.rows(); }
  std::size_t n() const { return a.cols(); }
};

struct LogicalTopology {
  IntMatrix c;  // m x m

  std::size_t m() const { return c.rows(); }
};

/// Per-OCS forwarding counts, stored OCS-major: ocs[k](i, j).
struct Matching {
  std::vector<IntMatrix> ocs;

  static Matching zeros(std::size_t n, std::size_t m);

  std::size_t n() const { return ocs.size(); }
  std::size_t m() const { return ocs.empty() ? 0 : ocs.front().rows(); }

  IntMatrix& operator[](std::size_t k) { return ocs[k]; }
  const IntMatrix& operator[](std::size_t k) const { return ocs[k]; }

  bool operator==(const Matching&) const = default;
};

struct Instance {
  PhysicalTopology phys;
  Matching old_matching;  // u
  LogicalTopology target;  // new c
};

/// Canonical proportional form: a(j,k) = r[k] * a_prime[j], b(i,k) = r[k] * b_prime[i],
/// with gcd(r) = 1.
struct ProportionalSpec {
  std::vector<Count> r;
  std::vector<Count> a_prime;
  std::vector<Count> b_prime;

  bool operator==(const ProportionalSpec&) const = default;
};

struct GroupAggregate {
  std::vector<Count> a_col;  // length m
  std::vector<Count> b_col;  // length m
  IntMatrix u;               // m x m
};

/// One violated equality of the feasibility system.
struct Violation {
  enum class Family { kA, kB, kC, kShape, kSign };
  Family family = Family::kShape;
  // (i, j, k) as applicable; unused indices are -1.
  int i = -1;
  int j = -1;
  int k = -1;
  Count lhs = 0;
  Count rhs = 0;

  std::string describe() const;
};

struct FeasibilityReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
  const Violation* first() const { return violations.empty() ? nullptr : &violations.front(); }
};

// Errors shared by the solvers and the CLI. Each maps to a distinct exit code.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class ZeroRowError : public Error {
 public:
  using Error::Error;
};

class NotProportional : public Error {
 public:
  using Error::Error;
};

/// Solver bug: an internal invariant failed. Never caused by user input.
class InternalInvariantError : public Error {
 public:
  using Error::Error;
};

/// Empty list means valid. Messages name the OCS / switch and the failed equality.
std::vector<std::string> validate_physical(const PhysicalTopology& phys);

LogicalTopology logical_of(const Matching& x);

FeasibilityReport is_feasible(const Matching& x, const PhysicalTopology& phys,
                              const LogicalTopology& c);

/// Sum over all cells of max(u - x, 0). Throws std::invalid_argument on shape mismatch.
Count rewire_count(const Matching& u, const Matching& x);

/// Sum over all cells of max(x - u, 0).
Count added_links(const Matching& u, const Matching& x);

/// Returns std::nullopt when the topology is not proportional.
/// Throws ZeroRowError if some switch has no uplinks or no downlinks.
std::optional<ProportionalSpec> detect_proportional(const PhysicalTopology& phys);

/// Sums a/b columns and u matrices over the OCS indices in `group`.
GroupAggregate aggregate_group(const PhysicalTopology& phys, const Matching& u,
                               std::span<const int> group);

/// Marginal consistency of c against phys (row sums vs b, column sums vs a).
std::vector<std::string> check_marginals(const PhysicalTopology& phys, const LogicalTopology& c);

/// Full instance check: physical invariants, old matching feasibility against
/// its own logical topology, and target marginals.
std::vector<std::string> validate_instance(const Instance& inst);

}  // namespace ocs
