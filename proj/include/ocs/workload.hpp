#pragma once

// Synthetic reconfiguration workloads: proportional physical topologies,
// random feasible matchings and churn-perturbed targets.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ocs/model.hpp"

namespace ocs {

/// Identifier recorded in instance metadata. Bounded draws use rejection on
/// raw mt19937_64 output, so streams match across standard libraries.
inline constexpr const char* kRngAlgorithm = "mt19937_64+rejection+fisher-yates";

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t t = items.size(); t > 1; --t) {
      std::swap(items[t - 1], items[below(t)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Exact fraction in [0, 1].
struct ChurnFraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  /// Parses plain decimals ("0.25", "1", ".5"). Throws std::invalid_argument.
  static ChurnFraction parse(const std::string& text);
  /// Shortest round-trip decimal of `value`, parsed exactly.
  static ChurnFraction from_double(double value);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  /// floor(fraction * count)
  Count of(Count count) const;
};

struct ChurnConfig {
  ChurnFraction churn;
  std::uint64_t seed = 0;
};

class UnbalancedSpec : public Error {
 public:
  using Error::Error;
};

/// a(j,k) = r[k] * a_prime[j], b(i,k) = r[k] * b_prime[i].
/// Throws UnbalancedSpec if sum(a_prime) != sum(b_prime), std::invalid_argument
/// on empty or non-positive inputs.
PhysicalTopology gen_proportional_physical(const std::vector<Count>& r,
                                           const std::vector<Count>& a_prime,
                                           const std::vector<Count>& b_prime);

/// Per OCS: pair uplink stubs (ascending switch order) with shuffled downlink stubs.
Matching sample_matching(const PhysicalTopology& phys, std::uint64_t seed);

/// Per OCS: re-pair floor(churn * links) uniformly chosen links among themselves.
Matching perturb_matching(const Matching& u, const ChurnConfig& cfg);

struct GeneratedInstance {
  Instance instance;
  Matching witness;  // v: feasible for instance.target by construction
  std::vector<Count> r;
  std::vector<Count> a_prime;
  std::vector<Count> b_prime;
  ChurnConfig cfg;

  Count witness_rewires() const { return rewire_count(instance.old_matching, witness); }
};

GeneratedInstance gen_instance(const std::vector<Count>& r, const std::vector<Count>& a_prime,
                               const std::vector<Count>& b_prime, const ChurnConfig& cfg);

}  // namespace ocs
