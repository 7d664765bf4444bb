#include "ocs/model.hpp"

#include <gtest/gtest.h>

#include <numeric>

#include "ocs/workload.hpp"
#include "oracles.hpp"

namespace ocs {
namespace {

using testing::mat;
using testing::matching_of;

TEST(ValidatePhysical, BalancedSingleOcs) {
  EXPECT_TRUE(validate_physical({mat({{1}, {1}}), mat({{1}, {1}})}).empty());
}

TEST(ValidatePhysical, UnbalancedOcsIsNamed) {
  const auto v = validate_physical({mat({{2}, {1}}), mat({{1}, {1}})});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.front(), "OCS 0: Σa=3 ≠ Σb=2");
}

TEST(ValidatePhysical, TwoOcsBothColumnsBalanced) {
  EXPECT_TRUE(validate_physical({mat({{1, 2}, {1, 2}}), mat({{1, 2}, {1, 2}})}).empty());
}

TEST(ValidatePhysical, NegativeEntryAndShape) {
  EXPECT_FALSE(validate_physical({mat({{-1}, {1}}), mat({{-1}, {1}})}).empty());
  EXPECT_FALSE(validate_physical({mat({{1}, {1}}), mat({{1, 0}, {1, 0}})}).empty());
  EXPECT_FALSE(validate_physical({IntMatrix(0, 0), IntMatrix(0, 0)}).empty());
}

TEST(LogicalOf, Examples) {
  EXPECT_EQ(logical_of(matching_of({{{1, 0}, {0, 1}}})).c, mat({{1, 0}, {0, 1}}));
  EXPECT_EQ(logical_of(matching_of({{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}})).c, mat({{1, 1}, {1, 1}}));
  EXPECT_EQ(logical_of(Matching::zeros(2, 2)).c, mat({{0, 0}, {0, 0}}));
}

TEST(IsFeasible, IdentityPlusSwap) {
  const auto x = matching_of({{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}});
  const PhysicalTopology phys{mat({{1, 1}, {1, 1}}), mat({{1, 1}, {1, 1}})};
  EXPECT_TRUE(is_feasible(x, phys, logical_of(x)).ok());

  const auto rep = is_feasible(x, phys, LogicalTopology{mat({{2, 0}, {0, 2}})});
  ASSERT_FALSE(rep.ok());
  // Only the c family fails; every cell is off by one, including (0, 1).
  ASSERT_EQ(rep.violations.size(), 4u);
  for (const auto& v : rep.violations) EXPECT_EQ(v.family, Violation::Family::kC);
  const bool names_01 = std::any_of(rep.violations.begin(), rep.violations.end(),
                                    [](const Violation& v) { return v.i == 0 && v.j == 1; });
  EXPECT_TRUE(names_01);
  EXPECT_EQ(rep.violations[1].describe(), "sum_k x[k][0][1]=1 != c[0][1]=0");
}

TEST(IsFeasible, EmptyNetwork) {
  const PhysicalTopology phys{IntMatrix(2, 2), IntMatrix(2, 2)};
  EXPECT_TRUE(is_feasible(Matching::zeros(2, 2), phys, LogicalTopology{IntMatrix(2, 2)}).ok());
}

TEST(IsFeasible, WrongMarginalsAndShape) {
  const PhysicalTopology phys{mat({{1}, {1}}), mat({{1}, {1}})};
  const auto x = matching_of({{{2, 0}, {0, 0}}});
  const auto rep = is_feasible(x, phys, logical_of(x));
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.first()->family, Violation::Family::kA);
  EXPECT_FALSE(is_feasible(Matching::zeros(2, 2), phys, LogicalTopology{IntMatrix(2, 2)}).ok());
}

TEST(RewireCount, Examples) {
  const auto u = matching_of({{{1, 0}, {0, 1}}});
  EXPECT_EQ(rewire_count(u, u), 0);
  EXPECT_EQ(rewire_count(u, matching_of({{{0, 1}, {1, 0}}})), 2);
  EXPECT_EQ(rewire_count(matching_of({{{2, 0}, {0, 2}}}), matching_of({{{1, 1}, {1, 1}}})), 2);
  EXPECT_THROW(rewire_count(u, Matching::zeros(2, 2)), std::invalid_argument);
}

TEST(RewireCount, RemovedEqualsAddedForSameMarginals) {
  // Any two members of S(a, b, c) remove as many links as they add.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto gen = gen_instance({1, 2, 1}, {2, 1, 1}, {1, 1, 2}, {ChurnFraction{1, 2}, seed});
    const auto& u = gen.instance.old_matching;
    const auto v = perturb_matching(u, {ChurnFraction{1, 1}, seed + 1000});
    EXPECT_EQ(rewire_count(u, v), added_links(u, v));
    EXPECT_EQ(rewire_count(u, gen.witness), added_links(u, gen.witness));
  }
}

TEST(DetectProportional, Examples) {
  const auto spec = detect_proportional({mat({{1, 2}, {1, 2}}), mat({{1, 2}, {1, 2}})});
  ASSERT_TRUE(spec);
  EXPECT_EQ(spec->r, (std::vector<Count>{1, 2}));
  EXPECT_EQ(spec->a_prime, (std::vector<Count>{1, 1}));
  EXPECT_EQ(spec->b_prime, (std::vector<Count>{1, 1}));

  EXPECT_FALSE(detect_proportional({mat({{1, 1}, {1, 2}}), mat({{1, 1}, {1, 1}})}));

  const auto single = detect_proportional({mat({{3}, {5}}), mat({{4}, {4}})});
  ASSERT_TRUE(single);
  EXPECT_EQ(single->r, (std::vector<Count>{1}));
  EXPECT_EQ(single->a_prime, (std::vector<Count>{3, 5}));
  EXPECT_EQ(single->b_prime, (std::vector<Count>{4, 4}));
}

TEST(DetectProportional, ZeroRowRejected) {
  EXPECT_THROW(detect_proportional({mat({{0, 0}, {2, 2}}), mat({{1, 1}, {1, 1}})}), ZeroRowError);
  EXPECT_THROW(detect_proportional({mat({{1, 1}, {1, 1}}), mat({{2, 2}, {0, 0}})}), ZeroRowError);
}

TEST(DetectProportional, DifferentRatiosForAAndB) {
  // Column sums agree, but b's rows do not share a's ratio vector.
  EXPECT_FALSE(detect_proportional({mat({{1, 2}, {1, 2}}), mat({{2, 2}, {0, 2}})}));
}

TEST(DetectProportional, RecoversGeneratorRatios) {
  const std::vector<std::vector<Count>> rs = {{2, 4, 6}, {3}, {1, 1, 2, 5}, {7, 14}};
  for (const auto& r : rs) {
    const auto phys = gen_proportional_physical(r, {1, 3, 2}, {2, 2, 2});
    EXPECT_TRUE(validate_physical(phys).empty());
    const auto spec = detect_proportional(phys);
    ASSERT_TRUE(spec);
    const Count g = std::accumulate(r.begin(), r.end(), Count{0},
                                    [](Count acc, Count v) { return std::gcd(acc, v); });
    for (std::size_t k = 0; k < r.size(); ++k) EXPECT_EQ(spec->r[k], r[k] / g);
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t k = 0; k < r.size(); ++k) {
        EXPECT_EQ(phys.a(s, k), spec->r[k] * spec->a_prime[s]);
        EXPECT_EQ(phys.b(s, k), spec->r[k] * spec->b_prime[s]);
      }
    }
  }
}

TEST(AggregateGroup, Examples) {
  const PhysicalTopology phys{mat({{1, 2}, {1, 2}}), mat({{1, 2}, {1, 2}})};
  const auto u = matching_of({{{1, 0}, {0, 1}}, {{1, 1}, {1, 1}}});

  const std::vector<int> single{1};
  const auto one = aggregate_group(phys, u, single);
  EXPECT_EQ(one.a_col, (std::vector<Count>{2, 2}));
  EXPECT_EQ(one.b_col, (std::vector<Count>{2, 2}));
  EXPECT_EQ(one.u, u[1]);

  const std::vector<int> all{0, 1};
  const auto full = aggregate_group(phys, u, all);
  EXPECT_EQ(full.a_col, (std::vector<Count>{3, 3}));
  EXPECT_EQ(full.u, logical_of(u).c);
}

TEST(AggregateGroup, PartitionSumsToWhole) {
  const auto gen = gen_instance({1, 2, 1, 3}, {1, 2, 2}, {2, 1, 2}, {ChurnFraction{1, 4}, 9});
  const auto& phys = gen.instance.phys;
  const auto& u = gen.instance.old_matching;
  const std::vector<int> p1{0, 3};
  const std::vector<int> p2{1};
  const std::vector<int> p3{2};
  IntMatrix sum(3, 3);
  std::vector<Count> a_sum(3, 0);
  for (const auto* part : {&p1, &p2, &p3}) {
    const auto agg = aggregate_group(phys, u, *part);
    for (std::size_t i = 0; i < 3; ++i) {
      a_sum[i] += agg.a_col[i];
      for (std::size_t j = 0; j < 3; ++j) sum(i, j) += agg.u(i, j);
    }
  }
  EXPECT_EQ(sum, logical_of(u).c);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(a_sum[j], phys.a.row_sum(j));
}

TEST(ValidateInstance, DetectsBadTarget) {
  auto inst = testing::canonical_two_by_two();
  EXPECT_TRUE(validate_instance(inst).empty());
  inst.target.c(0, 0) = 2;
  EXPECT_FALSE(validate_instance(inst).empty());
}

}  // namespace
}  // namespace ocs
