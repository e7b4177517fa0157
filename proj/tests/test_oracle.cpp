#include "favsched/errors.hpp"
#include "favsched/harness.hpp"
#include "favsched/oracle.hpp"
#include "favsched/verify.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace favsched;

namespace {

Rational r(long long num, long long den = 1) { return Rational(num, den); }

Job job(std::vector<Rational> row) { return Job::from_row(std::move(row)); }

Instance three_jobs() {
  return Instance(2, {job({r(2), r(3)}), job({r(3), r(2)}), job({r(4), r(1)})});
}

}  // namespace

TEST(ExactOpt, SingleJobTakesItsFastestMachine) {
  const OptResult result = exact_opt(Instance(3, {job({r(4), r(2), r(2)})}));
  EXPECT_EQ(result.opt_makespan, r(2));
  EXPECT_NE(result.witness.machine_of(1), 1u);
}

TEST(ExactOpt, ThreeJobs) {
  const OptResult result = exact_opt(three_jobs());
  EXPECT_EQ(result.opt_makespan, r(3));
  EXPECT_EQ(result.witness.makespan(), r(3));
  EXPECT_GT(result.node_count, 0);
}

TEST(ExactOpt, EmptyInstance) {
  EXPECT_EQ(exact_opt(Instance(2, {})).opt_makespan, r(0));
}

TEST(ExactOpt, GreedyLowerBoundSequenceHasUnitOptimum) {
  const Construction construction = greedy_lb_sequence(4, 2);
  EXPECT_EQ(exact_opt(construction.instance).opt_makespan, r(1));
}

TEST(ExactOpt, TinyBudgetThrows) {
  std::vector<Job> jobs;
  for (int j = 1; j <= 9; ++j) jobs.push_back(job({r(j), r(j + 1), r(j + 2)}));
  const Instance big(3, jobs);
  try {
    exact_opt(big, 5);
    FAIL() << "expected OracleInexact";
  } catch (const OracleInexact& e) {
    EXPECT_GE(e.nodes(), 5);
  }
}

TEST(ExactOpt, BudgetFromEnvironment) {
  ::setenv("FAVSCHED_NODE_BUDGET", "123", 1);
  EXPECT_EQ(default_node_budget(), 123);
  ::setenv("FAVSCHED_NODE_BUDGET", "nonsense", 1);
  EXPECT_EQ(default_node_budget(), kDefaultNodeBudget);
  ::unsetenv("FAVSCHED_NODE_BUDGET");
  EXPECT_EQ(default_node_budget(), kDefaultNodeBudget);
}

TEST(ExactOptFloat, AgreesWithExact) {
  for (std::size_t k = 0; k < 80; ++k) {
    auto rng = repetition_rng(73, k);
    RandomSpec spec;
    spec.m = 1 + k % 4;
    spec.f = 1;
    spec.n = 1 + k % 8;
    const Instance instance = random_instance(spec, rng).instance;
    const double exact = to_double(exact_opt(instance).opt_makespan);
    const double fast = exact_opt_float(instance).opt_makespan;
    EXPECT_NEAR(fast, exact, 1e-9 * std::max(1.0, exact));
  }
}

TEST(ExactOpt, MatchesEnumeration) {
  for (std::size_t k = 0; k < 150; ++k) {
    auto rng = repetition_rng(79, k);
    RandomSpec spec;
    spec.m = 1 + k % 4;
    spec.f = 1 + k % spec.m;
    spec.n = k % 7;
    const Instance instance = random_instance(spec, rng).instance;
    const OptResult result = exact_opt(instance);
    EXPECT_EQ(result.opt_makespan, brute_force_opt(instance));
    EXPECT_EQ(result.witness.makespan(), result.opt_makespan);
  }
}

TEST(LowerBounds, General) {
  EXPECT_EQ(lb_general(Instance(2, {job({r(1), r(2)}), job({r(2), r(3)})})), r(2));
  EXPECT_EQ(lb_general(Instance(2, {job({r(1), r(1)}), job({r(1), r(1)}), job({r(1), r(1)})})), r(3, 2));
  EXPECT_EQ(lb_general(three_jobs()), r(5, 2));
  EXPECT_EQ(lb_general(Instance(1, {job({r(5)})})), r(5));
}

TEST(LowerBounds, Symmetric) {
  EXPECT_EQ(lb_symmetric(1, r(2), r(1), r(1), r(1)), r(7, 6));
  EXPECT_EQ(lb_symmetric(1, r(2), r(1), r(0), r(1)), r(1));
  EXPECT_THROW(lb_symmetric(0, r(2), r(1), r(1), r(1)), ParameterError);
  EXPECT_THROW(lb_symmetric(1, r(1, 2), r(1), r(1), r(1)), ParameterError);
}

TEST(LowerBounds, Balance) {
  EXPECT_EQ(lb_balance(1, r(2), r(1), r(1)), r(1));
  EXPECT_EQ(lb_balance(2, r(1), r(2), r(2)), r(1));
  EXPECT_EQ(lb_balance(1, r(2), r(0), r(3)), r(2));  // larger total is weighted by s
  EXPECT_THROW(lb_balance(1, r(2), r(-1), r(1)), ParameterError);
}

TEST(LowerBounds, NeverExceedOptimum) {
  for (std::size_t k = 0; k < 200; ++k) {
    auto rng = repetition_rng(83, k);
    RandomSpec spec;
    spec.symmetric = true;
    spec.f = 1 + k % 3;
    spec.n = 1 + k % 8;
    const GeneratedInstance generated = random_instance(spec, rng);
    const SymmetricInstance& sym = *generated.symmetric;
    const Rational opt = exact_opt(generated.instance).opt_makespan;
    EXPECT_LE(lb_general(generated.instance), opt);
    EXPECT_LE(lb_balance(sym), opt);
    Greedy greedy;
    const Schedule online = run(greedy, sym).schedule;
    EXPECT_LE(lb_symmetric(sym, online), opt);
  }
}

TEST(CompetitiveRatio, Examples) {
  Greedy greedy;
  const RatioResult three = competitive_ratio(greedy, three_jobs());
  EXPECT_EQ(three.online, r(3));
  EXPECT_EQ(three.opt, r(3));
  EXPECT_EQ(three.ratio, r(1));

  const RatioResult empty = competitive_ratio(greedy, Instance(2, {}));
  EXPECT_EQ(empty.ratio, r(1));

  const RatioResult known = competitive_ratio(greedy, three_jobs(), r(3, 2));
  EXPECT_EQ(known.ratio, r(2));
  EXPECT_THROW(competitive_ratio(greedy, three_jobs(), r(0)), ModelError);
}

TEST(CompetitiveRatio, DoesNotTouchTheCallersAlgorithm) {
  AssignUDoubling algorithm;
  competitive_ratio(algorithm, three_jobs());
  EXPECT_TRUE(algorithm.phases().empty());
}
