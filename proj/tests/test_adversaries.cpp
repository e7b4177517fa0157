#include "favsched/adversaries.hpp"
#include "favsched/errors.hpp"
#include "favsched/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace favsched;

namespace {

Rational r(long long num, long long den = 1) { return Rational(num, den); }

std::vector<Rational> row_of(const Job& job) { return {job.row().begin(), job.row().end()}; }

}  // namespace

TEST(GreedyLowerBound, FourMachinesTwoFavorites) {
  const Construction construction = greedy_lb_sequence(4, 2);
  ASSERT_EQ(construction.instance.size(), 7u);
  const std::vector<std::vector<Rational>> expected{
      {r(4, 5), r(4, 5), r(4), r(4)},     {r(4, 5), r(4, 5), r(4), r(4)},
      {r(1, 5), r(1, 5), r(1), r(1)},     {r(1, 5), r(1, 5), r(1), r(1)},
      {r(5, 2), r(5, 2), r(1, 2), r(1, 2)}, {r(5, 2), r(5, 2), r(1, 2), r(1, 2)},
      {r(5), r(5), r(1), r(1)}};
  for (std::size_t j = 1; j <= 7; ++j) EXPECT_EQ(row_of(construction.instance.job(j)), expected[j - 1]) << j;
  EXPECT_EQ(construction.claimed_opt, r(1));
  EXPECT_EQ(exact_opt(construction.instance).opt_makespan, r(1));

  Greedy greedy;
  const AdversaryReport report = play(construction, greedy);
  EXPECT_EQ(report.online_cost, r(5, 2));
  EXPECT_EQ(report.forced_ratio, r(5, 2));
  EXPECT_EQ(report.forced_ratio, *construction.target_ratio);
}

TEST(GreedyLowerBound, SingleGroupGivesTwoMinusOneOverM) {
  for (std::size_t m = 1; m <= 5; ++m) {
    const Construction construction = greedy_lb_sequence(m, m);
    Greedy greedy;
    EXPECT_EQ(play(construction, greedy).forced_ratio, 2 - r(1, static_cast<long long>(m))) << m;
  }
}

TEST(GreedyLowerBound, RatioAcrossShapes) {
  for (std::size_t f = 1; f <= 3; ++f) {
    for (std::size_t groups = 1; groups <= 4; ++groups) {
      const std::size_t m = f * groups;
      const Construction construction = greedy_lb_sequence(m, f);
      Greedy greedy;
      const AdversaryReport report = play(construction, greedy);
      EXPECT_EQ(report.opt, r(1));
      EXPECT_EQ(report.forced_ratio, r(static_cast<long long>(m + f - 1), static_cast<long long>(f)));
    }
  }
}

TEST(GreedyLowerBound, ParameterErrors) {
  EXPECT_THROW(greedy_lb_sequence(4, 3), ParameterError);
  EXPECT_THROW(greedy_lb_sequence(2, 3), ParameterError);
  EXPECT_THROW(greedy_lb_sequence(4, 2, r(4)), ParameterError);
  EXPECT_NO_THROW(greedy_lb_sequence(4, 2, r(9, 2)));
}

TEST(Halving, ForcesLogarithmicRatio) {
  for (const auto& [m, f] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 2}, {8, 2}, {16, 2}, {16, 4}}) {
    const std::size_t rounds = 1 + static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(m / f))));
    const Rational floor_ratio(static_cast<long long>(rounds + 1), 2);
    for (const std::string id : {"greedy", "assign-u-doubling"}) {
      auto algorithm = make_algorithm(id);
      const HalvingReport report = halving_adversary(m, f, *algorithm);
      EXPECT_EQ(report.iterations, rounds);
      EXPECT_EQ(report.opt, r(1));
      EXPECT_GE(report.forced_ratio, floor_ratio) << id << " m=" << m << " f=" << f;
      EXPECT_EQ(report.active.size(), rounds);
    }
  }
}

TEST(Halving, SmallCasesCheckedAgainstOracle) {
  Greedy greedy;
  const HalvingReport report = halving_adversary(4, 2, greedy);
  EXPECT_GE(report.forced_ratio, r(3, 2));
  EXPECT_EQ(exact_opt(report.instance).opt_makespan, report.opt);
}

TEST(Halving, RejectsOddF) {
  Greedy greedy;
  EXPECT_THROW(halving_adversary(6, 3, greedy), ParameterError);
  EXPECT_THROW(halving_adversary(2, 4, greedy), ParameterError);
}

TEST(GreedyFavoriteTight, HitsItsBound) {
  for (const auto& [f, s] : std::vector<std::pair<std::size_t, Rational>>{{2, r(2)}, {1, r(1)}, {3, r(3, 2)}, {2, r(5)}}) {
    const Construction construction = greedyfavorite_tight(f, s);
    GreedyFavorite algorithm;
    const AdversaryReport report = play(construction, algorithm);
    const Rational bound = 2 - r(1, static_cast<long long>(f)) + 1 / s;
    EXPECT_EQ(report.forced_ratio, bound);
    EXPECT_EQ(report.opt, r(1));
    EXPECT_EQ(exact_opt(construction.instance).opt_makespan, r(1));
  }
  EXPECT_EQ(play(greedyfavorite_tight(2, r(2)), GreedyFavorite()).forced_ratio, r(2));
  EXPECT_EQ(play(greedyfavorite_tight(1, r(1)), GreedyFavorite()).forced_ratio, r(2));
}

TEST(TwoMachine, WitnessIsOptimal) {
  for (const Rational& s : {r(1), r(6, 5), r(3, 2), r(2), r(3)}) {
    for (const std::string id : {"greedy", "greedy-favorite", "ggf"}) {
      AlgorithmOptions options;
      auto algorithm = make_algorithm(id, options);
      const AdversaryReport report = two_machine_adversary(s, *algorithm);
      ASSERT_GE(report.instance.size(), 1u);
      EXPECT_LE(report.instance.size(), 3u);
      EXPECT_EQ(exact_opt(report.instance).opt_makespan, report.opt) << id << " s=" << s;
      EXPECT_GE(report.forced_ratio, r(1));
      EXPECT_EQ(report.online.makespan(), report.online_cost);
    }
  }
}

TEST(TwoMachine, GreedyAtScalingTwo) {
  Greedy greedy;
  const AdversaryReport report = two_machine_adversary(r(2), greedy);
  // (1, M1) lands on machine 1; (2, M1) then costs 3 there against 4 on
  // machine 2, so Greedy stacks it. Swapping the first job gives makespan 2.
  EXPECT_EQ(report.forced_ratio, r(3, 2));
}

TEST(SmallJobsPrefix, TwoBlocks) {
  const Rational eps(1, 1000);
  const auto jobs = small_jobs_prefix(1, r(3, 2), 2 * eps, eps);
  ASSERT_FALSE(jobs.empty());
  const SymmetricInstance sym(1, r(3, 2), jobs);
  Greedy greedy;
  const Schedule schedule = run(greedy, sym).schedule;
  EXPECT_EQ(sorted_loads(schedule.loads()).values, (std::vector<Rational>{2 * eps, eps}));
}

TEST(SmallJobsPrefix, ParameterErrors) {
  const Rational eps(1, 1000);
  EXPECT_THROW(small_jobs_prefix(1, r(3, 2), r(3, 2000) + r(1, 100000), eps), ParameterError);
  EXPECT_THROW(small_jobs_prefix(1, r(2), eps, eps), ParameterError);
  EXPECT_THROW(small_jobs_prefix(1, r(3, 2), eps, r(0)), ParameterError);
  EXPECT_THROW(small_jobs_prefix(0, r(3, 2), eps, eps), ParameterError);
}

TEST(TightSymmetric, CaseFiveExact) {
  const Construction construction = tight_symmetric(5, 2, r(3));
  ASSERT_TRUE(construction.symmetric.has_value());
  EXPECT_EQ(*construction.target_ratio, r(5, 2));
  EXPECT_EQ(exact_opt(construction.instance).opt_makespan, construction.claimed_opt);
  Greedy greedy;
  EXPECT_EQ(play(construction, greedy).forced_ratio, r(5, 2));
  EXPECT_EQ(tight_symmetric_target(5, 3, r(4)), r(8, 3));
}

TEST(TightSymmetric, CaseOneExact) {
  for (const Rational& s : {r(1), r(13, 10), r(2), r(3)}) {
    const Construction construction = tight_symmetric(1, 1, s);
    Greedy greedy;
    const Rational expected = std::min(1 + s * s / (s + 1), Rational(2));
    EXPECT_EQ(*construction.target_ratio, expected);
    EXPECT_EQ(play(construction, greedy).forced_ratio, expected) << s;
    EXPECT_EQ(exact_opt(construction.instance).opt_makespan, construction.claimed_opt);
  }
  EXPECT_EQ(tight_symmetric_target(1, 1, r(1)), r(3, 2));
}

TEST(TightSymmetric, CaseTwoWithinSlack) {
  const Rational s(6, 5);
  const Rational eps(1, 1000);
  const Construction construction = tight_symmetric(2, 2, s, 6, eps);
  Greedy greedy;
  const AdversaryReport report = play(construction, greedy);
  const double target = to_double(1 + 3 * s * s / (2 * (s + 1)));
  EXPECT_NEAR(to_double(*construction.target_ratio), target, 1e-12);
  EXPECT_GE(to_double(report.forced_ratio), target - 5 * std::pow(0.2, 6) - 10 * to_double(eps));
  EXPECT_LE(to_double(report.forced_ratio), target + 1e-9);
}

TEST(TightSymmetric, CasesThreeAndFourWithinSlack) {
  const std::vector<std::tuple<int, std::size_t, Rational, unsigned>> cases{
      {3, 3, r(6, 5), 8}, {4, 5, r(13, 10), 9}};
  for (const auto& [which, f, s, u] : cases) {
    const Construction construction = tight_symmetric(which, f, s, u);
    Greedy greedy;
    const AdversaryReport report = play(construction, greedy);
    EXPECT_GE(to_double(report.forced_ratio), to_double(*construction.target_ratio) - construction.slack) << which;
    EXPECT_EQ(construction.witness.makespan(), construction.claimed_opt);
  }
}

TEST(TightSymmetric, ParameterErrors) {
  EXPECT_THROW(tight_symmetric(0, 1, r(2)), ParameterError);
  EXPECT_THROW(tight_symmetric(1, 2, r(2)), ParameterError);
  EXPECT_THROW(tight_symmetric(5, 3, r(3)), ParameterError);
  EXPECT_THROW(tight_symmetric(2, 2, r(1)), ParameterError);
  EXPECT_THROW(tight_symmetric(2, 2, r(6, 5), 7), ParameterError);
  EXPECT_THROW(tight_symmetric(2, 3, r(6, 5), 6), ParameterError);
  EXPECT_THROW(tight_symmetric(2, 2, r(17, 10), 6), ParameterError);
  EXPECT_THROW(tight_symmetric(4, 5, r(13, 10), 8), ParameterError);
}
