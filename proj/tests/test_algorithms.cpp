#include "favsched/algorithms.hpp"
#include "favsched/errors.hpp"
#include "favsched/harness.hpp"
#include "favsched/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace favsched;

namespace {

Rational r(long long num, long long den = 1) { return Rational(num, den); }

Job job(std::vector<Rational> row) { return Job::from_row(std::move(row)); }

std::vector<Rational> loads(std::initializer_list<Rational> values) { return values; }

Instance random_general(std::uint64_t seed, std::size_t k, std::size_t max_m, std::size_t max_n) {
  auto rng = repetition_rng(seed, k);
  RandomSpec spec;
  spec.m = 1 + k % max_m;
  spec.f = 1 + (k / max_m) % spec.m;
  spec.n = 1 + k % max_n;
  return random_instance(spec, rng).instance;
}

}  // namespace

TEST(GreedyStep, UniqueMinimum) {
  EXPECT_EQ(greedy_step(loads({r(0), r(0)}), job({r(2), r(3)}), TieBreak::BadJobSmallestIndex), 1u);
}

TEST(GreedyStep, BadJobRulePrefersNonFavoriteOnTie) {
  const SymmetricInstance sym(2, r(5), {{r(1, 5), 1}});
  const Job small = sym.to_instance().job(1);
  const auto state = loads({r(4, 5), r(4, 5), r(0), r(0)});
  EXPECT_EQ(greedy_step(state, small, TieBreak::BadJobSmallestIndex), 3u);
  EXPECT_EQ(greedy_step(state, small, TieBreak::SmallestIndex), 1u);
}

TEST(GreedyStep, SmallInstanceMatchesOptimum) {
  const Instance instance(2, {job({r(2), r(3)}), job({r(3), r(2)}), job({r(4), r(1)})});
  Greedy greedy;
  const RunResult result = run(greedy, instance);
  EXPECT_EQ(result.schedule.makespan(), r(3));
  EXPECT_EQ(exact_opt(instance).opt_makespan, r(3));
}

TEST(GreedyFavoriteStep, RestrictsToFavorites) {
  EXPECT_EQ(greedy_favorite_step(loads({r(5), r(0)}), job({r(1), r(2)})), 1u);
  EXPECT_EQ(greedy_favorite_step(loads({r(3), r(1), r(1)}), job({r(1), r(1), r(1)})), 2u);
}

TEST(GreedyFavoriteStep, TightSequence) {
  const SymmetricInstance sym(2, r(2), {{r(1, 2), 1}, {r(1, 2), 1}, {r(1, 2), 1}, {r(1, 2), 1}, {r(1), 1}});
  GreedyFavorite algorithm;
  const RunResult result = run(algorithm, sym);
  EXPECT_EQ(result.schedule.makespan(), r(2));
  EXPECT_EQ(exact_opt(sym.to_instance()).opt_makespan, r(1));
}

TEST(Ggf, SwitchPoint) {
  const double s_star = crossover_s_star();
  EXPECT_NEAR(s_star, 1.4812, 1e-4);
  EXPECT_NEAR(s_star * s_star * s_star + s_star * s_star - 3 * s_star - 1, 0.0, 1e-10);
  EXPECT_TRUE(ggf_uses_greedy(r(6, 5)));
  EXPECT_TRUE(ggf_uses_greedy(r(1)));
  EXPECT_TRUE(ggf_uses_greedy(r(14811, 10000)));
  EXPECT_FALSE(ggf_uses_greedy(r(14813, 10000)));
  EXPECT_FALSE(ggf_uses_greedy(r(3)));
  EXPECT_TRUE(ggf_uses_greedy(r(2), r(5, 2)));  // explicit switch point
}

TEST(Ggf, NeedsScalingFactor) {
  Ggf algorithm;
  const Instance instance(2, {job({r(1), r(2)})});
  EXPECT_THROW(run(algorithm, instance), ModelError);
}

TEST(Ggf, MatchesTheChosenBranchScheduleForSchedule) {
  for (std::size_t k = 0; k < 150; ++k) {
    auto rng = repetition_rng(31, k);
    RandomSpec spec;
    spec.symmetric = true;
    spec.f = 1 + k % 3;
    spec.n = 12;
    const SymmetricInstance sym = *random_instance(spec, rng).symmetric;
    const Schedule mixed = ggf(sym);
    Greedy greedy;
    GreedyFavorite favorite;
    const Schedule expected =
        ggf_uses_greedy(sym.scaling()) ? run(greedy, sym).schedule : run(favorite, sym).schedule;
    EXPECT_EQ(mixed.assignment(), expected.assignment());
  }
}

TEST(AssignUStep, DeltaArithmetic) {
  const AssignUConfig config(r(2), r(1));
  EXPECT_EQ(config.base(), r(3, 2));
  const Job first = job({r(1), r(2)});
  const auto deltas = assign_u_deltas(loads({r(0), r(0)}), first, config);
  EXPECT_NEAR(deltas[0], 0.5, 1e-12);
  EXPECT_NEAR(deltas[1], 1.25, 1e-12);
  EXPECT_EQ(assign_u_step(loads({r(0), r(0)}), first, config), 1u);

  const Job second = job({r(1), r(1)});
  const auto after = assign_u_deltas(loads({r(1), r(0)}), second, config);
  EXPECT_NEAR(after[0], 0.75, 1e-12);
  EXPECT_NEAR(after[1], 0.5, 1e-12);
  EXPECT_EQ(assign_u_step(loads({r(1), r(0)}), second, config), 2u);
}

TEST(AssignUStep, TiesGoToSmallestIndex) {
  const AssignUConfig config(r(2), r(1));
  EXPECT_EQ(assign_u_step(loads({r(3), r(1), r(1)}), job({r(1), r(1), r(1)}), config), 2u);
}

TEST(AssignUStep, HugeLoadsStayComparable) {
  const AssignUConfig config(r(2), r(1, 1000));
  EXPECT_EQ(assign_u_step(loads({r(100), r(101)}), job({r(1), r(1)}), config), 1u);
}

TEST(AssignUConfig, RejectsBadParameters) {
  EXPECT_THROW(AssignUConfig(r(1)), ConfigError);
  EXPECT_THROW(AssignUConfig(r(1, 2)), ConfigError);
  EXPECT_THROW(AssignUConfig(r(2), r(0)), ConfigError);
  EXPECT_THROW(AssignUDoubling(r(1)), ConfigError);
}

TEST(AssignUGuarantee, ClosedForm) {
  EXPECT_NEAR(assign_u_guarantee(r(2), 4, 2), std::log(4.0) / std::log(1.5) + 1, 1e-12);
  EXPECT_NEAR(assign_u_guarantee(r(2), 3, 3), std::log(2.0) / std::log(1.5) + 1, 1e-12);
}

TEST(AssignUDoubling, FirstEstimateAndDoubling) {
  AssignUDoubling algorithm;
  const Instance instance(2, {job({r(1), r(2)}), job({r(5), r(5)}), job({r(20), r(30)}), job({r(1), r(1)})});
  run(algorithm, instance);
  const auto& phases = algorithm.phases();
  ASSERT_FALSE(phases.empty());
  EXPECT_EQ(phases.front().estimate, r(1));
  EXPECT_EQ(phases.front().first_job, 1u);
  for (std::size_t i = 1; i < phases.size(); ++i) EXPECT_EQ(phases[i].estimate, 2 * phases[i - 1].estimate);
  std::size_t placed = 0;
  for (const DoublingPhase& phase : phases) placed += phase.jobs;
  EXPECT_EQ(placed, instance.size());
}

TEST(AssignUDoubling, PhaseMakespanStaysBelowThreshold) {
  for (std::size_t k = 0; k < 60; ++k) {
    const Instance instance = random_general(41, k, 5, 14);
    AssignUDoubling algorithm;
    const RunResult result = run(algorithm, instance);
    const auto& phases = algorithm.phases();
    for (const DoublingPhase& phase : phases) {
      std::vector<Rational> phase_loads(instance.machines(), Rational(0));
      for (std::size_t j = phase.first_job; j < phase.first_job + phase.jobs; ++j) {
        const MachineId i = result.schedule.machine_of(j);
        phase_loads[i - 1] += instance.proc_time(j, i);
        EXPECT_LE(to_double(phase_loads[i - 1]), algorithm.threshold() * to_double(phase.estimate) + 1e-12);
      }
    }
  }
}

TEST(Rescale, NearTieRowCollapses) {
  const Job original = job({r(99, 100), r(1), r(1), r(1), r(2)});
  const Job rescaled = rescale_job(original, r(102, 100));
  EXPECT_EQ(rescaled.favorites(), (std::vector<MachineId>{1, 2, 3, 4}));
  const std::vector<Rational> expected{r(99, 100), r(99, 100), r(99, 100), r(99, 100), r(2)};
  EXPECT_EQ(std::vector<Rational>(rescaled.row().begin(), rescaled.row().end()), expected);
}

TEST(Rescale, UnitFactorIsIdentity) {
  const Job original = job({r(1), r(3, 2), r(1)});
  const Job rescaled = rescale_job(original, r(1));
  EXPECT_EQ(std::vector<Rational>(rescaled.row().begin(), rescaled.row().end()),
            std::vector<Rational>(original.row().begin(), original.row().end()));
  EXPECT_THROW(rescale_job(original, r(1, 2)), ConfigError);
}

TEST(Rescale, TimesBracketedAndLoadsUseOriginalTimes) {
  for (std::size_t k = 0; k < 60; ++k) {
    const Instance instance = random_general(43, k, 5, 8);
    const Rational c = r(100 + static_cast<long long>(k % 7) * 20, 100);
    const RescaleResult result = rescale_wrapper(instance, c, Greedy());
    for (std::size_t j = 1; j <= instance.size(); ++j) {
      for (MachineId i = 1; i <= instance.machines(); ++i) {
        EXPECT_LE(result.rescaled.proc_time(j, i), instance.proc_time(j, i));
        EXPECT_LE(instance.proc_time(j, i), c * result.rescaled.proc_time(j, i));
      }
    }
    const Schedule recomputed = Schedule::from_assignment(instance, result.schedule.assignment());
    EXPECT_EQ(result.schedule.makespan(), recomputed.makespan());
    EXPECT_GE(result.rescaled_favorites, instance.min_favorites());
    // The online wrapper makes the same choices.
    auto online = make_algorithm("rescale:" + to_string(c) + ":greedy");
    EXPECT_EQ(run(*online, instance).schedule.assignment(), result.schedule.assignment());
  }
}

TEST(Run, SingleJobOnItsFavorite) {
  const Instance instance(2, {Job(r(1), {2}, {{1, r(2)}}, 2)});
  Greedy greedy;
  const RunResult result = run(greedy, instance);
  EXPECT_EQ(result.schedule.assignment(), (std::vector<MachineId>{2}));
  EXPECT_EQ(result.schedule.makespan(), r(1));
  EXPECT_TRUE(result.trace.front().good);
}

namespace {

class Wayward final : public OnlineAlgorithm {
 public:
  std::string id() const override { return "wayward"; }
  std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<Wayward>(*this); }

 protected:
  MachineId choose(const Job&) override { return 7; }
};

}  // namespace

TEST(Run, InvalidMachineIsContractViolation) {
  Wayward algorithm;
  const Instance instance(2, {job({r(1), r(2)})});
  EXPECT_THROW(run(algorithm, instance), ContractViolation);
}

TEST(Run, AssignBeforeStartIsContractViolation) {
  Greedy greedy;
  EXPECT_THROW(greedy.assign(job({r(1), r(2)})), ContractViolation);
}

TEST(Run, PrefixReplayGivesSameDecisions) {
  const std::vector<std::string> ids{"greedy", "greedy-favorite", "assign-u-doubling", "rescale:3/2:greedy"};
  AlgorithmOptions options;
  for (std::size_t k = 0; k < 40; ++k) {
    auto rng = repetition_rng(47, k);
    RandomSpec spec;
    spec.symmetric = true;
    spec.f = 1 + k % 3;
    spec.n = 12;
    const GeneratedInstance generated = random_instance(spec, rng);
    std::vector<std::string> all = ids;
    all.push_back("ggf");
    for (const std::string& id : all) {
      auto full = make_algorithm(id, options);
      const auto complete = run(*full, generated.instance, generated.symmetric->shape()).schedule.assignment();
      for (std::size_t cut = 0; cut <= generated.instance.size(); cut += 3) {
        auto partial = make_algorithm(id, options);
        const auto prefix =
            run(*partial, generated.instance.prefix(cut), generated.symmetric->shape()).schedule.assignment();
        EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), complete.begin())) << id << " cut " << cut;
      }
    }
  }
}

TEST(MakeAlgorithm, StableIds) {
  AlgorithmOptions options;
  EXPECT_EQ(make_algorithm("greedy", options)->id(), "greedy");
  EXPECT_EQ(make_algorithm("greedy-favorite", options)->id(), "greedy-favorite");
  EXPECT_EQ(make_algorithm("ggf", options)->id(), "ggf");
  EXPECT_EQ(make_algorithm("assign-u-doubling", options)->id(), "assign-u-doubling");
  EXPECT_EQ(make_algorithm("rescale:1.1:greedy", options)->id(), "rescale:11/10:greedy");
  EXPECT_THROW(make_algorithm("assign-u", options), ConfigError);
  options.opt_estimate = r(1);
  EXPECT_EQ(make_algorithm("assign-u", options)->id(), "assign-u");
  EXPECT_THROW(make_algorithm("nope", options), ConfigError);
  EXPECT_THROW(make_algorithm("rescale:0.5:greedy", options), ConfigError);
  EXPECT_THROW(make_algorithm("rescale:x:greedy", options), ConfigError);
  EXPECT_EQ(parse_tie_break("smallest"), TieBreak::SmallestIndex);
  EXPECT_EQ(parse_tie_break("bad-smallest"), TieBreak::BadJobSmallestIndex);
  EXPECT_THROW(parse_tie_break("favorite-first"), ConfigError);
}

// Sum of the f largest loads never exceeds the work released so far.
TEST(GreedyProperties, TopLoadsBoundedByWork) {
  for (std::size_t k = 0; k < 300; ++k) {
    const Instance instance = random_general(53, k, 8, 50);
    for (TieBreak tie : {TieBreak::BadJobSmallestIndex, TieBreak::SmallestIndex}) {
      Greedy greedy(tie);
      const Schedule schedule = run(greedy, instance).schedule;
      Rational work = 0;
      for (std::size_t j = 1; j <= instance.size(); ++j) {
        work += instance.job(j).pmin();
        EXPECT_LE(sorted_loads(schedule, j).top_sum(instance.min_favorites()), work);
      }
    }
  }
}

TEST(GreedyProperties, GeneralBoundAgainstOptimum) {
  for (std::size_t k = 0; k < 150; ++k) {
    const Instance instance = random_general(59, k, 5, 9);
    Greedy greedy;
    const Rational online = run(greedy, instance).schedule.makespan();
    const Rational opt = exact_opt(instance).opt_makespan;
    EXPECT_LE(online, general_greedy_bound(instance.machines(), instance.min_favorites()) * opt);
  }
}

TEST(GreedyFavoriteProperties, SymmetricBoundAgainstOptimum) {
  for (std::size_t k = 0; k < 150; ++k) {
    auto rng = repetition_rng(61, k);
    RandomSpec spec;
    spec.symmetric = true;
    spec.f = 1 + k % 3;
    spec.n = 1 + k % 10;
    const SymmetricInstance sym = *random_instance(spec, rng).symmetric;
    GreedyFavorite algorithm;
    const Rational online = run(algorithm, sym).schedule.makespan();
    const Rational opt = exact_opt(sym.to_instance()).opt_makespan;
    const Rational bound = 2 - r(1, static_cast<long long>(sym.group_size())) + 1 / sym.scaling();
    EXPECT_LE(online, bound * opt);
  }
}

// When the last job sets the makespan, it is at most the f-th largest load
// before it plus that job's minimum time.
TEST(AssignUProperties, LastJobBound) {
  std::size_t checked = 0;
  for (std::size_t k = 0; k < 200; ++k) {
    const Instance instance = random_general(67, k, 6, 10);
    const OptResult opt = exact_opt(instance);
    AssignU algorithm(AssignUConfig(r(2), opt.opt_makespan));
    const Schedule schedule = run(algorithm, instance).schedule;
    const std::size_t n = instance.size();
    const MachineId last = schedule.machine_of(n);
    if (schedule.loads()[last - 1] != schedule.makespan()) continue;
    ++checked;
    const SortedLoads before = sorted_loads(schedule, n - 1);
    EXPECT_LE(schedule.makespan(), before.values[instance.min_favorites() - 1] + instance.job(n).pmin());
  }
  EXPECT_GT(checked, 50u);
}

TEST(AssignUProperties, PotentialNonIncreasingWithTrueOptimum) {
  for (std::size_t k = 0; k < 120; ++k) {
    const Instance instance = random_general(71, k, 6, 10);
    const OptResult opt = exact_opt(instance);
    for (const Rational& gamma : {r(2), r(3, 2), r(4)}) {
      const AssignUConfig config(gamma, opt.opt_makespan);
      AssignU algorithm(config);
      const Schedule schedule = run(algorithm, instance).schedule;
      EXPECT_LE(to_double(schedule.makespan() / opt.opt_makespan),
                assign_u_guarantee(gamma, instance.machines(), instance.min_favorites()) + 1e-9);
      double previous = assign_u_potential(schedule.loads_after(0), opt.witness.loads_after(0), config);
      for (std::size_t j = 1; j <= instance.size(); ++j) {
        const double current = assign_u_potential(schedule.loads_after(j), opt.witness.loads_after(j), config);
        EXPECT_LE(current, previous + 1e-9 * std::max(1.0, std::abs(previous)));
        previous = current;
      }
    }
  }
}
