#pragma once

#include "favsched/algorithms.hpp"
#include "favsched/model.hpp"

#include <optional>
#include <vector>

namespace favsched {

inline constexpr long long kDefaultNodeBudget = 10'000'000;

// FAVSCHED_NODE_BUDGET when set to a positive integer, else kDefaultNodeBudget.
long long default_node_budget();

struct OptResult {
  Rational opt_makespan;
  Schedule witness;  // replayed in arrival order; loads_after(j) are the witness prefix loads
  long long node_count = 0;
};

// Minimum makespan over all m^n assignments by depth-first branch and bound.
// Throws OracleInexact when more than `budget` nodes would be needed.
OptResult exact_opt(const Instance& instance, long long budget = default_node_budget());

struct FloatOptResult {
  double opt_makespan = 0.0;  // within 1e-9 (relative) of the exact optimum
  std::vector<MachineId> witness;
  long long node_count = 0;
};

// Same search in double precision.
FloatOptResult exact_opt_float(const Instance& instance, long long budget = default_node_budget());

// max(sum_j p_j / m, max_j p_j).
Rational lb_general(const Instance& instance);

// Fractional bound from the load state before the last job: l_alpha and
// l_beta are the least loads on the last job's favorite group and on the
// other group, p_last its minimum processing time.
Rational lb_symmetric(std::size_t f, const Rational& s, const Rational& l_alpha, const Rational& l_beta,
                      const Rational& p_last);

// lb_symmetric with its inputs read from `schedule` of all but the last job
// of `instance` (any online schedule works).
Rational lb_symmetric(const SymmetricInstance& instance, const Schedule& schedule);

// (s * P_alpha + P_beta) / (f (s + 1)) with P_alpha the larger total.
Rational lb_balance(std::size_t f, const Rational& s, Rational p_alpha, Rational p_beta);
Rational lb_balance(const SymmetricInstance& instance);

struct RatioResult {
  Rational online;
  Rational opt;
  Rational ratio;  // 1 for the empty instance
};

// Runs `algorithm` (a fresh clone) and divides by the optimum, taken from
// `known_opt` when given, else from exact_opt.
RatioResult competitive_ratio(const OnlineAlgorithm& algorithm, const Instance& instance,
                              std::optional<Rational> known_opt = std::nullopt,
                              std::optional<Shape> shape = std::nullopt,
                              long long budget = default_node_budget());

}  // namespace favsched
