#pragma once

#include "favsched/algorithms.hpp"
#include "favsched/io.hpp"
#include "favsched/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace favsched {

struct VerifyOptions {
  TieBreak greedy_tie = TieBreak::BadJobSmallestIndex;  // flipped by mutation runs
  Rational gamma = 2;
  std::uint64_t seed = 20210601;
  long long node_budget = default_node_budget();
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0: no limit
};

inline constexpr int kCriterionCount = 11;

// One acceptance criterion; a criterion with a time limit fails when it
// runs over.
CriterionResult run_criterion(int id, const VerifyOptions& options);

// All criteria in order. Throws ConfigError up front for gamma <= 1.
std::vector<CriterionResult> verify_all(const VerifyOptions& options);

// "[PASS] 3 halving adversary: ..." style line.
std::string format_result(const CriterionResult& result);

Json verify_summary(const std::vector<CriterionResult>& results);

// Minimum makespan by plain enumeration of all m^n assignments, independent
// of the branch-and-bound oracle. Only for tiny instances.
Rational brute_force_opt(const Instance& instance);

}  // namespace favsched
