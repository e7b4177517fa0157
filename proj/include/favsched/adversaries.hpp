#pragma once

#include "favsched/algorithms.hpp"
#include "favsched/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace favsched {

// A fixed job sequence together with an explicit schedule certifying its
// optimum. `claimed_opt` is always the witness makespan.
struct Construction {
  std::string generator;
  Instance instance;
  std::optional<SymmetricInstance> symmetric;
  Schedule witness;
  Rational claimed_opt;
  // Ratio Greedy (bad-job tie rule) is forced to, when the construction pins one.
  std::optional<Rational> target_ratio;
  // Allowed shortfall of the realized ratio below target_ratio; zero for
  // exact constructions, 10 (s-1)^u + 100 eps for the small-jobs ones.
  double slack = 0.0;
  // Extra scalars worth reporting (chosen s, effective epsilon, ...).
  std::vector<std::pair<std::string, std::string>> notes;
};

struct AdversaryReport {
  std::string generator;
  std::string algorithm;
  Instance instance{1, {}};  // the released jobs; for adaptive adversaries the transcript
  std::optional<SymmetricInstance> symmetric;
  Schedule online{1};
  Schedule witness{1};
  Rational online_cost;
  Rational opt;
  Rational forced_ratio;
  std::vector<std::pair<std::string, std::string>> notes;
};

// Runs a fresh clone of `algorithm` on the construction.
AdversaryReport play(const Construction& construction, const OnlineAlgorithm& algorithm);

// Two-phase sequence forcing Greedy to (m + f - 1) / f with optimum 1.
// Without `scaling`, s = floor(max(m, m' - 1 + sqrt((m' - 1)(m' - 2)))) + 1, m' = m / f.
Construction greedy_lb_sequence(std::size_t m, std::size_t f, std::optional<Rational> scaling = std::nullopt);

struct HalvingReport : AdversaryReport {
  std::size_t iterations = 0;                  // u
  std::size_t machines_used = 0;               // m*
  std::vector<std::vector<MachineId>> active;  // M_1 .. M_u
  std::vector<Rational> average_before;        // average load of M_i before J_i
};

// Adaptive adversary: u = 1 + floor(log2(m / f)) rounds over a shrinking
// machine set; every algorithm ends with makespan >= (u + 1) / 2 while the
// witness has makespan 1. Requires even f.
HalvingReport halving_adversary(std::size_t m, std::size_t f, OnlineAlgorithm& algorithm);

// f(f-1) x (1/f, M1), f x (1/s, M1), (1, M1).
Construction greedyfavorite_tight(std::size_t f, const Rational& s);

// Adaptive three-job adversary on two machines.
AdversaryReport two_machine_adversary(const Rational& s, OnlineAlgorithm& algorithm);

// f x (eps, M1) followed by alternating blocks f x (2 eps / s, M1),
// f x (2 eps / s, M2), ... for t / eps blocks in total. Needs 1 <= s < 2.
std::vector<SymmetricJob> small_jobs_prefix(std::size_t f, const Rational& s, const Rational& t, const Rational& eps);

// Sequences on which Greedy attains its symmetric-model bound:
//   1: f = 1, any s                          -> min{1 + s^2/(s+1), 2}
//   2: f = 2, 1 < s <= 1.605, u even         -> 1 + 3 s^2 / (2 (s+1))
//   3: 3 <= f <= s / (s-1+(s+1)(s-1)^u), u even -> 1 + (2 - 1/f) s^2 / (s+1)
//   4: f > s / (s-1-(s+1)(s-1)^u), 1 < s <= golden ratio, u odd -> s + (2 - 1/f) s / (s+1)
//   5: 2 <= f < s                            -> 3 - 1/f
// Cases 2-4 start from a small-jobs prefix; eps is lowered so that the
// prefix height is an integer number of blocks.
Construction tight_symmetric(int which, std::size_t f, const Rational& s, unsigned u = 8,
                             const Rational& eps = Rational(1, 10000));

// Closed-form Greedy ratio for a tight_symmetric case.
Rational tight_symmetric_target(int which, std::size_t f, const Rational& s);

}  // namespace favsched
