#pragma once

#include "favsched/model.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace favsched {

// How Greedy resolves equal completion times.
//   SmallestIndex:        lowest machine index among the minimizers.
//   BadJobSmallestIndex:  a non-favorite minimizer if there is one, then lowest index.
enum class TieBreak { SmallestIndex, BadJobSmallestIndex };

TieBreak parse_tie_break(std::string_view id);
std::string_view to_string(TieBreak tie);

// Machine minimizing loads[i] + p_ij.
MachineId greedy_step(std::span<const Rational> loads, const Job& job, TieBreak tie);

// Least loaded home machine (the favorites, or the own group when s = 1),
// lowest index on ties.
MachineId greedy_favorite_step(std::span<const Rational> loads, const Job& job);

// Exponential-weight assignment parameters. The base a = 1 + 1/gamma is fixed
// by gamma; opt_estimate is the optimum (or the current guess of it).
class AssignUConfig {
 public:
  explicit AssignUConfig(Rational gamma = 2, Rational opt_estimate = 1);

  const Rational& gamma() const noexcept { return gamma_; }
  const Rational& base() const noexcept { return base_; }
  const Rational& opt_estimate() const noexcept { return opt_estimate_; }
  AssignUConfig with_estimate(Rational estimate) const { return AssignUConfig(gamma_, std::move(estimate)); }

 private:
  Rational gamma_;
  Rational base_;
  Rational opt_estimate_;
};

// Delta_i = a^((l_i + p_ij) / L) - a^(l_i / L) for every machine.
std::vector<double> assign_u_deltas(std::span<const Rational> loads, const Job& job, const AssignUConfig& config);
MachineId assign_u_step(std::span<const Rational> loads, const Job& job, const AssignUConfig& config);

// log_a(gamma / (gamma - 1) * m / f) + 1: the known-optimum guarantee, and the
// per-phase threshold multiplier used by the doubling variant.
double assign_u_guarantee(const Rational& gamma, std::size_t machines, std::size_t min_favorites);

// Sum over machines of a^(l_i / L) * (gamma - o_i / L).
double assign_u_potential(std::span<const Rational> loads, std::span<const Rational> witness_loads,
                          const AssignUConfig& config);

// Root of s^3 + s^2 - 3s - 1 on [1, 2] by bisection to 1e-12 (about 1.4812).
double crossover_s_star();

// True when GGF runs Greedy for scaling s. Without an explicit threshold the
// comparison against the crossover root is exact (sign of the cubic).
bool ggf_uses_greedy(const Rational& scaling, const std::optional<Rational>& s_star = std::nullopt);

// Stateful online strategy. The base class owns the real machine loads and
// enforces that every returned machine exists.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  virtual std::string id() const = 0;
  virtual std::unique_ptr<OnlineAlgorithm> clone() const = 0;

  void start(const Shape& shape);
  MachineId assign(const Job& job);

  const Shape& shape() const noexcept { return shape_; }
  std::span<const Rational> loads() const noexcept { return loads_; }

 protected:
  virtual void on_start(const Shape&) {}
  virtual MachineId choose(const Job& job) = 0;

 private:
  Shape shape_;
  std::vector<Rational> loads_;
  bool started_ = false;
};

class Greedy final : public OnlineAlgorithm {
 public:
  explicit Greedy(TieBreak tie = TieBreak::BadJobSmallestIndex) : tie_(tie) {}
  std::string id() const override { return "greedy"; }
  std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<Greedy>(*this); }
  TieBreak tie_break() const noexcept { return tie_; }

 protected:
  MachineId choose(const Job& job) override { return greedy_step(loads(), job, tie_); }

 private:
  TieBreak tie_;
};

class GreedyFavorite final : public OnlineAlgorithm {
 public:
  std::string id() const override { return "greedy-favorite"; }
  std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<GreedyFavorite>(*this); }

 protected:
  MachineId choose(const Job& job) override { return greedy_favorite_step(loads(), job); }
};

// Greedy for s <= s*, GreedyFavorite otherwise. Needs a symmetric shape.
class Ggf final : public OnlineAlgorithm {
 public:
  explicit Ggf(std::optional<Rational> s_star = std::nullopt, TieBreak tie = TieBreak::BadJobSmallestIndex)
      : s_star_(std::move(s_star)), tie_(tie) {}
  std::string id() const override { return "ggf"; }
  std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<Ggf>(*this); }
  bool runs_greedy() const noexcept { return greedy_branch_; }

 protected:
  void on_start(const Shape& shape) override;
  MachineId choose(const Job& job) override;

 private:
  std::optional<Rational> s_star_;
  TieBreak tie_;
  bool greedy_branch_ = true;
};

// Assign-U with a fixed optimum estimate.
class AssignU final : public OnlineAlgorithm {
 public:
  explicit AssignU(AssignUConfig config) : config_(std::move(config)) {}
  std::string id() const override { return "assign-u"; }
  std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<AssignU>(*this); }
  const AssignUConfig& config() const noexcept { return config_; }

 protected:
  MachineId choose(const Job& job) override { return assign_u_step(loads(), job, config_); }

 private:
  AssignUConfig config_;
};

struct DoublingPhase {
  Rational estimate;
  std::size_t first_job = 0;  // 1-based arrival index of the job that opened the phase
  std::size_t jobs = 0;
};

// Assign-U run in phases. Phase i uses estimate L_i on loads that count only
// jobs of phase i; a job that would lift the phase makespan above rho * L_i
// opens phase i + 1 with L_{i+1} = 2 L_i and is placed there. L_1 is the
// first job's minimum processing time.
class AssignUDoubling final : public OnlineAlgorithm {
 public:
  explicit AssignUDoubling(Rational gamma = 2) : gamma_(std::move(gamma)) { AssignUConfig check(gamma_); }
  std::string id() const override { return "assign-u-doubling"; }
  std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<AssignUDoubling>(*this); }

  const std::vector<DoublingPhase>& phases() const noexcept { return phases_; }
  double threshold() const noexcept { return rho_; }

 protected:
  void on_start(const Shape& shape) override;
  MachineId choose(const Job& job) override;

 private:
  void open_phase(Rational estimate);

  Rational gamma_;
  double rho_ = 0.0;
  std::vector<DoublingPhase> phases_;
  std::vector<Rational> phase_loads_;
  Rational phase_makespan_;
  std::size_t seen_ = 0;
};

// Treats every machine within factor c of p_j as a favorite (time p_j) and
// lets `inner` decide on the rewritten job. Real loads use the original times.
class Rescaled final : public OnlineAlgorithm {
 public:
  Rescaled(Rational c, std::unique_ptr<OnlineAlgorithm> inner);
  Rescaled(const Rescaled& other);
  std::string id() const override;
  std::unique_ptr<OnlineAlgorithm> clone() const override { return std::make_unique<Rescaled>(*this); }
  const OnlineAlgorithm& inner() const noexcept { return *inner_; }

 protected:
  void on_start(const Shape& shape) override;
  MachineId choose(const Job& job) override;

 private:
  Rational c_;
  std::unique_ptr<OnlineAlgorithm> inner_;
};

// F^_j = {i : p_ij <= c p_j}, p^_ij = p_j on F^_j and p_ij elsewhere.
Job rescale_job(const Job& job, const Rational& c);
Instance rescale_instance(const Instance& instance, const Rational& c);

struct StepRecord {
  MachineId machine = 0;
  bool good = false;
  Rational completion;
};

struct RunResult {
  Schedule schedule;
  std::vector<StepRecord> trace;
};

// Feeds jobs in arrival order. `shape` defaults to the instance's own.
RunResult run(OnlineAlgorithm& algorithm, const Instance& instance, std::optional<Shape> shape = std::nullopt);
RunResult run(OnlineAlgorithm& algorithm, const SymmetricInstance& instance);

Schedule ggf(const SymmetricInstance& instance, const std::optional<Rational>& s_star = std::nullopt,
             TieBreak tie = TieBreak::BadJobSmallestIndex);

struct RescaleResult {
  Schedule schedule;  // loads in original processing times
  Instance rescaled;
  std::size_t rescaled_favorites = 0;  // f^
};

RescaleResult rescale_wrapper(const Instance& instance, const Rational& c, const OnlineAlgorithm& inner);

struct AlgorithmOptions {
  TieBreak tie = TieBreak::BadJobSmallestIndex;
  Rational gamma = 2;
  std::optional<Rational> s_star;
  std::optional<Rational> opt_estimate;  // required by "assign-u"
};

// "greedy", "greedy-favorite", "ggf", "assign-u", "assign-u-doubling",
// "rescale:<c>:<inner-id>". Throws ConfigError for unknown ids.
std::unique_ptr<OnlineAlgorithm> make_algorithm(std::string_view id, const AlgorithmOptions& options = {});

}  // namespace favsched
