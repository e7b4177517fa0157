#include "favsched/algorithms.hpp"

#include "favsched/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace favsched {

TieBreak parse_tie_break(std::string_view id) {
  if (id == "smallest") return TieBreak::SmallestIndex;
  if (id == "bad-smallest") return TieBreak::BadJobSmallestIndex;
  throw ConfigError("unknown tie-break '" + std::string(id) + "' (expected smallest|bad-smallest)");
}

std::string_view to_string(TieBreak tie) {
  return tie == TieBreak::SmallestIndex ? "smallest" : "bad-smallest";
}

MachineId greedy_step(std::span<const Rational> loads, const Job& job, TieBreak tie) {
  if (loads.size() != job.machines()) throw ModelError("load vector does not match job row");
  MachineId best = 0;
  Rational best_completion;
  bool best_is_bad = false;
  for (MachineId i = 1; i <= loads.size(); ++i) {
    Rational completion = loads[i - 1] + job.time(i);
    const bool bad = !job.is_favorite(i);
    bool take = best == 0 || completion < best_completion;
    if (!take && completion == best_completion && tie == TieBreak::BadJobSmallestIndex)
      take = bad && !best_is_bad;
    if (take) {
      best = i;
      best_completion = std::move(completion);
      best_is_bad = bad;
    }
  }
  return best;
}

MachineId greedy_favorite_step(std::span<const Rational> loads, const Job& job) {
  if (loads.size() != job.machines()) throw ModelError("load vector does not match job row");
  MachineId best = 0;
  for (MachineId i : job.home()) {
    if (best == 0 || loads[i - 1] < loads[best - 1]) best = i;
  }
  return best;
}

AssignUConfig::AssignUConfig(Rational gamma, Rational opt_estimate)
    : gamma_(std::move(gamma)), opt_estimate_(std::move(opt_estimate)) {
  if (gamma_ <= 1) throw ConfigError("gamma must exceed 1 (got " + to_string(gamma_) + ")");
  if (opt_estimate_ <= 0) throw ConfigError("optimum estimate must be positive");
  base_ = 1 + 1 / gamma_;
}

namespace {

// log(Delta_i), finite for every positive processing time; avoids overflow
// of a^(l / L) when loads run far ahead of the estimate.
long double log_delta(const Rational& load, const Rational& time, const Rational& estimate, long double log_base) {
  const long double x = static_cast<long double>(to_double(load / estimate));
  const long double y = static_cast<long double>(to_double(time / estimate));
  return x * log_base + std::log(std::expm1(y * log_base));
}

}  // namespace

std::vector<double> assign_u_deltas(std::span<const Rational> loads, const Job& job, const AssignUConfig& config) {
  if (loads.size() != job.machines()) throw ModelError("load vector does not match job row");
  const double a = to_double(config.base());
  std::vector<double> deltas;
  deltas.reserve(loads.size());
  for (MachineId i = 1; i <= loads.size(); ++i) {
    const double before = to_double(loads[i - 1] / config.opt_estimate());
    const double after = to_double((loads[i - 1] + job.time(i)) / config.opt_estimate());
    deltas.push_back(std::pow(a, after) - std::pow(a, before));
  }
  return deltas;
}

MachineId assign_u_step(std::span<const Rational> loads, const Job& job, const AssignUConfig& config) {
  if (loads.size() != job.machines()) throw ModelError("load vector does not match job row");
  const long double log_base = std::log(static_cast<long double>(to_double(config.base())));
  MachineId best = 0;
  long double best_value = std::numeric_limits<long double>::infinity();
  for (MachineId i = 1; i <= loads.size(); ++i) {
    const long double value = log_delta(loads[i - 1], job.time(i), config.opt_estimate(), log_base);
    if (best == 0 || value < best_value) {
      best = i;
      best_value = value;
    }
  }
  return best;
}

double assign_u_guarantee(const Rational& gamma, std::size_t machines, std::size_t min_favorites) {
  if (gamma <= 1) throw ConfigError("gamma must exceed 1");
  if (min_favorites == 0 || machines == 0) throw ConfigError("machine counts must be positive");
  const double g = to_double(gamma);
  const double a = 1.0 + 1.0 / g;
  const double ratio = g / (g - 1.0) * static_cast<double>(machines) / static_cast<double>(min_favorites);
  return std::log(ratio) / std::log(a) + 1.0;
}

double assign_u_potential(std::span<const Rational> loads, std::span<const Rational> witness_loads,
                          const AssignUConfig& config) {
  if (loads.size() != witness_loads.size()) throw ModelError("load vectors differ in length");
  const double a = to_double(config.base());
  const double gamma = to_double(config.gamma());
  double total = 0.0;
  for (std::size_t i = 0; i < loads.size(); ++i) {
    const double l = to_double(loads[i] / config.opt_estimate());
    const double o = to_double(witness_loads[i] / config.opt_estimate());
    total += std::pow(a, l) * (gamma - o);
  }
  return total;
}

double crossover_s_star() {
  auto cubic = [](double s) { return ((s + 1.0) * s - 3.0) * s - 1.0; };
  double lo = 1.0;
  double hi = 2.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (cubic(mid) <= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

bool ggf_uses_greedy(const Rational& scaling, const std::optional<Rational>& s_star) {
  if (s_star) return scaling <= *s_star;
  // s^3 + s^2 - 3s - 1 is increasing on s >= 1 and negative at s = 1.
  const Rational cubic = ((scaling + 1) * scaling - 3) * scaling - 1;
  return cubic <= 0;
}

void OnlineAlgorithm::start(const Shape& shape) {
  if (shape.machines == 0) throw ModelError("shape needs at least one machine");
  shape_ = shape;
  loads_.assign(shape.machines, Rational(0));
  started_ = true;
  on_start(shape_);
}

MachineId OnlineAlgorithm::assign(const Job& job) {
  if (!started_) throw ContractViolation(id() + ": assign() before start()");
  if (job.machines() != loads_.size()) throw ModelError("job row does not match machine count");
  const MachineId machine = choose(job);
  if (machine < 1 || machine > loads_.size())
    throw ContractViolation(id() + " returned machine " + std::to_string(machine) + " outside 1.." +
                            std::to_string(loads_.size()));
  loads_[machine - 1] += job.time(machine);
  return machine;
}

void Ggf::on_start(const Shape& shape) {
  if (!shape.scaling) throw ModelError("ggf needs a symmetric instance (scaling factor s)");
  greedy_branch_ = ggf_uses_greedy(*shape.scaling, s_star_);
}

MachineId Ggf::choose(const Job& job) {
  return greedy_branch_ ? greedy_step(loads(), job, tie_) : greedy_favorite_step(loads(), job);
}

void AssignUDoubling::on_start(const Shape& shape) {
  rho_ = assign_u_guarantee(gamma_, shape.machines, shape.min_favorites);
  phases_.clear();
  phase_loads_.assign(shape.machines, Rational(0));
  phase_makespan_ = 0;
  seen_ = 0;
}

void AssignUDoubling::open_phase(Rational estimate) {
  phases_.push_back(DoublingPhase{std::move(estimate), seen_, 0});
  for (Rational& load : phase_loads_) load = 0;
  phase_makespan_ = 0;
}

MachineId AssignUDoubling::choose(const Job& job) {
  ++seen_;
  if (phases_.empty()) open_phase(job.pmin());
  for (;;) {
    const AssignUConfig config(gamma_, phases_.back().estimate);
    const MachineId machine = assign_u_step(phase_loads_, job, config);
    Rational after = phase_loads_[machine - 1] + job.time(machine);
    const double limit = rho_ * to_double(phases_.back().estimate);
    if (to_double(after) <= limit) {
      if (after > phase_makespan_) phase_makespan_ = after;
      phase_loads_[machine - 1] = std::move(after);
      ++phases_.back().jobs;
      return machine;
    }
    open_phase(phases_.back().estimate * 2);
  }
}

Rescaled::Rescaled(Rational c, std::unique_ptr<OnlineAlgorithm> inner) : c_(std::move(c)), inner_(std::move(inner)) {
  if (c_ < 1) throw ConfigError("rescaling factor c must be at least 1");
  if (!inner_) throw ConfigError("rescale needs an inner algorithm");
}

Rescaled::Rescaled(const Rescaled& other) : OnlineAlgorithm(other), c_(other.c_), inner_(other.inner_->clone()) {}

std::string Rescaled::id() const { return "rescale:" + to_string(c_) + ":" + inner_->id(); }

void Rescaled::on_start(const Shape& shape) { inner_->start(shape); }

MachineId Rescaled::choose(const Job& job) { return inner_->assign(rescale_job(job, c_)); }

Job rescale_job(const Job& job, const Rational& c) {
  if (c < 1) throw ConfigError("rescaling factor c must be at least 1");
  std::vector<Rational> row(job.row().begin(), job.row().end());
  const Rational cutoff = c * job.pmin();
  for (Rational& time : row) {
    if (time <= cutoff) time = job.pmin();
  }
  return Job::from_row(std::move(row));
}

Instance rescale_instance(const Instance& instance, const Rational& c) {
  std::vector<Job> jobs;
  jobs.reserve(instance.size());
  for (const Job& job : instance.jobs()) jobs.push_back(rescale_job(job, c));
  return Instance(instance.machines(), std::move(jobs));
}

RunResult run(OnlineAlgorithm& algorithm, const Instance& instance, std::optional<Shape> shape) {
  algorithm.start(shape.value_or(instance.shape()));
  RunResult result{Schedule(instance.machines()), {}};
  result.trace.reserve(instance.size());
  for (const Job& job : instance.jobs()) {
    const MachineId machine = algorithm.assign(job);
    result.schedule.place(job, machine);
    result.trace.push_back(StepRecord{machine, job.is_favorite(machine),
                                      result.schedule.loads()[machine - 1]});
  }
  return result;
}

RunResult run(OnlineAlgorithm& algorithm, const SymmetricInstance& instance) {
  return run(algorithm, instance.to_instance(), instance.shape());
}

Schedule ggf(const SymmetricInstance& instance, const std::optional<Rational>& s_star, TieBreak tie) {
  Ggf algorithm(s_star, tie);
  return run(algorithm, instance).schedule;
}

RescaleResult rescale_wrapper(const Instance& instance, const Rational& c, const OnlineAlgorithm& inner) {
  Instance rescaled = rescale_instance(instance, c);
  auto algorithm = inner.clone();
  RunResult inner_run = run(*algorithm, rescaled);
  Schedule schedule = Schedule::from_assignment(instance, inner_run.schedule.assignment());
  const std::size_t favorites = rescaled.min_favorites();
  return RescaleResult{std::move(schedule), std::move(rescaled), favorites};
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(std::string_view id, const AlgorithmOptions& options) {
  if (id == "greedy") return std::make_unique<Greedy>(options.tie);
  if (id == "greedy-favorite") return std::make_unique<GreedyFavorite>();
  if (id == "ggf") return std::make_unique<Ggf>(options.s_star, options.tie);
  if (id == "assign-u") {
    if (!options.opt_estimate) throw ConfigError("assign-u needs a known optimum estimate");
    return std::make_unique<AssignU>(AssignUConfig(options.gamma, *options.opt_estimate));
  }
  if (id == "assign-u-doubling") return std::make_unique<AssignUDoubling>(options.gamma);
  if (id.starts_with("rescale:")) {
    const std::string_view rest = id.substr(8);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ConfigError("expected rescale:<c>:<inner-id>");
    Rational c;
    try {
      c = parse_rational(rest.substr(0, colon));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("bad rescaling factor: ") + e.what());
    }
    return std::make_unique<Rescaled>(std::move(c), make_algorithm(rest.substr(colon + 1), options));
  }
  throw ConfigError("unknown algorithm '" + std::string(id) + "'");
}

}  // namespace favsched
