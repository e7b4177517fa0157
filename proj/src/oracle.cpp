#include "favsched/oracle.hpp"

#include "favsched/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <string>
#include <utility>

namespace favsched {
namespace {

template <class Num>
Num convert(const Rational& value) {
  if constexpr (std::is_same_v<Num, double>) {
    return to_double(value);
  } else {
    return value;
  }
}

// Depth-first over jobs in non-increasing pmin order. A branch is cut when
// max(current makespan, largest remaining pmin, total work / m) reaches the
// incumbent. Machines with identical columns and equal current load are
// interchangeable, so only the first of them is tried.
template <class Num>
class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, long long budget)
      : machines_(instance.machines()), jobs_(instance.size()), budget_(budget) {
    order_.resize(jobs_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return instance.jobs()[a].pmin() > instance.jobs()[b].pmin();
    });
    times_.resize(jobs_);
    for (std::size_t k = 0; k < jobs_; ++k) {
      const Job& job = instance.jobs()[order_[k]];
      for (const Rational& t : job.row()) times_[k].push_back(convert<Num>(t));
    }
    suffix_sum_.assign(jobs_ + 1, Num(0));
    suffix_max_.assign(jobs_ + 1, Num(0));
    for (std::size_t k = jobs_; k-- > 0;) {
      const Num pmin = convert<Num>(instance.jobs()[order_[k]].pmin());
      suffix_sum_[k] = suffix_sum_[k + 1] + pmin;
      suffix_max_[k] = std::max(suffix_max_[k + 1], pmin);
    }
    machine_class_.resize(machines_);
    for (std::size_t i = 0; i < machines_; ++i) {
      machine_class_[i] = i;
      for (std::size_t earlier = 0; earlier < i; ++earlier) {
        bool same = true;
        for (std::size_t k = 0; k < jobs_ && same; ++k) same = times_[k][i] == times_[k][earlier];
        if (same) {
          machine_class_[i] = machine_class_[earlier];
          break;
        }
      }
    }
    loads_.assign(machines_, Num(0));
    current_.assign(jobs_, 0);
  }

  void solve() {
    seed_incumbent();
    const Num root_bound = std::max(suffix_max_[0], suffix_sum_[0] / Num(static_cast<long>(machines_)));
    if (jobs_ == 0 || root_bound >= best_) return;
    for (Num& load : loads_) load = 0;
    load_sum_ = 0;
    descend(0, Num(0));
  }

  const Num& best() const { return best_; }
  long long nodes() const { return nodes_; }

  std::vector<MachineId> witness() const {
    std::vector<MachineId> assignment(jobs_);
    for (std::size_t k = 0; k < jobs_; ++k) assignment[order_[k]] = best_sorted_[k] + 1;
    return assignment;
  }

 private:
  void seed_incumbent() {
    std::vector<Num> loads(machines_, Num(0));
    best_sorted_.assign(jobs_, 0);
    best_ = 0;
    for (std::size_t k = 0; k < jobs_; ++k) {
      std::size_t pick = 0;
      for (std::size_t i = 1; i < machines_; ++i) {
        if (loads[i] + times_[k][i] < loads[pick] + times_[k][pick]) pick = i;
      }
      loads[pick] += times_[k][pick];
      best_sorted_[k] = pick;
      if (loads[pick] > best_) best_ = loads[pick];
    }
  }

  void descend(std::size_t depth, const Num& current_max) {
    if (depth == jobs_) {
      if (current_max < best_) {
        best_ = current_max;
        best_sorted_ = current_;
      }
      return;
    }
    if (++nodes_ > budget_)
      throw OracleInexact("exact optimum needs more than " + std::to_string(budget_) + " nodes", nodes_);

    std::vector<std::pair<Num, std::size_t>> candidates;
    candidates.reserve(machines_);
    for (std::size_t i = 0; i < machines_; ++i) {
      bool duplicate = false;
      for (std::size_t earlier = 0; earlier < i && !duplicate; ++earlier)
        duplicate = machine_class_[earlier] == machine_class_[i] && loads_[earlier] == loads_[i];
      if (!duplicate) candidates.emplace_back(loads_[i] + times_[depth][i], i);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first < b.first || (a.first == b.first && a.second < b.second); });

    const Num machine_count(static_cast<long>(machines_));
    for (const auto& [completion, i] : candidates) {
      if (completion >= best_) break;
      const Num next_max = std::max(current_max, completion);
      const Num& time = times_[depth][i];
      const Num work = (load_sum_ + time + suffix_sum_[depth + 1]) / machine_count;
      if (std::max(work, suffix_max_[depth + 1]) >= best_) continue;
      loads_[i] += time;
      load_sum_ += time;
      current_[depth] = i;
      descend(depth + 1, next_max);
      loads_[i] -= time;
      load_sum_ -= time;
    }
  }

  std::size_t machines_;
  std::size_t jobs_;
  long long budget_;
  long long nodes_ = 0;
  std::vector<std::size_t> order_;
  std::vector<std::vector<Num>> times_;
  std::vector<Num> suffix_sum_;
  std::vector<Num> suffix_max_;
  std::vector<std::size_t> machine_class_;
  std::vector<Num> loads_;
  Num load_sum_ = 0;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_sorted_;
  Num best_ = 0;
};

}  // namespace

long long default_node_budget() {
  const char* text = std::getenv("FAVSCHED_NODE_BUDGET");
  if (text == nullptr || *text == '\0') return kDefaultNodeBudget;
  long long value = 0;
  auto [end, ec] = std::from_chars(text, text + std::strlen(text), value);
  if (ec != std::errc() || *end != '\0' || value <= 0) return kDefaultNodeBudget;
  return value;
}

OptResult exact_opt(const Instance& instance, long long budget) {
  BranchAndBound<Rational> search(instance, budget);
  search.solve();
  const auto assignment = search.witness();
  Schedule witness = Schedule::from_assignment(instance, assignment);
  Rational opt = witness.makespan();
  return OptResult{std::move(opt), std::move(witness), search.nodes()};
}

FloatOptResult exact_opt_float(const Instance& instance, long long budget) {
  BranchAndBound<double> search(instance, budget);
  search.solve();
  return FloatOptResult{search.best(), search.witness(), search.nodes()};
}

Rational lb_general(const Instance& instance) {
  Rational largest = 0;
  for (const Job& job : instance.jobs()) largest = std::max(largest, job.pmin());
  const Rational average = instance.total_pmin() / static_cast<long>(instance.machines());
  return std::max(average, largest);
}

Rational lb_symmetric(std::size_t f, const Rational& s, const Rational& l_alpha, const Rational& l_beta,
                      const Rational& p_last) {
  if (f < 1) throw ParameterError("f must be at least 1");
  if (s < 1) throw ParameterError("s must be at least 1");
  if (l_alpha < 0 || l_beta < 0 || p_last < 0) throw ParameterError("loads and times must be non-negative");
  const Rational fr(static_cast<long>(f));
  const Rational denom = fr * s * s + fr * s;
  const Rational first = (fr * s * l_alpha + fr * l_beta + s * p_last) / denom;
  const Rational second = (fr * l_alpha + fr * s * l_beta + s * s * p_last) / denom;
  return std::max({first, second, p_last});
}

Rational lb_symmetric(const SymmetricInstance& instance, const Schedule& schedule) {
  if (instance.size() == 0) return 0;
  if (schedule.size() + 1 < instance.size()) throw ModelError("schedule does not cover the first n-1 jobs");
  const auto loads = schedule.loads_after(instance.size() - 1);
  const SymmetricJob& last = instance.jobs().back();
  auto group_min = [&](int group) {
    Rational least = -1;
    for (MachineId i : instance.group(group)) {
      if (least < 0 || loads[i - 1] < least) least = loads[i - 1];
    }
    return least;
  };
  return lb_symmetric(instance.group_size(), instance.scaling(), group_min(last.group), group_min(3 - last.group),
                      last.pmin);
}

Rational lb_balance(std::size_t f, const Rational& s, Rational p_alpha, Rational p_beta) {
  if (f < 1) throw ParameterError("f must be at least 1");
  if (s < 1) throw ParameterError("s must be at least 1");
  if (p_alpha < 0 || p_beta < 0) throw ParameterError("totals must be non-negative");
  if (p_alpha < p_beta) std::swap(p_alpha, p_beta);
  return (s * p_alpha + p_beta) / (Rational(static_cast<long>(f)) * (s + 1));
}

Rational lb_balance(const SymmetricInstance& instance) {
  Rational totals[2] = {0, 0};
  for (const SymmetricJob& job : instance.jobs()) totals[job.group - 1] += job.pmin;
  return lb_balance(instance.group_size(), instance.scaling(), totals[0], totals[1]);
}

RatioResult competitive_ratio(const OnlineAlgorithm& algorithm, const Instance& instance,
                              std::optional<Rational> known_opt, std::optional<Shape> shape, long long budget) {
  auto fresh = algorithm.clone();
  const RunResult result = run(*fresh, instance, std::move(shape));
  Rational online = result.schedule.makespan();
  if (instance.empty()) return RatioResult{online, 0, 1};
  Rational opt = known_opt ? *known_opt : exact_opt(instance, budget).opt_makespan;
  if (opt <= 0) throw ModelError("optimum must be positive");
  Rational ratio = online / opt;
  return RatioResult{std::move(online), std::move(opt), std::move(ratio)};
}

}  // namespace favsched
