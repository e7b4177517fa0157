#include "favsched/verify.hpp"

#include "favsched/adversaries.hpp"
#include "favsched/errors.hpp"
#include "favsched/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

namespace favsched {
namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (passed) detail << " FAILED: " << what << ";";
    passed = false;
  }
};

std::size_t draw(std::mt19937_64& rng, std::size_t low, std::size_t high) {
  return std::uniform_int_distribution<std::size_t>(low, high)(rng);
}

std::string text(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

template <class Num>
class Enumerator {
 public:
  Enumerator(std::vector<std::vector<Num>> times, std::size_t machines)
      : times_(std::move(times)), loads_(machines, Num(0)) {}

  Num solve() {
    best_set_ = false;
    visit(0, Num(0));
    return best_;
  }

 private:
  void visit(std::size_t depth, const Num& current) {
    if (depth == times_.size()) {
      if (!best_set_ || current < best_) {
        best_ = current;
        best_set_ = true;
      }
      return;
    }
    for (std::size_t i = 0; i < loads_.size(); ++i) {
      loads_[i] += times_[depth][i];
      visit(depth + 1, std::max(current, loads_[i]));
      loads_[i] -= times_[depth][i];
    }
  }

  std::vector<std::vector<Num>> times_;
  std::vector<Num> loads_;
  Num best_ = 0;
  bool best_set_ = false;
};

Rational opt_of(const Instance& instance, long long budget) { return exact_opt(instance, budget).opt_makespan; }

Outcome greedy_tightness(const VerifyOptions& options) {
  Outcome out;
  const std::pair<std::size_t, std::size_t> cases[] = {{4, 2}, {6, 2}, {6, 3}, {8, 4}, {3, 3}};
  Greedy greedy(options.greedy_tie);
  for (const auto& [m, f] : cases) {
    const Construction c = greedy_lb_sequence(m, f);
    const AdversaryReport report = play(c, greedy);
    const Rational target(static_cast<long>(m + f - 1), static_cast<long>(f));
    out.detail << "(" << m << "," << f << ") ratio " << to_string(report.forced_ratio);
    if (report.forced_ratio != target) out.fail("(m,f)=(" + std::to_string(m) + "," + std::to_string(f) + ") ratio " +
                                                to_string(report.forced_ratio) + " != " + to_string(target));
    if (report.opt != 1) out.fail("witness makespan " + to_string(report.opt));
    if (m <= 6) {
      const Rational opt = opt_of(c.instance, options.node_budget);
      out.detail << " opt " << to_string(opt);
      if (opt != 1) out.fail("exact optimum " + to_string(opt));
    }
    out.detail << "; ";
  }
  return out;
}

Outcome greedy_invariant(const VerifyOptions& options) {
  Outcome out;
  std::size_t prefixes = 0;
  std::size_t violations = 0;
  for (std::size_t k = 0; k < 1000; ++k) {
    auto rng = repetition_rng(options.seed + 2, k);
    RandomSpec spec;
    spec.m = draw(rng, 1, 8);
    spec.f = draw(rng, 1, spec.m);
    spec.n = draw(rng, 1, 50);
    const Instance instance = random_instance(spec, rng).instance;
    Greedy greedy(options.greedy_tie);
    const Schedule schedule = run(greedy, instance).schedule;
    const std::size_t f = instance.min_favorites();
    Rational work = 0;
    for (std::size_t j = 1; j <= instance.size(); ++j) {
      work += instance.job(j).pmin();
      ++prefixes;
      if (sorted_loads(schedule, j).top_sum(f) > work) ++violations;
    }
  }
  out.detail << prefixes << " prefixes checked, " << violations << " violations";
  if (violations != 0) out.fail(std::to_string(violations) + " prefixes break the invariant");
  return out;
}

Outcome halving(const VerifyOptions& options) {
  Outcome out;
  struct Entry {
    std::string label;
    std::unique_ptr<OnlineAlgorithm> algorithm;
  };
  for (std::size_t m : {4, 8, 16}) {
    std::vector<Entry> entries;
    entries.push_back({"greedy", std::make_unique<Greedy>(options.greedy_tie)});
    entries.push_back({"greedy-favorite", std::make_unique<GreedyFavorite>()});
    entries.push_back({"assign-u-doubling", std::make_unique<AssignUDoubling>(options.gamma)});
    // GGF has no scaling factor on a general instance and falls back to Greedy.
    entries.push_back({"ggf->greedy", std::make_unique<Greedy>(options.greedy_tie)});
    for (Entry& entry : entries) {
      const HalvingReport report = halving_adversary(m, 2, *entry.algorithm);
      const Rational target(static_cast<long>(report.iterations + 1), 2);
      if (report.online_cost < target)
        out.fail(entry.label + " at m=" + std::to_string(m) + " only reached " + to_string(report.online_cost));
      if (report.opt != 1) out.fail("witness makespan " + to_string(report.opt));
      for (std::size_t i = 0; i < report.average_before.size(); ++i) {
        if (report.average_before[i] < Rational(static_cast<long>(i), 2))
          out.fail(entry.label + ": average load before round " + std::to_string(i + 1) + " too small");
      }
      out.detail << entry.label << "@" << m << "=" << to_string(report.online_cost) << " ";
    }
  }
  return out;
}

struct OracleCase {
  Instance instance;
  OptResult opt;
};

// Shared by the Assign-U criteria: m <= 6, n <= 10, solved exactly.
std::vector<OracleCase> assign_u_cases(const VerifyOptions& options) {
  std::vector<OracleCase> cases;
  for (std::size_t k = 0; k < 200; ++k) {
    auto rng = repetition_rng(options.seed + 4, k);
    RandomSpec spec;
    spec.m = draw(rng, 1, 6);
    spec.f = draw(rng, 1, spec.m);
    spec.n = draw(rng, 1, 10);
    Instance instance = random_instance(spec, rng).instance;
    OptResult opt = exact_opt(instance, options.node_budget);
    cases.push_back(OracleCase{std::move(instance), std::move(opt)});
  }
  return cases;
}

Outcome assign_u_known(const VerifyOptions& options) {
  Outcome out;
  double worst = 0.0;
  std::size_t steps = 0;
  for (const OracleCase& c : assign_u_cases(options)) {
    const Rational& opt = c.opt.opt_makespan;
    const AssignUConfig config(options.gamma, opt);
    AssignU algorithm(config);
    const Schedule schedule = run(algorithm, c.instance).schedule;
    const double rho = assign_u_guarantee(options.gamma, c.instance.machines(), c.instance.min_favorites());
    const double ratio = to_double(schedule.makespan() / opt);
    worst = std::max(worst, ratio / rho);
    if (ratio > rho + 1e-9) out.fail("ratio " + text(ratio) + " above " + text(rho));
    double previous = assign_u_potential(schedule.loads_after(0), c.opt.witness.loads_after(0), config);
    for (std::size_t j = 1; j <= c.instance.size(); ++j) {
      const double current = assign_u_potential(schedule.loads_after(j), c.opt.witness.loads_after(j), config);
      ++steps;
      if (current > previous + 1e-9 * std::max(1.0, std::abs(previous)))
        out.fail("potential rose from " + text(previous) + " to " + text(current));
      previous = current;
    }
  }
  out.detail << "200 instances, " << steps << " potential steps, worst ratio/bound " << text(worst);
  return out;
}

Outcome assign_u_doubling(const VerifyOptions& options) {
  Outcome out;
  double worst = 0.0;
  std::size_t phases = 0;
  for (const OracleCase& c : assign_u_cases(options)) {
    AssignUDoubling algorithm(options.gamma);
    const Schedule schedule = run(algorithm, c.instance).schedule;
    const double rho = assign_u_guarantee(options.gamma, c.instance.machines(), c.instance.min_favorites());
    const double ratio = to_double(schedule.makespan() / c.opt.opt_makespan);
    worst = std::max(worst, ratio / (4 * rho));
    if (ratio > 4 * rho + 1e-9) out.fail("ratio " + text(ratio) + " above " + text(4 * rho));
    const auto& trace = algorithm.phases();
    phases += trace.size();
    if (trace.empty() || trace.front().estimate != c.instance.job(1).pmin()) out.fail("first estimate is not p_1");
    for (std::size_t i = 1; i < trace.size(); ++i) {
      if (trace[i].estimate != 2 * trace[i - 1].estimate) out.fail("estimates do not double");
    }
  }
  out.detail << "200 instances, " << phases << " phases, worst ratio/(4 rho) " << text(worst);
  return out;
}

Outcome symmetric_greedy(const VerifyOptions& options) {
  Outcome out;
  double worst = 0.0;
  for (std::size_t k = 0; k < 500; ++k) {
    auto rng = repetition_rng(options.seed + 6, k);
    RandomSpec spec;
    spec.symmetric = true;
    spec.f = draw(rng, 1, 3);
    spec.n = draw(rng, 1, 10);
    const GeneratedInstance generated = random_instance(spec, rng);
    const SymmetricInstance& sym = *generated.symmetric;
    Greedy greedy(options.greedy_tie);
    const Rational online = run(greedy, sym).schedule.makespan();
    const Rational ratio = online / opt_of(generated.instance, options.node_budget);
    const Rational& s = sym.scaling();
    const Rational bound = symmetric_greedy_bound(sym.group_size(), s);
    worst = std::max(worst, to_double(ratio / bound));
    if (to_double(ratio) > to_double(bound) + 1e-9)
      out.fail("ratio " + to_string(ratio) + " above " + to_string(bound) + " at s=" + to_string(s));
  }
  out.detail << "500 instances, worst ratio/bound " << text(worst);
  return out;
}

Outcome greedy_favorite_tightness(const VerifyOptions& options) {
  Outcome out;
  const std::pair<std::size_t, Rational> cases[] = {{1, Rational(1)}, {2, Rational(2)}, {3, Rational(3, 2)}};
  GreedyFavorite algorithm;
  for (const auto& [f, s] : cases) {
    const Construction c = greedyfavorite_tight(f, s);
    const AdversaryReport report = play(c, algorithm);
    const Rational target = 2 - Rational(1, static_cast<long>(f)) + 1 / s;
    if (report.forced_ratio != target) out.fail("ratio " + to_string(report.forced_ratio) + " != " + to_string(target));
    if (report.opt != 1) out.fail("witness makespan " + to_string(report.opt));
    const Rational opt = opt_of(c.instance, options.node_budget);
    if (opt != 1) out.fail("exact optimum " + to_string(opt));
    out.detail << "(" << f << "," << to_string(s) << ") ratio " << to_string(report.forced_ratio) << "; ";
  }
  return out;
}

Outcome symmetric_tightness(const VerifyOptions& options) {
  Outcome out;
  Greedy greedy(options.greedy_tie);
  auto check = [&](const Construction& c, const std::string& label) {
    const AdversaryReport report = play(c, greedy);
    if (report.witness.makespan() != c.claimed_opt) out.fail(label + ": witness makespan differs from claim");
    const double gap = to_double(*c.target_ratio - report.forced_ratio);
    out.detail << label << " ratio " << text(to_double(report.forced_ratio)) << " target "
               << text(to_double(*c.target_ratio)) << "; ";
    if (c.slack == 0.0) {
      if (report.forced_ratio != *c.target_ratio) out.fail(label + ": not exact");
    } else if (std::abs(gap) > c.slack) {
      out.fail(label + ": off by " + text(gap) + " > slack " + text(c.slack));
    }
  };
  for (const Rational& s : {Rational(1), Rational(13, 10), Rational(2)})
    check(tight_symmetric(1, 1, s), "case1 s=" + to_string(s));
  check(tight_symmetric(5, 2, Rational(3)), "case5 f=2");
  check(tight_symmetric(5, 3, Rational(4)), "case5 f=3");
  const Rational eps(1, 10000);
  check(tight_symmetric(2, 2, Rational(3, 2), 8, eps), "case2 f=2 s=3/2 u=8");
  check(tight_symmetric(3, 3, Rational(6, 5), 8, eps), "case3 f=3 s=6/5 u=8");
  check(tight_symmetric(4, 5, Rational(13, 10), 9, eps), "case4 f=5 s=13/10 u=9");
  return out;
}

Outcome two_machine(const VerifyOptions& options) {
  Outcome out;
  double worst_ggf = 0.0;
  for (const Rational& s : {Rational(1), Rational(6, 5), Rational(14812, 10000), Rational(2), Rational(3)}) {
    const double bound = std::min(to_double(1 + s * s / (s + 1)), to_double(1 + 1 / s));
    std::vector<std::unique_ptr<OnlineAlgorithm>> algorithms;
    algorithms.push_back(std::make_unique<Greedy>(options.greedy_tie));
    algorithms.push_back(std::make_unique<Greedy>(TieBreak::SmallestIndex));
    algorithms.push_back(std::make_unique<GreedyFavorite>());
    algorithms.push_back(std::make_unique<Ggf>(std::nullopt, options.greedy_tie));
    algorithms.push_back(std::make_unique<AssignU>(AssignUConfig(options.gamma, 1)));
    algorithms.push_back(std::make_unique<AssignUDoubling>(options.gamma));
    algorithms.push_back(std::make_unique<Rescaled>(Rational(11, 10), std::make_unique<Greedy>(options.greedy_tie)));
    for (const auto& algorithm : algorithms) {
      const AdversaryReport report = two_machine_adversary(s, *algorithm);
      const double ratio = to_double(report.forced_ratio);
      if (ratio < bound - 1e-9) out.fail(report.algorithm + " at s=" + to_string(s) + " only forced " + text(ratio));
      if (report.algorithm == "ggf") {
        worst_ggf = std::max(worst_ggf, ratio);
        if (std::abs(ratio - bound) > 1e-9) out.fail("ggf at s=" + to_string(s) + " forced " + text(ratio));
        out.detail << "ggf@" << to_string(s) << "=" << text(ratio) << " ";
      }
    }
  }
  out.detail << "max " << text(worst_ggf);
  if (worst_ggf > 1.7549 + 1e-4) out.fail("ggf maximum above 1.7549");
  return out;
}

Outcome rescaling(const VerifyOptions& options) {
  Outcome out;
  const Rational factors[] = {Rational(101, 100), Rational(11, 10), Rational(3, 2)};
  double worst = 0.0;
  std::size_t widened = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    auto rng = repetition_rng(options.seed + 10, k);
    const Rational& c = factors[k % 3];
    const std::size_t m = 2 + k % 5;
    const std::size_t n = draw(rng, 4, 8);
    std::vector<Job> jobs;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational pmin(static_cast<long>(draw(rng, 1, 100)), 10);
      const std::size_t favorite = draw(rng, 0, m - 1);
      std::vector<Rational> row(m);
      for (std::size_t i = 0; i < m; ++i) {
        if (i == favorite) {
          row[i] = pmin;
        } else if (draw(rng, 0, 1) == 0) {
          row[i] = pmin * (1 + (c - 1) * Rational(static_cast<long>(draw(rng, 1, 10)), 10));  // within factor c
        } else {
          row[i] = pmin * (c + Rational(static_cast<long>(draw(rng, 1, 200)), 100));  // beyond it
        }
      }
      jobs.push_back(Job::from_row(std::move(row)));
    }
    const Instance instance(m, std::move(jobs));
    const RescaleResult result = rescale_wrapper(instance, c, Greedy(options.greedy_tie));
    const std::size_t fhat = result.rescaled_favorites;
    if (fhat > instance.min_favorites()) ++widened;
    const Rational bound = c * Rational(static_cast<long>(m + fhat - 1), static_cast<long>(fhat));
    const Rational ratio = result.schedule.makespan() / opt_of(instance, options.node_budget);
    worst = std::max(worst, to_double(ratio / bound));
    if (ratio > bound) out.fail("ratio " + to_string(ratio) + " above " + to_string(bound));
    for (std::size_t j = 1; j <= n; ++j) {
      for (MachineId i = 1; i <= m; ++i) {
        const Rational& original = instance.proc_time(j, i);
        const Rational& rescaled = result.rescaled.proc_time(j, i);
        if (rescaled > original || original > c * rescaled) out.fail("rescaled time outside [p, c p]");
      }
    }
  }
  out.detail << "100 instances, " << widened << " with a larger rescaled f, worst ratio/bound " << text(worst);
  return out;
}

Outcome oracle_soundness(const VerifyOptions& options) {
  Outcome out;
  for (std::size_t k = 0; k < 500; ++k) {
    auto rng = repetition_rng(options.seed + 11, k);
    RandomSpec spec;
    spec.m = draw(rng, 1, 4);
    spec.f = draw(rng, 1, spec.m);
    spec.n = draw(rng, 1, 8);
    const Instance instance = random_instance(spec, rng).instance;
    const OptResult opt = exact_opt(instance, options.node_budget);
    const Rational brute = brute_force_opt(instance);
    if (opt.opt_makespan != brute)
      out.fail("branch and bound " + to_string(opt.opt_makespan) + " vs enumeration " + to_string(brute));
    const double fast = exact_opt_float(instance, options.node_budget).opt_makespan;
    if (std::abs(fast - to_double(brute)) > 1e-9 * std::max(1.0, to_double(brute))) out.fail("float search disagrees");
  }
  std::size_t bounds = 0;
  for (std::size_t k = 0; k < 1000; ++k) {
    auto rng = repetition_rng(options.seed + 12, k);
    RandomSpec spec;
    spec.n = draw(rng, 1, 10);
    if (k % 2 == 0) {
      spec.m = draw(rng, 1, 6);
      spec.f = draw(rng, 1, spec.m);
    } else {
      spec.symmetric = true;
      spec.f = draw(rng, 1, 3);
    }
    const GeneratedInstance generated = random_instance(spec, rng);
    const Rational opt = opt_of(generated.instance, options.node_budget);
    std::vector<std::pair<std::string, Rational>> lower = {{"general", lb_general(generated.instance)}};
    if (generated.symmetric) {
      lower.emplace_back("balance", lb_balance(*generated.symmetric));
      Greedy greedy(options.greedy_tie);
      const Schedule trace = run(greedy, *generated.symmetric).schedule;
      lower.emplace_back("symmetric", lb_symmetric(*generated.symmetric, trace));
    }
    for (const auto& [name, value] : lower) {
      ++bounds;
      if (value > opt) out.fail(name + " bound " + to_string(value) + " above optimum " + to_string(opt));
    }
  }
  out.detail << "500 enumeration checks, " << bounds << " lower-bound checks";
  return out;
}

struct Criterion {
  const char* name;
  double limit;
  Outcome (*body)(const VerifyOptions&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"greedy tightness", 1.0, greedy_tightness},
    {"greedy top-f invariant", 5.0, greedy_invariant},
    {"halving adversary", 1.0, halving},
    {"assign-u with known optimum", 30.0, assign_u_known},
    {"assign-u doubling", 30.0, assign_u_doubling},
    {"symmetric greedy bound", 60.0, symmetric_greedy},
    {"greedy-favorite tightness", 0.0, greedy_favorite_tightness},
    {"symmetric tightness cases", 5.0, symmetric_tightness},
    {"two-machine optimality", 0.0, two_machine},
    {"rescaling", 0.0, rescaling},
    {"oracle soundness", 0.0, oracle_soundness},
};

}  // namespace

Rational brute_force_opt(const Instance& instance) {
  if (instance.empty()) return 0;
  // Exact integers on a common denominator when they fit, else rationals.
  Integer scale = 1;
  for (const Job& job : instance.jobs()) {
    for (const Rational& time : job.row()) scale = boost::multiprecision::lcm(scale, denominator(time));
  }
  std::vector<std::vector<long long>> scaled;
  Integer total = 0;
  const Integer limit = std::numeric_limits<long long>::max() / 4;
  bool fits = true;
  for (const Job& job : instance.jobs()) {
    std::vector<long long> row;
    for (const Rational& time : job.row()) {
      const Integer value = numerator(time) * (scale / denominator(time));
      total += value;
      if (value > limit || total > limit) fits = false;
      if (fits) row.push_back(value.convert_to<long long>());
    }
    scaled.push_back(std::move(row));
  }
  if (fits) {
    Enumerator<long long> search(std::move(scaled), instance.machines());
    return Rational(Integer(search.solve())) / Rational(scale);
  }
  std::vector<std::vector<Rational>> times;
  for (const Job& job : instance.jobs()) times.emplace_back(job.row().begin(), job.row().end());
  Enumerator<Rational> search(std::move(times), instance.machines());
  return search.solve();
}

CriterionResult run_criterion(int id, const VerifyOptions& options) {
  if (id < 1 || id > kCriterionCount) throw ParameterError("criterion id must be 1.." + std::to_string(kCriterionCount));
  const Criterion& criterion = kCriteria[id - 1];
  CriterionResult result;
  result.id = id;
  result.name = criterion.name;
  result.time_limit = criterion.limit;
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = criterion.body(options);
  } catch (const std::exception& e) {
    outcome.fail(std::string("exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.passed = outcome.passed;
  result.detail = outcome.detail.str();
  if (criterion.limit > 0 && result.seconds >= criterion.limit) {
    result.passed = false;
    result.detail += " (over the " + text(criterion.limit) + " s limit)";
  }
  return result;
}

std::vector<CriterionResult> verify_all(const VerifyOptions& options) {
  AssignUConfig check(options.gamma);
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) results.push_back(run_criterion(id, options));
  return results;
}

std::string format_result(const CriterionResult& result) {
  std::ostringstream line;
  line << (result.passed ? "[PASS] " : "[FAIL] ") << result.id << " " << result.name << " (" << text(result.seconds)
       << " s";
  if (result.time_limit > 0) line << " of " << text(result.time_limit);
  line << "): " << result.detail;
  return line.str();
}

Json verify_summary(const std::vector<CriterionResult>& results) {
  Json criteria = Json::array();
  bool all = true;
  for (const CriterionResult& result : results) {
    all = all && result.passed;
    criteria.push_back({{"id", result.id},
                        {"name", result.name},
                        {"passed", result.passed},
                        {"seconds", result.seconds},
                        {"time_limit", result.time_limit > 0 ? Json(result.time_limit) : Json(nullptr)},
                        {"detail", result.detail}});
  }
  return {{"passed", all}, {"criteria", criteria}};
}

}  // namespace favsched
