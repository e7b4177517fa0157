#include "favsched/adversaries.hpp"

#include "favsched/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace favsched {
namespace {

std::size_t isqrt(std::size_t x) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::vector<MachineId> machine_range(MachineId first, std::size_t count) {
  std::vector<MachineId> machines(count);
  std::iota(machines.begin(), machines.end(), first);
  return machines;
}

// Job with favorites `group` and time `other` everywhere else.
Job uniform_job(const Rational& pmin, const std::vector<MachineId>& group, const Rational& other, std::size_t m) {
  std::map<MachineId, Rational> others;
  std::vector<bool> favorite(m + 1, false);
  for (MachineId i : group) favorite[i] = true;
  for (MachineId i = 1; i <= m; ++i) {
    if (!favorite[i]) others.emplace(i, other);
  }
  return Job(pmin, group, others, m);
}

// Every job goes to the group in `target`; within a group jobs are placed
// largest first on the least loaded machine.
Schedule group_lpt_witness(const SymmetricInstance& sym, const Instance& instance, const std::vector<int>& target) {
  std::vector<MachineId> assignment(instance.size(), 0);
  for (int group = 1; group <= 2; ++group) {
    const std::vector<MachineId> machines = sym.group(group);
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < target.size(); ++j) {
      if (target[j] == group) members.push_back(j);
    }
    std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return instance.jobs()[a].time(machines.front()) > instance.jobs()[b].time(machines.front());
    });
    std::vector<Rational> loads(machines.size(), Rational(0));
    for (std::size_t j : members) {
      std::size_t pick = 0;
      for (std::size_t k = 1; k < loads.size(); ++k) {
        if (loads[k] < loads[pick]) pick = k;
      }
      loads[pick] += instance.jobs()[j].time(machines[pick]);
      assignment[j] = machines[pick];
    }
  }
  return Schedule::from_assignment(instance, assignment);
}

std::vector<int> favorite_groups(const SymmetricInstance& sym) {
  std::vector<int> groups;
  groups.reserve(sym.size());
  for (const SymmetricJob& job : sym.jobs()) groups.push_back(job.group);
  return groups;
}

Construction finish_symmetric(std::string generator, SymmetricInstance sym, const std::vector<int>& target) {
  Instance instance = sym.to_instance();
  Schedule witness = group_lpt_witness(sym, instance, target);
  Rational opt = witness.makespan();
  return Construction{std::move(generator), std::move(instance), std::move(sym), std::move(witness), std::move(opt),
                      std::nullopt, 0.0, {}};
}

void append(std::vector<SymmetricJob>& jobs, std::size_t count, const Rational& pmin, int group) {
  for (std::size_t k = 0; k < count; ++k) jobs.push_back(SymmetricJob{pmin, group});
}

bool exceeds_golden_ratio(const Rational& s) { return s * s - s - 1 > 0; }

// Small-jobs prefix bringing every machine to exactly `height` under Greedy:
// the standard blocks with eps lowered to height / ceil(height / eps), then
// one levelling block f x (eps / s) favoring the leading group, which Greedy
// places on the lagging group.
std::vector<SymmetricJob> levelled_prefix(std::size_t f, const Rational& s, const Rational& height,
                                          const Rational& eps, Rational& effective_eps) {
  effective_eps = eps;
  if (height <= 0) return {};
  const Rational blocks_exact = height / eps;
  Integer blocks = numerator(blocks_exact) / denominator(blocks_exact);
  if (Rational(blocks) < blocks_exact) blocks += 1;
  effective_eps = height / Rational(blocks);
  std::vector<SymmetricJob> jobs = small_jobs_prefix(f, s, height, effective_eps);
  const bool odd = (blocks % 2) == 1;
  const int leader = odd ? 1 : 2;
  append(jobs, f, effective_eps / s, leader);
  return jobs;
}

}  // namespace

AdversaryReport play(const Construction& construction, const OnlineAlgorithm& algorithm) {
  auto fresh = algorithm.clone();
  std::optional<Shape> shape;
  if (construction.symmetric) shape = construction.symmetric->shape();
  RunResult result = run(*fresh, construction.instance, shape);
  Rational online = result.schedule.makespan();
  Rational ratio = online / construction.claimed_opt;
  return AdversaryReport{construction.generator, fresh->id(), construction.instance, construction.symmetric,
                         std::move(result.schedule), construction.witness, std::move(online),
                         construction.claimed_opt, std::move(ratio), construction.notes};
}

Construction greedy_lb_sequence(std::size_t m, std::size_t f, std::optional<Rational> scaling) {
  if (f == 0 || m == 0 || f > m) throw ParameterError("need 1 <= f <= m");
  if (m % f != 0) throw ParameterError("f must divide m");
  const std::size_t groups = m / f;
  Rational s;
  if (scaling) {
    s = *scaling;
  } else {
    const std::size_t k = groups - 1;
    const std::size_t phase_one = k + isqrt(k * (k > 0 ? k - 1 : 0));
    s = Rational(static_cast<long>(std::max(m, phase_one) + 1));
  }
  if (s <= static_cast<long>(m)) throw ParameterError("s must exceed m");
  {
    // s > k + sqrt(k (k - 1)) with k = m' - 1, i.e. s - k > 0 and (s - k)^2 > k (k - 1).
    const Rational k(static_cast<long>(groups - 1));
    if (groups > 1 && (s <= k || (s - k) * (s - k) <= k * (k - 1)))
      throw ParameterError("s too small for the first phase");
  }

  auto group = [&](std::size_t i) { return machine_range((i - 1) * f + 1, f); };
  std::vector<Job> jobs;
  std::vector<MachineId> witness;
  for (std::size_t i = 1; i < groups; ++i) {
    const auto machines = group(i);
    const Rational bad = Rational(static_cast<long>(i)) / s;
    const Rational good = 1 - bad;
    for (std::size_t k = 0; k < f; ++k) {
      jobs.push_back(uniform_job(good, machines, s * good, m));
      witness.push_back(machines[k]);
    }
    for (std::size_t k = 0; k < f; ++k) {
      jobs.push_back(uniform_job(bad, machines, s * bad, m));
      witness.push_back(machines[k]);
    }
  }
  const auto last = group(groups);
  const Rational small(1, static_cast<long>(f));
  for (std::size_t k = 0; k < f * (f - 1); ++k) {
    jobs.push_back(uniform_job(small, last, s * small, m));
    witness.push_back(last[1 + k / f]);
  }
  jobs.push_back(uniform_job(Rational(1), last, s, m));
  witness.push_back(last[0]);

  Instance instance(m, std::move(jobs));
  Schedule schedule = Schedule::from_assignment(instance, witness);
  Rational opt = schedule.makespan();
  Construction result{"greedy-lb", std::move(instance), std::nullopt, std::move(schedule), std::move(opt),
                      Rational(static_cast<long>(m + f - 1), static_cast<long>(f)), 0.0, {}};
  result.notes.emplace_back("s", to_string(s));
  return result;
}

HalvingReport halving_adversary(std::size_t m, std::size_t f, OnlineAlgorithm& algorithm) {
  if (f == 0 || f % 2 != 0) throw ParameterError("halving adversary needs an even f");
  if (f > m) throw ParameterError("need f <= m");
  std::size_t used = f;
  std::size_t u = 1;
  while (used * 2 <= m) {
    used *= 2;
    ++u;
  }
  const Rational far(static_cast<long>(m + 2));

  HalvingReport report;
  report.generator = "halving";
  report.iterations = u;
  report.machines_used = used;

  Shape shape{m, f, std::nullopt};
  algorithm.start(shape);
  report.algorithm = algorithm.id();
  Schedule online(m);
  std::vector<Job> released;
  std::vector<MachineId> witness;

  auto release = [&](const std::vector<MachineId>& favorites, MachineId witness_machine) {
    Job job = uniform_job(Rational(1), favorites, far, m);
    const MachineId machine = algorithm.assign(job);
    online.place(job, machine);
    released.push_back(std::move(job));
    witness.push_back(witness_machine);
  };
  auto average = [&](const std::vector<MachineId>& machines) -> Rational {
    Rational total = 0;
    for (MachineId i : machines) total += online.loads()[i - 1];
    return total / static_cast<long>(machines.size());
  };

  std::vector<MachineId> active = machine_range(1, used);
  for (std::size_t i = 1; i < u; ++i) {
    report.active.push_back(active);
    report.average_before.push_back(average(active));
    std::vector<std::vector<MachineId>> groups;
    for (std::size_t start = 0; start < active.size(); start += f)
      groups.emplace_back(active.begin() + static_cast<std::ptrdiff_t>(start),
                          active.begin() + static_cast<std::ptrdiff_t>(start + f));
    // Witness slots are fixed after selection; remember where this round starts.
    const std::size_t first_job = released.size();
    for (const auto& group : groups) {
      for (std::size_t k = 0; k < f / 2; ++k) release(group, 0);
    }
    std::vector<MachineId> next;
    std::size_t job = first_job;
    for (const auto& group : groups) {
      std::vector<MachineId> ranked = group;
      std::stable_sort(ranked.begin(), ranked.end(), [&](MachineId a, MachineId b) {
        return online.loads()[a - 1] > online.loads()[b - 1];
      });
      next.insert(next.end(), ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(f / 2));
      for (std::size_t k = f / 2; k < f; ++k) witness[job++] = ranked[k];
    }
    std::sort(next.begin(), next.end());
    active = std::move(next);
  }
  report.active.push_back(active);
  report.average_before.push_back(average(active));
  for (MachineId machine : active) release(active, machine);

  report.instance = Instance(m, std::move(released));
  report.online = std::move(online);
  report.witness = Schedule::from_assignment(report.instance, witness);
  report.online_cost = report.online.makespan();
  report.opt = report.witness.makespan();
  report.forced_ratio = report.online_cost / report.opt;
  report.notes.emplace_back("u", std::to_string(u));
  report.notes.emplace_back("machines_used", std::to_string(used));
  return report;
}

Construction greedyfavorite_tight(std::size_t f, const Rational& s) {
  if (f < 1) throw ParameterError("f must be at least 1");
  if (s < 1) throw ParameterError("s must be at least 1");
  std::vector<SymmetricJob> jobs;
  std::vector<int> target;
  append(jobs, f * (f - 1), Rational(1, static_cast<long>(f)), 1);
  target.insert(target.end(), f * (f - 1), 1);
  append(jobs, f, 1 / s, 1);
  target.insert(target.end(), f, 2);
  append(jobs, 1, Rational(1), 1);
  target.push_back(1);
  Construction result = finish_symmetric("gf-tight", SymmetricInstance(f, s, std::move(jobs)), target);
  result.target_ratio = 2 - Rational(1, static_cast<long>(f)) + 1 / s;
  return result;
}

AdversaryReport two_machine_adversary(const Rational& s, OnlineAlgorithm& algorithm) {
  if (s < 1) throw ParameterError("s must be at least 1");
  const SymmetricInstance empty(1, s, {});
  const Shape shape = empty.shape();
  algorithm.start(shape);

  auto job_of = [&](const Rational& pmin, int group) { return make_symmetric_job(pmin, group, 1, s); };
  auto probe = [&](const Job& job) {
    auto copy = algorithm.clone();
    return copy->assign(job);
  };

  // First job: leave load exactly 1 on some machine h. Group roles follow h.
  struct Opening {
    Rational pmin;
    int group;
    MachineId machine;
  };
  const Opening openings[] = {{Rational(1), 1, 1}, {1 / s, 2, 1}, {Rational(1), 2, 2}, {1 / s, 1, 2}};
  std::optional<Opening> opening;
  for (const Opening& candidate : openings) {
    if (probe(job_of(candidate.pmin, candidate.group)) == candidate.machine) {
      opening = candidate;
      break;
    }
  }

  std::vector<SymmetricJob> jobs;
  Schedule online(2);
  auto release = [&](const Rational& pmin, int group) {
    Job job = job_of(pmin, group);
    const MachineId machine = algorithm.assign(job);
    online.place(job, machine);
    jobs.push_back(SymmetricJob{pmin, group});
    return machine;
  };

  AdversaryReport report;
  report.generator = "two-machine";
  report.algorithm = algorithm.id();
  std::vector<MachineId> witness;
  if (!opening) {
    // No first job leaves load 1 behind: (1, M1) already lands on machine 2
    // with load s against an optimum of 1.
    release(Rational(1), 1);
    witness = {1};
    report.notes.emplace_back("opening", "none");
  } else {
    const MachineId heavy = opening->machine;
    const MachineId light = 3 - heavy;
    const int heavy_group = static_cast<int>(heavy);
    release(opening->pmin, opening->group);
    const MachineId second = release(s, heavy_group);
    if (second == heavy) {
      witness = {light, heavy};
    } else {
      release(s + 1, 3 - heavy_group);
      witness = {heavy, heavy, light};
    }
    report.notes.emplace_back("opening", "(" + to_string(opening->pmin) + ", M" + std::to_string(opening->group) + ")");
  }
  SymmetricInstance sym(1, s, std::move(jobs));
  report.instance = sym.to_instance();
  report.symmetric = std::move(sym);
  report.online = std::move(online);
  report.witness = Schedule::from_assignment(report.instance, witness);
  report.online_cost = report.online.makespan();
  report.opt = report.witness.makespan();
  report.forced_ratio = report.online_cost / report.opt;
  return report;
}

std::vector<SymmetricJob> small_jobs_prefix(std::size_t f, const Rational& s, const Rational& t, const Rational& eps) {
  if (f < 1) throw ParameterError("f must be at least 1");
  if (s < 1 || s >= 2) throw ParameterError("small-jobs prefix needs 1 <= s < 2");
  if (eps <= 0) throw ParameterError("eps must be positive");
  if (t < 0) throw ParameterError("t must be non-negative");
  const Rational blocks_exact = t / eps;
  if (denominator(blocks_exact) != 1) throw ParameterError("t / eps must be an integer");
  const auto blocks = numerator(blocks_exact);
  std::vector<SymmetricJob> jobs;
  if (blocks == 0) return jobs;
  append(jobs, f, eps, 1);
  const Rational small = 2 * eps / s;
  for (Integer k = 2; k <= blocks; ++k) append(jobs, f, small, k % 2 == 0 ? 1 : 2);
  return jobs;
}

Rational tight_symmetric_target(int which, std::size_t f, const Rational& s) {
  const Rational fr(static_cast<long>(f));
  switch (which) {
    case 1:
      return std::min(Rational(1 + s * s / (s + 1)), Rational(2));
    case 2:
      return 1 + 3 * s * s / (2 * (s + 1));
    case 3:
      return 1 + (2 - 1 / fr) * s * s / (s + 1);
    case 4:
      return s + (2 - 1 / fr) * s / (s + 1);
    case 5:
      return 3 - 1 / fr;
    default:
      throw ParameterError("case must be 1..5");
  }
}

Construction tight_symmetric(int which, std::size_t f, const Rational& s, unsigned u, const Rational& eps) {
  if (which < 1 || which > 5) throw ParameterError("case must be 1..5");
  if (s < 1) throw ParameterError("s must be at least 1");
  const Rational fr(static_cast<long>(f));
  std::vector<SymmetricJob> jobs;
  std::vector<int> target;

  if (which == 1) {
    if (f != 1) throw ParameterError("case 1 needs f = 1");
    if (!exceeds_golden_ratio(s)) {
      jobs = {{1 / (s + 1), 2}, {s / (s + 1), 2}, {Rational(1), 1}};
    } else {
      jobs = {{(s - 1) / s, 2}, {1 / s, 2}, {Rational(1), 1}};
    }
    SymmetricInstance sym(1, s, jobs);
    Construction result = finish_symmetric("sym-tight:1", std::move(sym), {2, 2, 1});
    result.target_ratio = tight_symmetric_target(1, f, s);
    return result;
  }

  if (which == 5) {
    if (f < 2 || !(fr < s)) throw ParameterError("case 5 needs 2 <= f < s");
    append(jobs, f, 1 - 1 / s, 2);
    append(jobs, f, 1 / s, 2);
    append(jobs, f * (f - 1), 1 / fr, 1);
    append(jobs, 1, Rational(1), 1);
    SymmetricInstance sym(f, s, std::move(jobs));
    std::vector<int> groups = favorite_groups(sym);
    Construction result = finish_symmetric("sym-tight:5", std::move(sym), groups);
    result.target_ratio = tight_symmetric_target(5, f, s);
    return result;
  }

  if (s <= 1) throw ParameterError("cases 2-4 need s > 1");
  if (eps <= 0) throw ParameterError("eps must be positive");
  if (u < 1) throw ParameterError("u must be positive");
  std::vector<Rational> a(u + 1);
  a[0] = 1;
  for (unsigned i = 1; i <= u; ++i) a[i] = a[i - 1] * (s - 1);
  Rational partial = 0;
  for (unsigned i = 1; i <= u; ++i) partial += a[i];
  const Rational& a_u = a[u];

  Rational effective_eps;
  std::size_t prefix_length = 0;
  Rational moved_budget = 0;  // case 4: M2-favorite prefix work the witness runs on M1

  if (which == 2 || which == 3) {
    if (u % 2 != 0) throw ParameterError("cases 2 and 3 need an even u");
    if (which == 2) {
      if (f != 2) throw ParameterError("case 2 needs f = 2");
      if (s > Rational(321, 200)) throw ParameterError("case 2 needs s <= 1.605");
    } else {
      if (f < 3) throw ParameterError("case 3 needs f >= 3");
      if (s > Rational(3, 2)) throw ParameterError("case 3 needs s <= 1.5");
      if (fr * (s - 1 + (s + 1) * a_u) > s) throw ParameterError("case 3 needs f <= s / (s - 1 + (s + 1)(s - 1)^u)");
    }
    const Rational l_alpha = (2 - 1 / fr) * s * s / (s + 1);
    const Rational good_beta = (fr + s - fr * s) / (fr * (s + 1));
    const Rational height = l_alpha - partial - good_beta + a_u;
    if (height < 0) throw ParameterError("initial small-jobs height is negative for these parameters");
    if (good_beta - a_u <= 0) throw ParameterError("(s - 1)^u too large for the second step");
    jobs = levelled_prefix(f, s, height, eps, effective_eps);
    prefix_length = jobs.size();
    append(jobs, f, good_beta - a_u, 2);
    append(jobs, f, (good_beta - a_u) / s, 2);
    append(jobs, f, a_u, 2);
    for (unsigned k = u - 1; k >= 1; --k) append(jobs, f, a[k], k % 2 == 1 ? 2 : 1);
    append(jobs, 1, Rational(1), 1);
  } else {
    if (u % 2 != 1) throw ParameterError("case 4 needs an odd u");
    if (exceeds_golden_ratio(s)) throw ParameterError("case 4 needs s <= (1 + sqrt 5) / 2");
    const Rational margin = s - 1 - (s + 1) * a_u;
    if (margin <= 0 || fr * margin <= s) throw ParameterError("case 4 needs f > s / (s - 1 - (s + 1)(s - 1)^u)");
    const Rational good_alpha = (fr * s - fr - s) / (fr * (s + 1));
    const Rational l_alpha = s + good_alpha;
    const Rational height = l_alpha - partial;
    if (height <= 0) throw ParameterError("initial small-jobs height must be positive");
    jobs = levelled_prefix(f, s, height, eps, effective_eps);
    prefix_length = jobs.size();
    append(jobs, f, a_u, 1);
    for (unsigned k = u - 1; k >= 1; --k) append(jobs, f, a[k], k % 2 == 0 ? 1 : 2);
    append(jobs, 1, Rational(1), 1);
    moved_budget = fr * (good_alpha - a_u) / s;
  }

  SymmetricInstance sym(f, s, std::move(jobs));
  target = favorite_groups(sym);
  if (moved_budget > 0) {
    Rational moved = 0;
    for (std::size_t j = 0; j < prefix_length; ++j) {
      const SymmetricJob& job = sym.jobs()[j];
      if (job.group != 2 || moved + job.pmin > moved_budget) continue;
      moved += job.pmin;
      target[j] = 1;
    }
  }
  Construction result = finish_symmetric("sym-tight:" + std::to_string(which), std::move(sym), target);
  result.target_ratio = tight_symmetric_target(which, f, s);
  result.slack = 10.0 * std::pow(to_double(s - 1), static_cast<double>(u)) + 100.0 * to_double(eps);
  result.notes.emplace_back("u", std::to_string(u));
  result.notes.emplace_back("effective_eps", to_string(effective_eps));
  result.notes.emplace_back("prefix_jobs", std::to_string(prefix_length));
  return result;
}

}  // namespace favsched
