#pragma once

#include "favsched/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace favsched {

// Machines are numbered 1..m throughout the public API.
using MachineId = std::size_t;

// One job of the favorite-machines model: minimum processing time `pmin` on
// every favorite machine and a strictly larger time everywhere else.
class Job {
 public:
  // `others` must name exactly the machines outside `favorites`.
  Job(Rational pmin, std::vector<MachineId> favorites,
      const std::map<MachineId, Rational>& others, std::size_t machines);

  // Favorites are the machines attaining the row minimum.
  static Job from_row(std::vector<Rational> row);

  const Rational& pmin() const noexcept { return pmin_; }
  const std::vector<MachineId>& favorites() const noexcept { return favorites_; }
  bool is_favorite(MachineId machine) const;
  const Rational& time(MachineId machine) const;
  std::span<const Rational> row() const noexcept { return times_; }
  std::size_t machines() const noexcept { return times_.size(); }

  // The job's own group in a symmetric instance, else its favorites. The two
  // differ only at s = 1, where every machine attains the minimum.
  const std::vector<MachineId>& home() const noexcept { return home_.empty() ? favorites_ : home_; }
  Job with_home(std::vector<MachineId> machines) const;

 private:
  Job() = default;
  void validate() const;

  Rational pmin_;
  std::vector<MachineId> favorites_;
  std::vector<Rational> times_;
  std::vector<bool> favorite_mask_;
  std::vector<MachineId> home_;
};

// What an online algorithm may know up front about the input class.
struct Shape {
  std::size_t machines = 0;
  std::size_t min_favorites = 1;
  std::optional<Rational> scaling;  // set for symmetric instances
};

class Instance {
 public:
  Instance(std::size_t machines, std::vector<Job> jobs);

  std::size_t machines() const noexcept { return machines_; }
  std::size_t size() const noexcept { return jobs_.size(); }
  bool empty() const noexcept { return jobs_.empty(); }

  // Minimum favorite-set size; m for the empty instance.
  std::size_t min_favorites() const noexcept { return min_favorites_; }

  // 1-based job ids.
  const Job& job(std::size_t id) const;
  const std::vector<Job>& jobs() const noexcept { return jobs_; }
  const Rational& proc_time(std::size_t job_id, MachineId machine) const;

  Rational total_pmin() const;
  Instance prefix(std::size_t count) const;
  Shape shape() const { return Shape{machines_, min_favorites_, std::nullopt}; }

 private:
  std::size_t machines_;
  std::vector<Job> jobs_;
  std::size_t min_favorites_;
};

struct SymmetricJob {
  Rational pmin;
  int group;  // 1 -> machines 1..f, 2 -> machines f+1..2f
};

// Two groups of f machines; a job costs pmin on its own group and s*pmin on
// the other one.
class SymmetricInstance {
 public:
  SymmetricInstance(std::size_t group_size, Rational scaling, std::vector<SymmetricJob> jobs);

  std::size_t group_size() const noexcept { return group_size_; }
  std::size_t machines() const noexcept { return 2 * group_size_; }
  const Rational& scaling() const noexcept { return scaling_; }
  const std::vector<SymmetricJob>& jobs() const noexcept { return jobs_; }
  std::size_t size() const noexcept { return jobs_.size(); }

  Rational proc_time(std::size_t job_id, MachineId machine) const;
  std::vector<MachineId> group(int which) const;
  int group_of(MachineId machine) const;

  // With s = 1 every machine is a favorite (identical machines, f = m).
  Instance to_instance() const;
  Shape shape() const;

 private:
  std::size_t group_size_;
  Rational scaling_;
  std::vector<SymmetricJob> jobs_;
};

Job make_symmetric_job(const Rational& pmin, int group, std::size_t group_size, const Rational& scaling);

// Irrevocable job -> machine assignment with the load vector after every prefix.
class Schedule {
 public:
  explicit Schedule(std::size_t machines);

  static Schedule from_assignment(const Instance& instance, std::span<const MachineId> assignment);

  void place(const Job& job, MachineId machine);

  std::size_t machines() const noexcept { return machines_; }
  std::size_t size() const noexcept { return assignment_.size(); }
  const std::vector<MachineId>& assignment() const noexcept { return assignment_; }
  MachineId machine_of(std::size_t job_id) const;
  bool is_good(std::size_t job_id) const;

  std::span<const Rational> loads() const { return loads_after(size()); }
  std::span<const Rational> loads_after(std::size_t prefix) const;
  const Rational& makespan() const noexcept { return makespan_; }

 private:
  std::size_t machines_;
  std::vector<MachineId> assignment_;
  std::vector<bool> good_;
  std::vector<Rational> history_;  // (n + 1) x m, row j = loads after j jobs
  Rational makespan_;
};

struct SortedLoads {
  std::vector<Rational> values;  // non-increasing

  // Sum of the k largest loads.
  Rational top_sum(std::size_t k) const;
};

SortedLoads sorted_loads(std::span<const Rational> loads);
SortedLoads sorted_loads(const Schedule& schedule, std::size_t prefix);

inline const Rational& makespan(const Schedule& schedule) { return schedule.makespan(); }

}  // namespace favsched
