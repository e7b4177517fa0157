#include "favsched/model.hpp"

#include "favsched/errors.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace favsched {

Job::Job(Rational pmin, std::vector<MachineId> favorites,
         const std::map<MachineId, Rational>& others, std::size_t machines)
    : pmin_(std::move(pmin)), favorites_(std::move(favorites)) {
  if (machines == 0) throw ModelError("job needs at least one machine");
  std::sort(favorites_.begin(), favorites_.end());
  if (std::adjacent_find(favorites_.begin(), favorites_.end()) != favorites_.end())
    throw ModelError("duplicate favorite machine");
  favorite_mask_.assign(machines, false);
  for (MachineId i : favorites_) {
    if (i < 1 || i > machines)
      throw IndexError("favorite machine " + std::to_string(i) + " outside 1.." + std::to_string(machines));
    favorite_mask_[i - 1] = true;
  }
  times_.assign(machines, pmin_);
  for (const auto& [machine, time] : others) {
    if (machine < 1 || machine > machines)
      throw IndexError("machine " + std::to_string(machine) + " outside 1.." + std::to_string(machines));
    if (favorite_mask_[machine - 1])
      throw ModelError("machine " + std::to_string(machine) + " is both favorite and non-favorite");
    times_[machine - 1] = time;
  }
  const std::size_t non_favorites = machines - favorites_.size();
  if (others.size() != non_favorites)
    throw ModelError("every non-favorite machine needs a processing time");
  validate();
}

Job Job::from_row(std::vector<Rational> row) {
  if (row.empty()) throw ModelError("empty processing-time row");
  Job job;
  job.pmin_ = *std::min_element(row.begin(), row.end());
  job.favorite_mask_.assign(row.size(), false);
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] == job.pmin_) {
      job.favorites_.push_back(i + 1);
      job.favorite_mask_[i] = true;
    }
  }
  job.times_ = std::move(row);
  job.validate();
  return job;
}

void Job::validate() const {
  if (pmin_ <= 0) throw ModelError("minimum processing time must be positive");
  if (favorites_.empty()) throw ModelError("job needs at least one favorite machine");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!favorite_mask_[i] && times_[i] <= pmin_)
      throw ModelError("non-favorite time on machine " + std::to_string(i + 1) +
                       " must exceed the minimum processing time");
  }
}

bool Job::is_favorite(MachineId machine) const {
  if (machine < 1 || machine > times_.size())
    throw IndexError("machine " + std::to_string(machine) + " out of range");
  return favorite_mask_[machine - 1];
}

const Rational& Job::time(MachineId machine) const {
  if (machine < 1 || machine > times_.size())
    throw IndexError("machine " + std::to_string(machine) + " out of range");
  return times_[machine - 1];
}

Instance::Instance(std::size_t machines, std::vector<Job> jobs)
    : machines_(machines), jobs_(std::move(jobs)), min_favorites_(machines) {
  if (machines_ == 0) throw ModelError("instance needs at least one machine");
  for (const Job& job : jobs_) {
    if (job.machines() != machines_)
      throw ModelError("job row has " + std::to_string(job.machines()) + " entries, expected " +
                       std::to_string(machines_));
    min_favorites_ = std::min(min_favorites_, job.favorites().size());
  }
}

const Job& Instance::job(std::size_t id) const {
  if (id < 1 || id > jobs_.size()) throw IndexError("job " + std::to_string(id) + " out of range");
  return jobs_[id - 1];
}

const Rational& Instance::proc_time(std::size_t job_id, MachineId machine) const {
  return job(job_id).time(machine);
}

Rational Instance::total_pmin() const {
  Rational total = 0;
  for (const Job& job : jobs_) total += job.pmin();
  return total;
}

Instance Instance::prefix(std::size_t count) const {
  if (count > jobs_.size()) throw IndexError("prefix longer than instance");
  return Instance(machines_, std::vector<Job>(jobs_.begin(), jobs_.begin() + static_cast<std::ptrdiff_t>(count)));
}

Job Job::with_home(std::vector<MachineId> machines) const {
  if (machines.empty()) throw ModelError("home machine set must be non-empty");
  for (MachineId i : machines) {
    if (i < 1 || i > times_.size()) throw IndexError("home machine " + std::to_string(i) + " out of range");
    if (times_[i - 1] != pmin_) throw ModelError("home machines must run the job in its minimum time");
  }
  Job copy = *this;
  std::sort(machines.begin(), machines.end());
  copy.home_ = std::move(machines);
  return copy;
}

Job make_symmetric_job(const Rational& pmin, int group, std::size_t group_size, const Rational& scaling) {
  if (group != 1 && group != 2) throw ModelError("group must be 1 or 2");
  std::vector<Rational> row(2 * group_size);
  for (std::size_t i = 0; i < row.size(); ++i) {
    const int machine_group = i < group_size ? 1 : 2;
    row[i] = machine_group == group ? pmin : Rational(scaling * pmin);
  }
  std::vector<MachineId> home(group_size);
  for (std::size_t k = 0; k < group_size; ++k) home[k] = (group == 1 ? 1 : group_size + 1) + k;
  return Job::from_row(std::move(row)).with_home(std::move(home));
}

SymmetricInstance::SymmetricInstance(std::size_t group_size, Rational scaling, std::vector<SymmetricJob> jobs)
    : group_size_(group_size), scaling_(std::move(scaling)), jobs_(std::move(jobs)) {
  if (group_size_ < 1) throw ModelError("group size must be at least 1");
  if (scaling_ < 1) throw ModelError("scaling factor must be at least 1");
  for (const SymmetricJob& job : jobs_) {
    if (job.pmin <= 0) throw ModelError("minimum processing time must be positive");
    if (job.group != 1 && job.group != 2) throw ModelError("group must be 1 or 2");
  }
}

Rational SymmetricInstance::proc_time(std::size_t job_id, MachineId machine) const {
  if (job_id < 1 || job_id > jobs_.size()) throw IndexError("job " + std::to_string(job_id) + " out of range");
  if (machine < 1 || machine > machines()) throw IndexError("machine " + std::to_string(machine) + " out of range");
  const SymmetricJob& job = jobs_[job_id - 1];
  return group_of(machine) == job.group ? job.pmin : Rational(scaling_ * job.pmin);
}

std::vector<MachineId> SymmetricInstance::group(int which) const {
  if (which != 1 && which != 2) throw ModelError("group must be 1 or 2");
  std::vector<MachineId> machines;
  const MachineId first = which == 1 ? 1 : group_size_ + 1;
  for (std::size_t k = 0; k < group_size_; ++k) machines.push_back(first + k);
  return machines;
}

int SymmetricInstance::group_of(MachineId machine) const {
  if (machine < 1 || machine > machines()) throw IndexError("machine " + std::to_string(machine) + " out of range");
  return machine <= group_size_ ? 1 : 2;
}

Instance SymmetricInstance::to_instance() const {
  std::vector<Job> jobs;
  jobs.reserve(jobs_.size());
  for (const SymmetricJob& job : jobs_) jobs.push_back(make_symmetric_job(job.pmin, job.group, group_size_, scaling_));
  return Instance(machines(), std::move(jobs));
}

Shape SymmetricInstance::shape() const {
  const std::size_t f = scaling_ == 1 ? machines() : group_size_;
  return Shape{machines(), f, scaling_};
}

Schedule::Schedule(std::size_t machines) : machines_(machines), history_(machines), makespan_(0) {
  if (machines_ == 0) throw ModelError("schedule needs at least one machine");
}

Schedule Schedule::from_assignment(const Instance& instance, std::span<const MachineId> assignment) {
  if (assignment.size() != instance.size())
    throw ModelError("assignment covers " + std::to_string(assignment.size()) + " jobs, instance has " +
                     std::to_string(instance.size()));
  Schedule schedule(instance.machines());
  for (std::size_t j = 0; j < assignment.size(); ++j) schedule.place(instance.jobs()[j], assignment[j]);
  return schedule;
}

void Schedule::place(const Job& job, MachineId machine) {
  if (job.machines() != machines_) throw ModelError("job does not match schedule machine count");
  if (machine < 1 || machine > machines_)
    throw ContractViolation("machine " + std::to_string(machine) + " outside 1.." + std::to_string(machines_));
  const std::size_t base = history_.size() - machines_;
  history_.resize(base + 2 * machines_);
  for (std::size_t i = 0; i < machines_; ++i) history_[base + machines_ + i] = history_[base + i];
  Rational& load = history_[history_.size() - machines_ + machine - 1];
  load += job.time(machine);
  if (load > makespan_) makespan_ = load;
  assignment_.push_back(machine);
  good_.push_back(job.is_favorite(machine));
}

MachineId Schedule::machine_of(std::size_t job_id) const {
  if (job_id < 1 || job_id > assignment_.size()) throw IndexError("job " + std::to_string(job_id) + " out of range");
  return assignment_[job_id - 1];
}

bool Schedule::is_good(std::size_t job_id) const {
  if (job_id < 1 || job_id > good_.size()) throw IndexError("job " + std::to_string(job_id) + " out of range");
  return good_[job_id - 1];
}

std::span<const Rational> Schedule::loads_after(std::size_t prefix) const {
  if (prefix > assignment_.size()) throw IndexError("prefix " + std::to_string(prefix) + " out of range");
  return std::span<const Rational>(history_).subspan(prefix * machines_, machines_);
}

Rational SortedLoads::top_sum(std::size_t k) const {
  Rational total = 0;
  for (std::size_t i = 0; i < k && i < values.size(); ++i) total += values[i];
  return total;
}

SortedLoads sorted_loads(std::span<const Rational> loads) {
  SortedLoads sorted{std::vector<Rational>(loads.begin(), loads.end())};
  std::sort(sorted.values.begin(), sorted.values.end(), std::greater<>());
  return sorted;
}

SortedLoads sorted_loads(const Schedule& schedule, std::size_t prefix) {
  return sorted_loads(schedule.loads_after(prefix));
}

}  // namespace favsched
