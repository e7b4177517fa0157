#include "favsched/io.hpp"

#include "favsched/errors.hpp"

#include <fstream>
#include <string>

namespace favsched {
namespace {

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ModelError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::size_t require_count(const Json& doc, const char* key) {
  const Json& value = require(doc, key);
  if (!value.is_number_integer() || value.get<long long>() < 1)
    throw ModelError(std::string("field '") + key + "' must be a positive integer");
  return value.get<std::size_t>();
}

Json notes_to_json(const std::vector<std::pair<std::string, std::string>>& notes) {
  Json out = Json::object();
  for (const auto& [key, value] : notes) out[key] = value;
  return out;
}

}  // namespace

Rational rational_from_json(const Json& value) {
  try {
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_number_float()) return rational_from_double(value.get<double>());
    if (value.is_string()) return parse_rational(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ModelError(std::string("bad number: ") + e.what());
  }
  throw ModelError("expected a number or numeric string, got " + value.dump());
}

Json rational_to_json(const Rational& value) {
  if (denominator(value) == 1 && abs(numerator(value)) < 1'000'000'000'000LL)
    return numerator(value).convert_to<long long>();
  return to_string(value);
}

Instance instance_from_json(const Json& doc) {
  const std::size_t m = require_count(doc, "m");
  const Json& jobs = require(doc, "jobs");
  if (!jobs.is_array()) throw ModelError("'jobs' must be an array");
  std::vector<Job> parsed;
  parsed.reserve(jobs.size());
  for (const Json& entry : jobs) {
    const Rational pmin = rational_from_json(require(entry, "p"));
    std::vector<MachineId> favorites;
    for (const Json& machine : require(entry, "favorites")) {
      if (!machine.is_number_integer()) throw ModelError("favorite machines must be integers");
      const long long index = machine.get<long long>();
      if (index < 1 || static_cast<std::size_t>(index) > m)
        throw IndexError("favorite machine " + std::to_string(index) + " outside 1.." + std::to_string(m));
      favorites.push_back(static_cast<MachineId>(index));
    }
    std::map<MachineId, Rational> others;
    if (entry.contains("others")) {
      for (const auto& [key, time] : entry.at("others").items()) {
        std::size_t index = 0;
        try {
          index = std::stoul(key);
        } catch (const std::exception&) {
          throw ModelError("machine key '" + key + "' is not an integer");
        }
        others.emplace(index, rational_from_json(time));
      }
    }
    parsed.emplace_back(pmin, std::move(favorites), others, m);
  }
  return Instance(m, std::move(parsed));
}

Json instance_to_json(const Instance& instance) {
  Json jobs = Json::array();
  for (const Job& job : instance.jobs()) {
    Json others = Json::object();
    for (MachineId i = 1; i <= instance.machines(); ++i) {
      if (!job.is_favorite(i)) others[std::to_string(i)] = rational_to_json(job.time(i));
    }
    jobs.push_back({{"p", rational_to_json(job.pmin())}, {"favorites", job.favorites()}, {"others", others}});
  }
  return {{"m", instance.machines()}, {"jobs", jobs}};
}

SymmetricInstance symmetric_from_json(const Json& doc) {
  const std::size_t f = require_count(doc, "f");
  const Rational s = rational_from_json(require(doc, "s"));
  const Json& jobs = require(doc, "jobs");
  if (!jobs.is_array()) throw ModelError("'jobs' must be an array");
  std::vector<SymmetricJob> parsed;
  for (const Json& entry : jobs) {
    const Json& group = require(entry, "group");
    if (!group.is_number_integer()) throw ModelError("'group' must be 1 or 2");
    parsed.push_back(SymmetricJob{rational_from_json(require(entry, "p")), group.get<int>()});
  }
  return SymmetricInstance(f, s, std::move(parsed));
}

Json symmetric_to_json(const SymmetricInstance& instance) {
  Json jobs = Json::array();
  for (const SymmetricJob& job : instance.jobs()) jobs.push_back({{"p", rational_to_json(job.pmin)}, {"group", job.group}});
  return {{"f", instance.group_size()}, {"s", rational_to_json(instance.scaling())}, {"jobs", jobs}};
}

LoadedInstance load_instance(const Json& doc) {
  if (doc.is_object() && doc.contains("f")) {
    SymmetricInstance symmetric = symmetric_from_json(doc);
    Instance instance = symmetric.to_instance();
    return LoadedInstance{std::move(instance), std::move(symmetric)};
  }
  return LoadedInstance{instance_from_json(doc), std::nullopt};
}

LoadedInstance load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instance file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ModelError(path.string() + ": " + e.what());
  }
  return load_instance(doc);
}

Json opt_to_json(const OptResult& result) {
  return {{"opt", to_double(result.opt_makespan)},
          {"opt_exact", to_string(result.opt_makespan)},
          {"witness", result.witness.assignment()},
          {"nodes", result.node_count}};
}

Json schedule_to_json(const Schedule& schedule) {
  Json loads = Json::array();
  for (const Rational& load : schedule.loads()) loads.push_back(rational_to_json(load));
  return {{"assignment", schedule.assignment()},
          {"loads", loads},
          {"makespan", rational_to_json(schedule.makespan())}};
}

Json report_to_json(const AdversaryReport& report) {
  Json out = {{"generator", report.generator},
              {"algorithm", report.algorithm},
              {"online_cost", rational_to_json(report.online_cost)},
              {"opt", rational_to_json(report.opt)},
              {"forced_ratio", rational_to_json(report.forced_ratio)},
              {"forced_ratio_value", to_double(report.forced_ratio)},
              {"online", schedule_to_json(report.online)},
              {"witness", schedule_to_json(report.witness)},
              {"notes", notes_to_json(report.notes)}};
  out["instance"] = report.symmetric ? symmetric_to_json(*report.symmetric) : instance_to_json(report.instance);
  return out;
}

Json construction_to_json(const Construction& construction) {
  Json out = {{"generator", construction.generator},
              {"opt", rational_to_json(construction.claimed_opt)},
              {"witness", schedule_to_json(construction.witness)},
              {"slack", construction.slack},
              {"notes", notes_to_json(construction.notes)}};
  if (construction.target_ratio) out["target_ratio"] = rational_to_json(*construction.target_ratio);
  out["instance"] = construction.symmetric ? symmetric_to_json(*construction.symmetric)
                                           : instance_to_json(construction.instance);
  return out;
}

}  // namespace favsched
