#pragma once

#include "favsched/adversaries.hpp"
#include "favsched/model.hpp"
#include "favsched/oracle.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>

namespace favsched {

using Json = nlohmann::ordered_json;

// A number field: JSON number, integer, or a string parse_rational accepts.
Rational rational_from_json(const Json& value);

// Integers stay JSON integers; anything else becomes an exact "p/q" string.
Json rational_to_json(const Rational& value);

// { "m": int, "jobs": [ { "p": x, "favorites": [...], "others": { "<machine>": x } } ] }
Instance instance_from_json(const Json& doc);
Json instance_to_json(const Instance& instance);

// { "f": int, "s": x, "jobs": [ { "p": x, "group": 1|2 } ] }
SymmetricInstance symmetric_from_json(const Json& doc);
Json symmetric_to_json(const SymmetricInstance& instance);

struct LoadedInstance {
  Instance instance;
  std::optional<SymmetricInstance> symmetric;
};

// Dispatches on the presence of "f" (symmetric) or "m" (general).
LoadedInstance load_instance(const Json& doc);
LoadedInstance load_instance_file(const std::filesystem::path& path);

// { "opt": number, "witness": [machine per job], "nodes": int }, plus the exact optimum.
Json opt_to_json(const OptResult& result);

// Assignment, loads and makespan.
Json schedule_to_json(const Schedule& schedule);

Json report_to_json(const AdversaryReport& report);
Json construction_to_json(const Construction& construction);

}  // namespace favsched
