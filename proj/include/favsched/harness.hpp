#pragma once

#include "favsched/adversaries.hpp"
#include "favsched/algorithms.hpp"
#include "favsched/io.hpp"
#include "favsched/oracle.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace favsched {

// Random instances live on a rational grid so every run stays exact:
// pmin = k / pmin_grid with k uniform in [pmin_low, pmin_high], non-favorite
// time = pmin * (1 + k / 100) with k uniform in [1, max_inflation].
struct RandomSpec {
  std::size_t m = 4;
  std::size_t f = 1;  // general: lower bound on |F_j|; symmetric: group size (m = 2f)
  std::size_t n = 8;
  unsigned pmin_grid = 1000;
  unsigned pmin_low = 1;
  unsigned pmin_high = 1000;
  unsigned max_inflation = 300;
  bool symmetric = false;
  std::optional<Rational> s;  // symmetric only; drawn from {1, 1.01, ..., 4} when absent
};

struct GeneratedInstance {
  Instance instance;
  std::optional<SymmetricInstance> symmetric;
};

// Favorite sets have a uniform size in [f, m] and uniform members.
GeneratedInstance random_instance(const RandomSpec& spec, std::mt19937_64& rng);

// Stream for repetition `rep` of an experiment seeded with `seed`.
std::mt19937_64 repetition_rng(std::uint64_t seed, std::size_t rep);

// Generator ids: greedy-lb, halving, gf-tight, two-machine, sym-tight:<case>, small-jobs.
struct GeneratorSpec {
  std::string id = "greedy-lb";
  std::size_t m = 4;
  std::size_t f = 2;
  std::optional<Rational> s;
  std::optional<unsigned> u;
  Rational eps = Rational(1, 10000);
  Rational height = Rational(1, 100);  // small-jobs only
};

bool is_adaptive(const std::string& generator_id);

// Oblivious generators are replayed on a clone of `algorithm`; adaptive ones
// interact with a clone.
AdversaryReport generate(const GeneratorSpec& spec, const OnlineAlgorithm& algorithm);

// min{1 + (2 - 1/f) s^2/(s+1), s + (2 - 1/f) s/(s+1), 3 - 1/f} for groups of size f.
Rational symmetric_greedy_bound(std::size_t f, const Rational& s);
// (m + f - 1) / f.
Rational general_greedy_bound(std::size_t m, std::size_t f);

// Worst-case ratio proven for `algorithm_id` on `instance` (nullopt when no
// bound applies, e.g. greedy-favorite on a general instance). Rescaled
// algorithms use the instance's rescaled favorite count.
std::optional<double> proven_bound(std::string_view algorithm_id, const Instance& instance, const Shape& shape,
                                  const AlgorithmOptions& options);

enum class OracleMode { Exact, Witness, LbOnly };
OracleMode parse_oracle_mode(std::string_view id);
std::string_view to_string(OracleMode mode);

struct ExperimentSpec {
  std::vector<std::string> algorithms{"greedy"};
  AlgorithmOptions options;
  // Exactly one source; random when none is set.
  std::optional<std::filesystem::path> instance_file;
  std::optional<GeneratorSpec> generator;
  std::optional<RandomSpec> random;
  // Unset: the construction's witness for generators, exact_opt otherwise.
  std::optional<OracleMode> oracle;
  std::size_t repetitions = 1;
  std::uint64_t seed = 1;
  long long node_budget = default_node_budget();
};

struct ReportRow {
  std::string param;  // sweep coordinate; empty outside sweeps
  Rational value = 0;
  std::string algorithm;
  std::string source;
  std::size_t repetition = 0;
  std::size_t m = 0;
  std::size_t f = 0;
  std::optional<Rational> s;
  std::size_t n = 0;
  Rational online = 0;
  std::optional<Rational> opt;
  std::optional<Rational> ratio;
  std::optional<double> bound;
  std::optional<bool> satisfied;
  // exact | witness | lb-only | oracle-inexact | error: <message>
  std::string status;
  std::vector<MachineId> assignment;
  std::vector<MachineId> witness;
};

// One row per (algorithm, instance). Oracle failures and algorithm errors
// are recorded in the row instead of aborting the run.
std::vector<ReportRow> cli_run(const ExperimentSpec& spec);

// param is one of s, m, f, c, gamma; one cli_run per grid value.
std::vector<ReportRow> sweep(std::string_view param, const std::vector<Rational>& values, const ExperimentSpec& spec);

// Rows in canonical order: (param, value, algorithm, source, repetition).
void sort_rows(std::vector<ReportRow>& rows);

inline constexpr const char* kCsvHeader = "param,value,algorithm,source,rep,m,f,s,n,online,opt,ratio,bound,satisfied,status";
std::string rows_to_csv(const std::vector<ReportRow>& rows);
Json rows_to_json(const std::vector<ReportRow>& rows);

}  // namespace favsched
