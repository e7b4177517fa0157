#include "favsched/harness.hpp"

#include "favsched/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace favsched {
namespace {

std::size_t uniform_index(std::mt19937_64& rng, std::size_t low, std::size_t high) {
  return std::uniform_int_distribution<std::size_t>(low, high)(rng);
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

Rational default_scaling(const std::string& id, std::size_t f) {
  if (id == "gf-tight" || id == "two-machine") return 2;
  if (id == "small-jobs") return Rational(3, 2);
  if (id == "sym-tight:1") return 2;
  if (id == "sym-tight:2") return Rational(3, 2);
  if (id == "sym-tight:3") return Rational(6, 5);
  if (id == "sym-tight:4") return Rational(13, 10);
  if (id == "sym-tight:5") return Rational(static_cast<long>(f + 1));
  return 1;
}

int tight_case(const std::string& id) {
  if (id.size() != 11 || id.rfind("sym-tight:", 0) != 0 || id[10] < '1' || id[10] > '5')
    throw ParameterError("unknown generator '" + id + "'");
  return id[10] - '0';
}

// Oblivious constructions; the optimum is known before any algorithm runs.
Construction build_construction(const GeneratorSpec& spec) {
  const std::string& id = spec.id;
  if (id == "greedy-lb") return greedy_lb_sequence(spec.m, spec.f, spec.s);
  const Rational s = spec.s.value_or(default_scaling(id, spec.f));
  if (id == "gf-tight") return greedyfavorite_tight(spec.f, s);
  if (id == "small-jobs") {
    SymmetricInstance sym(spec.f, s, small_jobs_prefix(spec.f, s, spec.height, spec.eps));
    Instance instance = sym.to_instance();
    Construction result{id, instance, sym, Schedule(instance.machines()), 0, std::nullopt, 0.0, {}};
    try {
      OptResult opt = exact_opt(instance);
      result.witness = std::move(opt.witness);
      result.notes.emplace_back("witness", "exact optimum");
    } catch (const OracleInexact&) {
      GreedyFavorite fallback;
      result.witness = run(fallback, sym).schedule;
      result.notes.emplace_back("witness", "greedy-favorite schedule, not certified optimal");
    }
    result.claimed_opt = result.witness.makespan();
    return result;
  }
  return tight_symmetric(tight_case(id), spec.f, s, spec.u.value_or(8), spec.eps);
}

std::unique_ptr<OnlineAlgorithm> build_algorithm(const std::string& id, AlgorithmOptions options,
                                                 const std::optional<Rational>& opt) {
  if (!options.opt_estimate && opt && id.find("assign-u") != std::string::npos &&
      id.find("assign-u-doubling") == std::string::npos)
    options.opt_estimate = opt;
  return make_algorithm(id, options);
}

void finish_row(ReportRow& row, const std::string& algorithm_id, const Instance& instance, const Shape& shape,
                const AlgorithmOptions& options) {
  if (row.opt && *row.opt > 0) row.ratio = row.online / *row.opt;
  if (instance.empty()) row.ratio = Rational(1);
  try {
    row.bound = proven_bound(algorithm_id, instance, shape, options);
  } catch (const std::exception&) {
    row.bound.reset();
  }
  if (row.ratio && row.bound) {
    const bool within = to_double(*row.ratio) <= *row.bound + 1e-9;
    // An lb-only ratio overestimates the true one, so only "within" is conclusive.
    if (within || row.status != "lb-only") row.satisfied = within;
  }
}

ReportRow base_row(const std::string& source, std::size_t rep, const Instance& instance,
                   const std::optional<SymmetricInstance>& symmetric) {
  ReportRow row;
  row.source = source;
  row.repetition = rep;
  row.m = instance.machines();
  row.f = symmetric ? symmetric->group_size() : instance.min_favorites();
  if (symmetric) row.s = symmetric->scaling();
  row.n = instance.size();
  return row;
}

void run_oblivious(const ExperimentSpec& spec, const std::string& source, std::size_t rep, const Instance& instance,
                   const std::optional<SymmetricInstance>& symmetric, std::vector<ReportRow>& rows) {
  std::optional<Rational> opt;
  std::string status;
  std::vector<MachineId> witness;
  if (spec.oracle == OracleMode::LbOnly) {
    Rational bound = lb_general(instance);
    if (symmetric) bound = std::max(bound, lb_balance(*symmetric));
    opt = bound;
    status = "lb-only";
  } else {
    try {
      OptResult result = exact_opt(instance, spec.node_budget);
      opt = result.opt_makespan;
      witness = result.witness.assignment();
      status = "exact";
    } catch (const OracleInexact&) {
      status = "oracle-inexact";
    }
  }
  const Shape shape = symmetric ? symmetric->shape() : instance.shape();
  for (const std::string& id : spec.algorithms) {
    ReportRow row = base_row(source, rep, instance, symmetric);
    row.algorithm = id;
    row.opt = opt;
    row.status = status;
    row.witness = witness;
    try {
      auto algorithm = build_algorithm(id, spec.options, opt);
      row.algorithm = algorithm->id();
      RunResult result = run(*algorithm, instance, shape);
      row.online = result.schedule.makespan();
      row.assignment = result.schedule.assignment();
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
      row.opt.reset();
      rows.push_back(std::move(row));
      continue;
    }
    finish_row(row, id, instance, shape, spec.options);
    rows.push_back(std::move(row));
  }
}

void run_generator(const ExperimentSpec& spec, std::vector<ReportRow>& rows) {
  const GeneratorSpec& gen = *spec.generator;
  std::optional<Construction> construction;
  if (!is_adaptive(gen.id)) construction = build_construction(gen);
  for (const std::string& id : spec.algorithms) {
    ReportRow row;
    row.source = gen.id;
    row.algorithm = id;
    try {
      auto algorithm =
          build_algorithm(id, spec.options, construction ? std::optional(construction->claimed_opt) : std::nullopt);
      AdversaryReport report = construction ? play(*construction, *algorithm) : generate(gen, *algorithm);
      row = base_row(gen.id, 0, report.instance, report.symmetric);
      row.algorithm = report.algorithm;
      row.online = report.online_cost;
      row.assignment = report.online.assignment();
      row.opt = report.opt;
      row.witness = report.witness.assignment();
      row.status = "witness";
      if (spec.oracle.value_or(OracleMode::Witness) == OracleMode::Exact) {
        try {
          OptResult exact = exact_opt(report.instance, spec.node_budget);
          row.opt = exact.opt_makespan;
          row.witness = exact.witness.assignment();
          row.status = "exact";
        } catch (const OracleInexact&) {
          row.status = "witness";  // the construction's own witness still certifies the optimum
        }
      } else if (spec.oracle == OracleMode::LbOnly) {
        Rational bound = lb_general(report.instance);
        if (report.symmetric) bound = std::max(bound, lb_balance(*report.symmetric));
        row.opt = bound;
        row.witness.clear();
        row.status = "lb-only";
      }
      const Shape shape = report.symmetric ? report.symmetric->shape() : report.instance.shape();
      finish_row(row, id, report.instance, shape, spec.options);
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
}

}  // namespace

Rational symmetric_greedy_bound(std::size_t f, const Rational& s) {
  const Rational spread = 2 - Rational(1, static_cast<long>(f));
  const Rational first = 1 + spread * s * s / (s + 1);
  const Rational second = s + spread * s / (s + 1);
  const Rational third = 1 + spread;
  return std::min(first, std::min(second, third));
}

Rational general_greedy_bound(std::size_t m, std::size_t f) {
  return Rational(static_cast<long>(m + f - 1), static_cast<long>(f));
}

GeneratedInstance random_instance(const RandomSpec& spec, std::mt19937_64& rng) {
  if (spec.pmin_grid == 0 || spec.pmin_low < 1 || spec.pmin_low > spec.pmin_high)
    throw ParameterError("bad pmin range");
  if (spec.max_inflation < 1) throw ParameterError("max_inflation must be at least 1");
  auto draw_pmin = [&] {
    return Rational(static_cast<long>(uniform_index(rng, spec.pmin_low, spec.pmin_high)),
                    static_cast<long>(spec.pmin_grid));
  };
  if (spec.symmetric) {
    if (spec.f < 1) throw ParameterError("f must be at least 1");
    const Rational s = spec.s ? *spec.s : Rational(static_cast<long>(100 + uniform_index(rng, 0, 300)), 100);
    std::vector<SymmetricJob> jobs;
    for (std::size_t j = 0; j < spec.n; ++j) {
      Rational pmin = draw_pmin();
      jobs.push_back(SymmetricJob{std::move(pmin), static_cast<int>(uniform_index(rng, 1, 2))});
    }
    SymmetricInstance sym(spec.f, s, std::move(jobs));
    Instance instance = sym.to_instance();
    return GeneratedInstance{std::move(instance), std::move(sym)};
  }
  if (spec.m < 1 || spec.f < 1 || spec.f > spec.m) throw ParameterError("need 1 <= f <= m");
  std::vector<Job> jobs;
  std::vector<MachineId> machines(spec.m);
  std::iota(machines.begin(), machines.end(), MachineId{1});
  for (std::size_t j = 0; j < spec.n; ++j) {
    Rational pmin = draw_pmin();
    const std::size_t count = uniform_index(rng, spec.f, spec.m);
    std::shuffle(machines.begin(), machines.end(), rng);
    std::vector<MachineId> favorites(machines.begin(), machines.begin() + static_cast<std::ptrdiff_t>(count));
    std::sort(favorites.begin(), favorites.end());
    std::map<MachineId, Rational> others;
    for (auto it = machines.begin() + static_cast<std::ptrdiff_t>(count); it != machines.end(); ++it) {
      const Rational inflation(static_cast<long>(100 + uniform_index(rng, 1, spec.max_inflation)), 100);
      others.emplace(*it, pmin * inflation);
    }
    jobs.emplace_back(pmin, std::move(favorites), others, spec.m);
  }
  return GeneratedInstance{Instance(spec.m, std::move(jobs)), std::nullopt};
}

std::mt19937_64 repetition_rng(std::uint64_t seed, std::size_t rep) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(rep >> 32)};
  return std::mt19937_64(seq);
}

bool is_adaptive(const std::string& generator_id) {
  return generator_id == "halving" || generator_id == "two-machine";
}

AdversaryReport generate(const GeneratorSpec& spec, const OnlineAlgorithm& algorithm) {
  if (spec.id == "halving") {
    auto fresh = algorithm.clone();
    return halving_adversary(spec.m, spec.f, *fresh);
  }
  if (spec.id == "two-machine") {
    auto fresh = algorithm.clone();
    return two_machine_adversary(spec.s.value_or(default_scaling(spec.id, 1)), *fresh);
  }
  return play(build_construction(spec), algorithm);
}

std::optional<double> proven_bound(std::string_view algorithm_id, const Instance& instance, const Shape& shape,
                                  const AlgorithmOptions& options) {
  const std::size_t m = shape.machines;
  const std::size_t f = shape.min_favorites;
  if (algorithm_id.starts_with("rescale:")) {
    const std::string_view rest = algorithm_id.substr(8);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    const Rational c = parse_rational(rest.substr(0, colon));
    const Instance rescaled = rescale_instance(instance, c);
    const Shape inner_shape{m, rescaled.min_favorites(), std::nullopt};
    const auto inner = proven_bound(rest.substr(colon + 1), rescaled, inner_shape, options);
    if (!inner) return std::nullopt;
    return to_double(c) * *inner;
  }
  if (algorithm_id == "greedy") {
    Rational bound = general_greedy_bound(m, f);
    if (shape.scaling) bound = std::min(bound, symmetric_greedy_bound(m / 2, *shape.scaling));
    return to_double(bound);
  }
  if (algorithm_id == "greedy-favorite" || algorithm_id == "ggf") {
    if (!shape.scaling) return std::nullopt;
    const std::size_t group = m / 2;
    const Rational& s = *shape.scaling;
    if (algorithm_id == "ggf" && ggf_uses_greedy(s, options.s_star)) return to_double(symmetric_greedy_bound(group, s));
    return to_double(2 - Rational(1, static_cast<long>(group)) + 1 / s);
  }
  if (algorithm_id == "assign-u") return assign_u_guarantee(options.gamma, m, f);
  if (algorithm_id == "assign-u-doubling") return 4.0 * assign_u_guarantee(options.gamma, m, f);
  return std::nullopt;
}

OracleMode parse_oracle_mode(std::string_view id) {
  if (id == "exact") return OracleMode::Exact;
  if (id == "witness") return OracleMode::Witness;
  if (id == "lb-only") return OracleMode::LbOnly;
  throw ConfigError("unknown oracle mode '" + std::string(id) + "' (expected exact|witness|lb-only)");
}

std::string_view to_string(OracleMode mode) {
  switch (mode) {
    case OracleMode::Exact:
      return "exact";
    case OracleMode::Witness:
      return "witness";
    case OracleMode::LbOnly:
      return "lb-only";
  }
  return "exact";
}

std::vector<ReportRow> cli_run(const ExperimentSpec& spec) {
  const int sources = int(spec.instance_file.has_value()) + int(spec.generator.has_value()) + int(spec.random.has_value());
  if (sources > 1) throw ConfigError("give at most one instance source");
  if (spec.algorithms.empty()) throw ConfigError("no algorithms given");
  AssignUConfig check(spec.options.gamma);
  std::vector<ReportRow> rows;
  if (spec.instance_file) {
    LoadedInstance loaded = load_instance_file(*spec.instance_file);
    run_oblivious(spec, spec.instance_file->filename().string(), 0, loaded.instance, loaded.symmetric, rows);
  } else if (spec.generator) {
    run_generator(spec, rows);
  } else {
    const RandomSpec random = spec.random.value_or(RandomSpec{});
    for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
      auto rng = repetition_rng(spec.seed, rep);
      GeneratedInstance generated = random_instance(random, rng);
      run_oblivious(spec, "random", rep, generated.instance, generated.symmetric, rows);
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<ReportRow> sweep(std::string_view param, const std::vector<Rational>& values, const ExperimentSpec& spec) {
  if (values.empty()) throw ParameterError("empty sweep grid");
  if (param != "s" && param != "m" && param != "f" && param != "c" && param != "gamma")
    throw ParameterError("sweep parameter must be one of s, m, f, c, gamma");
  std::vector<ReportRow> rows;
  for (const Rational& value : values) {
    ExperimentSpec point = spec;
    const bool integral = denominator(value) == 1 && value >= 1;
    if ((param == "m" || param == "f") && !integral)
      throw ParameterError(std::string(param) + " must be a positive integer, got " + to_string(value));
    if (param == "s") {
      if (value < 1) throw ParameterError("s must be at least 1");
      if (point.generator) {
        point.generator->s = value;
      } else if (!point.instance_file) {
        RandomSpec random = point.random.value_or(RandomSpec{});
        random.symmetric = true;
        random.s = value;
        point.random = random;
      } else {
        throw ParameterError("cannot sweep s over a fixed instance file");
      }
    } else if (param == "m" || param == "f") {
      const auto count = numerator(value).convert_to<std::size_t>();
      if (point.instance_file) throw ParameterError("cannot sweep machine counts over a fixed instance file");
      if (point.generator) {
        (param == "m" ? point.generator->m : point.generator->f) = count;
      } else {
        RandomSpec random = point.random.value_or(RandomSpec{});
        (param == "m" ? random.m : random.f) = count;
        point.random = random;
      }
    } else if (param == "c") {
      if (value < 1) throw ParameterError("c must be at least 1");
      for (std::string& id : point.algorithms) {
        if (id.starts_with("rescale:")) {
          const auto colon = id.find(':', 8);
          if (colon == std::string::npos) throw ConfigError("expected rescale:<c>:<inner-id>");
          id = "rescale:" + to_string(value) + id.substr(colon);
        } else {
          id = "rescale:" + to_string(value) + ":" + id;
        }
      }
    } else {
      point.options.gamma = value;
    }
    for (ReportRow& row : cli_run(point)) {
      row.param = std::string(param);
      row.value = value;
      rows.push_back(std::move(row));
    }
  }
  sort_rows(rows);
  return rows;
}

void sort_rows(std::vector<ReportRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.param != b.param) return a.param < b.param;
    if (a.value != b.value) return a.value < b.value;
    if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
    if (a.source != b.source) return a.source < b.source;
    return a.repetition < b.repetition;
  });
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  auto optional_number = [](const std::optional<Rational>& value) {
    return value ? format_double(to_double(*value)) : std::string();
  };
  for (const ReportRow& row : rows) {
    out << csv_field(row.param) << ',' << (row.param.empty() ? "" : format_double(to_double(row.value))) << ','
        << csv_field(row.algorithm) << ',' << csv_field(row.source) << ',' << row.repetition << ',' << row.m << ','
        << row.f << ',' << optional_number(row.s) << ',' << row.n << ',' << format_double(to_double(row.online))
        << ',' << optional_number(row.opt) << ',' << optional_number(row.ratio) << ','
        << (row.bound ? format_double(*row.bound) : "") << ','
        << (row.satisfied ? (*row.satisfied ? "true" : "false") : "") << ',' << csv_field(row.status) << '\n';
  }
  return out.str();
}

Json rows_to_json(const std::vector<ReportRow>& rows) {
  Json out = Json::array();
  auto optional_exact = [](const std::optional<Rational>& value) {
    return value ? Json(to_string(*value)) : Json(nullptr);
  };
  auto optional_value = [](const std::optional<Rational>& value) {
    return value ? Json(to_double(*value)) : Json(nullptr);
  };
  for (const ReportRow& row : rows) {
    Json entry = {{"param", row.param},
                  {"value", row.param.empty() ? Json(nullptr) : Json(to_double(row.value))},
                  {"algorithm", row.algorithm},
                  {"source", row.source},
                  {"rep", row.repetition},
                  {"m", row.m},
                  {"f", row.f},
                  {"s", optional_value(row.s)},
                  {"n", row.n},
                  {"online", to_double(row.online)},
                  {"opt", optional_value(row.opt)},
                  {"ratio", optional_value(row.ratio)},
                  {"bound", row.bound ? Json(*row.bound) : Json(nullptr)},
                  {"satisfied", row.satisfied ? Json(*row.satisfied) : Json(nullptr)},
                  {"status", row.status},
                  {"online_exact", to_string(row.online)},
                  {"opt_exact", optional_exact(row.opt)},
                  {"ratio_exact", optional_exact(row.ratio)},
                  {"assignment", row.assignment},
                  {"witness", row.witness}};
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace favsched
