// favsched: run, sweep, adversary, oracle and verify subcommands.
#include "favsched/errors.hpp"
#include "favsched/harness.hpp"
#include "favsched/io.hpp"
#include "favsched/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace favsched;

namespace {

struct CommonFlags {
  std::string algorithms = "greedy";
  std::string instance;
  std::string generator;
  std::size_t m = 4;
  std::size_t f = 0;  // 0: the generator's / random default
  std::string s;
  std::size_t n = 8;
  std::uint64_t seed = 1;
  std::size_t reps = 1;
  std::string gamma = "2";
  std::string c;
  std::string tie = "bad-smallest";
  std::string oracle;
  std::string format = "csv";
  std::string out;
  unsigned u = 0;
  std::string eps;
  std::string s_star;
  std::string opt_estimate;
};

void add_common(CLI::App* app, CommonFlags& flags) {
  app->add_option("--algo", flags.algorithms, "Comma-separated algorithm ids");
  app->add_option("--instance", flags.instance, "Instance JSON file");
  app->add_option("--gen", flags.generator, "Generator id");
  app->add_option("--m", flags.m, "Machines");
  app->add_option("--f", flags.f, "Minimum favorites (random) or group size (symmetric)");
  app->add_option("--s", flags.s, "Scaling factor; makes random instances symmetric");
  app->add_option("--n", flags.n, "Jobs per random instance");
  app->add_option("--seed", flags.seed, "Random seed");
  app->add_option("--reps", flags.reps, "Random instances to draw");
  app->add_option("--gamma", flags.gamma, "Assign-U gamma (> 1)");
  app->add_option("--c", flags.c, "Wrap every algorithm in rescale:<c>");
  app->add_option("--tie-break", flags.tie, "smallest | bad-smallest");
  app->add_option("--oracle", flags.oracle, "exact | witness | lb-only");
  app->add_option("--format", flags.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", flags.out, "Output file (default stdout)");
  app->add_option("--u", flags.u, "Geometric steps for sym-tight cases 2-4");
  app->add_option("--eps", flags.eps, "Small-job size for sym-tight and small-jobs");
  app->add_option("--s-star", flags.s_star, "GGF switch point (default: exact crossover)");
  app->add_option("--opt-estimate", flags.opt_estimate, "Known optimum for assign-u");
}

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, separator)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

Rational number(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw ConfigError(std::string("bad ") + what + " '" + text + "'");
  }
}

ExperimentSpec to_spec(const CommonFlags& flags) {
  ExperimentSpec spec;
  spec.algorithms = split(flags.algorithms, ',');
  spec.options.tie = parse_tie_break(flags.tie);
  spec.options.gamma = number(flags.gamma, "gamma");
  if (!flags.s_star.empty()) spec.options.s_star = number(flags.s_star, "s*");
  if (!flags.opt_estimate.empty()) spec.options.opt_estimate = number(flags.opt_estimate, "optimum estimate");
  if (!flags.c.empty()) {
    for (std::string& id : spec.algorithms) id = "rescale:" + flags.c + ":" + id;
  }
  if (!flags.oracle.empty()) spec.oracle = parse_oracle_mode(flags.oracle);
  spec.seed = flags.seed;
  spec.repetitions = flags.reps;
  if (!flags.instance.empty()) {
    spec.instance_file = flags.instance;
  } else if (!flags.generator.empty()) {
    GeneratorSpec gen;
    gen.id = flags.generator;
    gen.m = flags.m;
    if (flags.f != 0) gen.f = flags.f;
    if (!flags.s.empty()) gen.s = number(flags.s, "s");
    if (flags.u != 0) gen.u = flags.u;
    if (!flags.eps.empty()) gen.eps = number(flags.eps, "eps");
    spec.generator = gen;
  } else {
    RandomSpec random;
    random.m = flags.m;
    random.n = flags.n;
    if (flags.f != 0) random.f = flags.f;
    if (!flags.s.empty()) {
      random.symmetric = true;
      random.s = number(flags.s, "s");
    }
    spec.random = random;
  }
  return spec;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot write " + path);
  file << text;
}

void emit_rows(const std::vector<ReportRow>& rows, const CommonFlags& flags) {
  emit(flags.format == "json" ? rows_to_json(rows).dump(2) + "\n" : rows_to_csv(rows), flags.out);
}

std::vector<Rational> grid(const std::string& values, const std::string& from, const std::string& to,
                           const std::string& step) {
  std::vector<Rational> points;
  if (!values.empty()) {
    for (const std::string& item : split(values, ',')) points.push_back(number(item, "grid value"));
    return points;
  }
  if (from.empty() || to.empty() || step.empty()) throw ConfigError("give --values or --from/--to/--step");
  const Rational start = number(from, "--from");
  const Rational stop = number(to, "--to");
  const Rational delta = number(step, "--step");
  if (delta <= 0) throw ConfigError("--step must be positive");
  for (Rational x = start; x <= stop; x += delta) points.push_back(x);
  return points;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online scheduling with favorite machines: algorithms, adversaries and exact ratios"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "Run algorithms on an instance, generator or random stream");
  add_common(run_cmd, run_flags);

  CommonFlags sweep_flags;
  std::string param;
  std::string values;
  std::string from;
  std::string to;
  std::string step;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Repeat a run over a parameter grid");
  add_common(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--param", param, "s | m | f | c | gamma")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated grid");
  sweep_cmd->add_option("--from", from, "Grid start");
  sweep_cmd->add_option("--to", to, "Grid end (inclusive)");
  sweep_cmd->add_option("--step", step, "Grid step");

  CommonFlags adversary_flags;
  CLI::App* adversary_cmd = app.add_subcommand("adversary", "Play a generator against one algorithm, print the report");
  add_common(adversary_cmd, adversary_flags);

  std::string oracle_instance;
  std::string oracle_out;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Exact optimum of an instance file");
  oracle_cmd->add_option("--instance", oracle_instance, "Instance JSON file")->required();
  oracle_cmd->add_option("--out", oracle_out, "Output file (default stdout)");

  std::string verify_tie = "bad-smallest";
  std::string verify_gamma = "2";
  std::string verify_format = "text";
  std::string verify_out;
  std::vector<int> only;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the acceptance criteria");
  verify_cmd->add_option("--tie-break", verify_tie, "Greedy tie-break under test");
  verify_cmd->add_option("--gamma", verify_gamma, "Assign-U gamma");
  verify_cmd->add_option("--format", verify_format, "text | json")->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--out", verify_out, "JSON summary file");
  verify_cmd->add_option("--only", only, "Criterion ids to run");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      emit_rows(cli_run(to_spec(run_flags)), run_flags);
    } else if (*sweep_cmd) {
      emit_rows(sweep(param, grid(values, from, to, step), to_spec(sweep_flags)), sweep_flags);
    } else if (*adversary_cmd) {
      ExperimentSpec spec = to_spec(adversary_flags);
      if (!spec.generator) throw ConfigError("adversary needs --gen");
      if (spec.algorithms.size() != 1) throw ConfigError("adversary takes exactly one --algo");
      auto algorithm = make_algorithm(spec.algorithms.front(), spec.options);
      const AdversaryReport report = generate(*spec.generator, *algorithm);
      if (adversary_flags.format == "json") {
        emit(report_to_json(report).dump(2) + "\n", adversary_flags.out);
      } else {
        std::ostringstream line;
        line << "generator,algorithm,n,online,opt,ratio\n"
             << report.generator << ',' << report.algorithm << ',' << report.instance.size() << ','
             << to_string(report.online_cost) << ',' << to_string(report.opt) << ','
             << to_string(report.forced_ratio) << '\n';
        emit(line.str(), adversary_flags.out);
      }
    } else if (*oracle_cmd) {
      const LoadedInstance loaded = load_instance_file(oracle_instance);
      emit(opt_to_json(exact_opt(loaded.instance)).dump(2) + "\n", oracle_out);
    } else if (*verify_cmd) {
      VerifyOptions options;
      options.greedy_tie = parse_tie_break(verify_tie);
      options.gamma = number(verify_gamma, "gamma");
      std::vector<CriterionResult> results;
      if (only.empty()) {
        results = verify_all(options);
      } else {
        AssignUConfig check(options.gamma);
        for (int id : only) results.push_back(run_criterion(id, options));
      }
      const Json summary = verify_summary(results);
      if (verify_format == "json") {
        emit(summary.dump(2) + "\n", verify_out);
      } else {
        for (const CriterionResult& result : results) std::cout << format_result(result) << '\n';
        if (!verify_out.empty()) emit(summary.dump(2) + "\n", verify_out);
      }
      return summary.at("passed").get<bool>() ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const OracleInexact& e) {
    std::cerr << "oracle: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
