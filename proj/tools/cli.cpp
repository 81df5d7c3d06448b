#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "edubandit/report.hpp"
#include "edubandit/simulate.hpp"
#include "json.hpp"

namespace edubandit::cli {

namespace {

constexpr const char* kEnvNames[] = {"cat1", "cat2", "cat3", "cat4"};

template <class T>
std::optional<T> pick(const std::optional<T>& flag, const std::optional<T>& config) {
  return flag ? flag : config;
}

EnvironmentChoice parse_environment(const std::string& name,
                                    const std::optional<std::vector<double>>& weights) {
  if (name == "cohort") {
    if (!weights) return default_cohort();
    if (weights->size() != static_cast<std::size_t>(kCategoryCount)) {
      throw UsageError("--weights needs exactly 4 comma-separated values");
    }
    try {
      return CohortSpec::from_unnormalized(*weights);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--weights: ") + e.what());
    }
  }
  if (weights) throw UsageError("--weights is only valid with --env cohort");
  for (int k = 1; k <= kCategoryCount; ++k) {
    if (name == kEnvNames[k - 1]) return make_category_env(k);
  }
  throw UsageError("unknown environment '" + name + "' (expected cat1|cat2|cat3|cat4|cohort)");
}

std::string file_stem(AgentKind agent, const std::string& env) {
  return std::string(to_string(agent)) + "_" + env;
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory " + dir.string() + ": " + ec.message());
}

}  // namespace

RawOptions load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  RawOptions o;
  try {
    const auto j = nlohmann::json::parse(in);
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "agent") o.agent = value.get<std::string>();
      else if (key == "epsilon") o.epsilon = value.get<double>();
      else if (key == "ucb_c") o.ucb_c = value.get<double>();
      else if (key == "env") o.env = value.get<std::string>();
      else if (key == "weights") o.weights = value.get<std::vector<double>>();
      else if (key == "horizon") o.horizon = value.get<long long>();
      else if (key == "runs") o.runs = value.get<long long>();
      else if (key == "seed") o.seed = value.get<unsigned long long>();
      else if (key == "ci_level") o.ci_level = value.get<double>();
      else if (key == "gamma") o.gamma = value.get<double>();
      else if (key == "out") o.out = value.get<std::string>();
      else if (key == "emit_raw") o.emit_raw = value.get<bool>();
      else if (key == "workers") o.workers = value.get<int>();
      else throw UsageError("unknown config key '" + key + "' in " + path.string());
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("invalid config file " + path.string() + ": " + e.what());
  }
  return o;
}

CliConfig resolve(Subcommand subcommand, const RawOptions& flags, const RawOptions& config) {
  CliConfig cfg;
  cfg.subcommand = subcommand;
  ExperimentSpec& spec = cfg.spec;

  const auto agent_name = pick(flags.agent, config.agent);
  const auto env_name = pick(flags.env, config.env);
  if (subcommand == Subcommand::sweep && (flags.agent || flags.env)) {
    throw UsageError("sweep runs every agent and environment; drop --agent/--env");
  }

  if (subcommand != Subcommand::sweep) {
    const std::string name = agent_name.value_or("random");
    const auto kind = parse_agent_kind(name);
    if (!kind) throw UsageError("unknown agent '" + name + "' (expected random|epsilon-greedy|ucb)");
    spec.agent = *kind;
    spec.environment = parse_environment(env_name.value_or("cat1"), pick(flags.weights, config.weights));
  } else if (pick(flags.weights, config.weights)) {
    throw UsageError("--weights is only valid with --env cohort");
  }

  if (const auto eps = pick(flags.epsilon, config.epsilon)) {
    if (subcommand != Subcommand::sweep && spec.agent != AgentKind::epsilon_greedy) {
      throw UsageError("--epsilon is not valid for agent " + std::string(to_string(spec.agent)));
    }
    spec.params.epsilon = *eps;
  }
  if (const auto c = pick(flags.ucb_c, config.ucb_c)) {
    if (subcommand != Subcommand::sweep && spec.agent != AgentKind::ucb) {
      throw UsageError("--ucb-c is not valid for agent " + std::string(to_string(spec.agent)));
    }
    spec.params.ucb_c = *c;
  }

  if (const auto h = pick(flags.horizon, config.horizon)) {
    if (*h < 1) throw UsageError("--horizon must be >= 1");
    spec.horizon = static_cast<std::size_t>(*h);
  }
  if (const auto n = pick(flags.runs, config.runs)) {
    if (*n < 1) throw UsageError("--runs must be >= 1");
    spec.n_runs = static_cast<std::size_t>(*n);
  }
  spec.base_seed = pick(flags.seed, config.seed).value_or(0);
  spec.ci_level = pick(flags.ci_level, config.ci_level).value_or(0.95);
  spec.gamma = pick(flags.gamma, config.gamma).value_or(1.0);

  cfg.emit_raw = pick(flags.emit_raw, config.emit_raw).value_or(false);
  cfg.workers = pick(flags.workers, config.workers).value_or(0);
  if (cfg.workers < 0) throw UsageError("--workers must be >= 0");

  if (const auto o = pick(flags.out, config.out)) {
    cfg.out_dir = *o;
  } else if (const char* env_dir = std::getenv(kOutDirEnv); env_dir && *env_dir) {
    cfg.out_dir = env_dir;
  }

  try {
    if (subcommand == Subcommand::sweep) {
      for (AgentKind kind : {AgentKind::random, AgentKind::epsilon_greedy, AgentKind::ucb}) {
        ExperimentSpec s = spec;
        s.agent = kind;
        s.validate();
      }
    } else {
      spec.validate();
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

int cmd_run(const CliConfig& config, std::ostream& out) {
  const ExperimentSpec& spec = config.spec;
  prepare_dir(config.out_dir);
  AggregateResult result;
  if (config.emit_raw) {
    const auto trajectories = run_experiment(spec, config.workers);
    result = aggregate(trajectories, spec);
    write_raw_csv(trajectories, config.out_dir / "raw.csv");
  } else {
    result = run_and_aggregate(spec, config.workers);
  }
  write_curves_csv(result, config.out_dir / "curves.csv");
  write_summary_json(result, spec, config.out_dir / "summary.json");
  write_action_counts_csv(result, config.out_dir / "action_counts.csv");
  out << to_string(spec.agent) << " on " << spec.environment_label()
      << ": mean_reward_rate=" << result.mean_reward_rate << " ci=[" << result.rate_ci_lower << ", "
      << result.rate_ci_upper << "] -> " << config.out_dir.string() << "\n";
  return kExitOk;
}

int cmd_sweep(const CliConfig& config, std::ostream& out) {
  prepare_dir(config.out_dir);
  std::string table = "agent,environment,mean_reward_rate,rate_ci_lower,rate_ci_upper\n";
  char buf[128];
  for (AgentKind kind : {AgentKind::random, AgentKind::epsilon_greedy, AgentKind::ucb}) {
    for (int k = 1; k <= kCategoryCount; ++k) {
      ExperimentSpec spec = config.spec;
      spec.agent = kind;
      spec.environment = make_category_env(k);
      const std::string stem = file_stem(kind, kEnvNames[k - 1]);
      AggregateResult result;
      if (config.emit_raw) {
        const auto trajectories = run_experiment(spec, config.workers);
        result = aggregate(trajectories, spec);
        write_raw_csv(trajectories, config.out_dir / (stem + "_raw.csv"));
      } else {
        result = run_and_aggregate(spec, config.workers);
      }
      write_curves_csv(result, config.out_dir / (stem + ".csv"));
      std::snprintf(buf, sizeof buf, "%s,%s,%.6f,%.6f,%.6f\n", std::string(to_string(kind)).c_str(),
                    kEnvNames[k - 1], result.mean_reward_rate, result.rate_ci_lower,
                    result.rate_ci_upper);
      table += buf;
      out << buf;
    }
  }
  std::ofstream summary(config.out_dir / "sweep_summary.csv", std::ios::binary | std::ios::trunc);
  summary << table;
  summary.flush();
  if (!summary) {
    throw OutputError("failed writing " + (config.out_dir / "sweep_summary.csv").string());
  }
  return kExitOk;
}

int cmd_validate(const CliConfig& config, std::ostream& out) {
  out << spec_json(config.spec);
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-armed bandit simulator for student intervention recommendation"};
  app.require_subcommand(1);

  RawOptions flags;
  std::vector<double> weights;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--agent", flags.agent, "random | epsilon-greedy | ucb");
    sub->add_option("--epsilon", flags.epsilon, "exploration rate for epsilon-greedy (default 0.01)");
    sub->add_option("--ucb-c", flags.ucb_c, "UCB1 exploration constant (default sqrt(2))");
    sub->add_option("--env", flags.env, "cat1 | cat2 | cat3 | cat4 | cohort");
    sub->add_option("--weights", weights, "cohort weights, 4 values, normalized")->delimiter(',');
    sub->add_option("--horizon", flags.horizon, "episodes per run (default 500)");
    sub->add_option("--runs", flags.runs, "independent runs (default 10000)");
    sub->add_option("--seed", flags.seed, "base seed (default 0)");
    sub->add_option("--ci-level", flags.ci_level, "band level (default 0.95)");
    sub->add_option("--gamma", flags.gamma, "discount for the discounted return (default 1)");
    sub->add_option("--out", flags.out, std::string("output directory (default $") + kOutDirEnv +
                                            " or ./results)");
    sub->add_flag("--emit-raw", "also write per-run run,episode,action,reward CSV");
    sub->add_option("--workers", flags.workers, "worker threads, 0 = all (default 0)");
    sub->add_option("--config", config_path, "JSON file with defaults; flags override");
  };

  auto* run = app.add_subcommand("run", "run one experiment");
  auto* sweep = app.add_subcommand("sweep", "run all agents on all four category environments");
  auto* validate = app.add_subcommand("validate", "print the resolved experiment without running");
  for (auto* sub : {run, sweep, validate}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Subcommand subcommand = Subcommand::run;
  CLI::App* chosen = run;
  if (sweep->parsed()) {
    subcommand = Subcommand::sweep;
    chosen = sweep;
  } else if (validate->parsed()) {
    subcommand = Subcommand::validate;
    chosen = validate;
  }
  if (chosen->count("--weights") > 0) flags.weights = weights;
  if (chosen->count("--emit-raw") > 0) flags.emit_raw = true;

  CliConfig cfg;
  try {
    const RawOptions file = config_path.empty() ? RawOptions{} : load_config_file(config_path);
    cfg = resolve(subcommand, flags, file);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    switch (subcommand) {
      case Subcommand::run:
        return cmd_run(cfg, out);
      case Subcommand::sweep:
        return cmd_sweep(cfg, out);
      case Subcommand::validate:
        return cmd_validate(cfg, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace edubandit::cli
