#include "sgdrates/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sgdrates/config.hpp"
#include "sgdrates/csvio.hpp"
#include "sgdrates/parallel.hpp"

namespace sgdrates {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCheckFailed = 3;

void ensure_parent_dir(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path());
  }
}

std::ofstream open_output(const std::string& path) {
  ensure_parent_dir(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  return out;
}

void write_summary(const std::string& path, const nlohmann::json& summary) {
  std::ofstream out = open_output(path);
  out << summary.dump(2) << '\n';
}

struct CommonArgs {
  std::string out_path;
  int jobs = 0;
  std::optional<std::int64_t> seed;
  std::vector<std::string> overrides;
};

int cmd_run(const std::string& config_path, const CommonArgs& args) {
  nlohmann::json doc = load_json_file(config_path);
  for (const std::string& kv : args.overrides) apply_override(doc, kv);
  if (args.seed) doc["base_seed"] = *args.seed;
  const ExperimentConfig cfg = parse_experiment_config(doc);
  const std::string base = args.out_path.empty() ? cfg.output_path : args.out_path;

  const SweepResult result = run_sweep(cfg, args.jobs);
  const auto source = bound_source_for(cfg.schedule_kind);

  const std::string csv_path = base + ".csv";
  {
    std::ofstream out = open_output(csv_path);
    CsvWriter csv(out);
    csv.field("T").field("theta").field("empirical_quantile").field("bound_quantile")
        .field("exceedance_frac").field("exp_neg_theta");
    csv.end_row();
    if (source) {
      for (const CompareRow& row : compare_to_bound(result, cfg, *source)) {
        csv.field(row.T).field(row.theta).field(row.empirical_quantile)
            .field(row.bound_quantile).field(row.exceedance_frac).field(row.exp_neg_theta);
        csv.end_row();
      }
    } else {
      for (const SweepRow& row : result.rows) {
        for (std::size_t k = 0; k < cfg.theta_grid.size(); ++k) {
          csv.field(row.T).field(cfg.theta_grid[k]).field(row.empirical_quantiles[k])
              .field("").field("").field(format_double(std::exp(-cfg.theta_grid[k])));
          csv.end_row();
        }
      }
    }
  }

  nlohmann::json summary;
  summary["command"] = "run";
  summary["config"] = to_json(cfg);
  summary["fitted_slope"] = result.fitted_slope;
  summary["slope_std_error"] = result.slope_std_error;
  summary["seed_derivation"] = "trial j at T_grid index i uses base_seed + i*1000000 + j";
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : result.rows) {
    nlohmann::json r;
    r["T"] = row.T;
    r["mean_gap"] = row.mean_gap;
    r["median_gap"] = row.median_gap;
    r["in_regime"] = row.in_regime;
    rows.push_back(r);
  }
  summary["rows"] = rows;
  summary["outputs"] = {{"csv", csv_path}};
  write_summary(base + ".summary.json", summary);

  std::cout << "wrote " << csv_path << "\n";
  std::cout << "fitted log-log slope of median gap: " << format_double(result.fitted_slope)
            << " (std error " << format_double(result.slope_std_error) << ")\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string source;
  std::int64_t T = 0;
  double kappa = 1.0;
  double mu = 1.0;
  std::optional<double> lips;
  double noise = 1.0;
  double diam = 1.0;
  std::string corrupt;
};

int cmd_verify(const VerifyArgs& v, const CommonArgs& args) {
  if (v.T < 2) throw ConfigError("--T must be >= 2");
  if (!(v.kappa >= 1.0)) throw ConfigError("--kappa must be >= 1");
  const BoundSource source = bound_source_from_string(v.source);
  const double lips = v.lips.value_or(v.kappa * v.mu);
  if (std::abs(lips - v.kappa * v.mu) > 1e-12 * std::max(1.0, lips)) {
    throw ConfigError("--L must equal kappa * mu");
  }

  RecursionState state = build_sequences(source, v.T, v.mu, lips, v.noise, v.diam);
  if (!v.corrupt.empty()) {
    const auto eq = v.corrupt.find('=');
    if (eq == std::string::npos) throw ConfigError("--corrupt expects name=factor");
    const std::string name = v.corrupt.substr(0, eq);
    const double factor = std::stod(v.corrupt.substr(eq + 1));
    scale_sequence(state, name, factor);
  }

  const std::vector<Verdict> verdicts = check_conditions(state);
  const std::vector<ConditionSummary> sums = summarize(verdicts);
  const bool terminal_ok = terminal_condition_holds(state);
  bool all_pass = terminal_ok;
  for (const ConditionSummary& s : sums) all_pass = all_pass && s.all_pass;

  const std::string base = args.out_path.empty() ? std::string("results/verify_") + v.source : args.out_path;
  const std::string csv_path = base + ".csv";
  {
    std::ofstream out = open_output(csv_path);
    CsvWriter csv(out);
    csv.field("source").field("T").field("kappa").field("condition").field("t")
        .field("lhs").field("rhs").field("slack").field("pass");
    csv.end_row();
    for (const Verdict& vd : verdicts) {
      csv.field(to_string(source)).field(v.T).field(v.kappa)
          .field(static_cast<std::int64_t>(vd.condition_id)).field(vd.t)
          .field(vd.lhs).field(vd.rhs).field(vd.slack).field(vd.pass);
      csv.end_row();
    }
  }

  std::cout << "conditions for " << v.source << " (T=" << v.T << ", kappa=" << format_double(v.kappa)
            << "):\n";
  for (const ConditionSummary& s : sums) {
    std::cout << "  condition " << s.condition_id << ": " << (s.all_pass ? "pass" : "FAIL")
              << "  min slack " << format_double(s.min_slack) << " at t=" << s.argmin_t << "\n";
  }
  std::cout << "  terminal condition: " << (terminal_ok ? "pass" : "FAIL") << "\n";
  std::cout << (all_pass ? "all conditions hold" : "conditions violated") << "\n";

  nlohmann::json summary;
  summary["command"] = "verify";
  summary["source"] = v.source;
  summary["T"] = v.T;
  summary["kappa"] = v.kappa;
  summary["mu"] = v.mu;
  summary["L"] = lips;
  summary["Q"] = v.noise;
  summary["D"] = v.diam;
  if (!v.corrupt.empty()) summary["corrupt"] = v.corrupt;
  if (args.seed) summary["seed"] = *args.seed;
  nlohmann::json conds = nlohmann::json::array();
  for (const ConditionSummary& s : sums) {
    conds.push_back({{"condition", s.condition_id},
                     {"all_pass", s.all_pass},
                     {"min_slack", s.min_slack},
                     {"argmin_t", s.argmin_t}});
  }
  summary["conditions"] = conds;
  summary["terminal_pass"] = terminal_ok;
  summary["all_pass"] = all_pass;
  summary["outputs"] = {{"csv", csv_path}};
  write_summary(base + ".summary.json", summary);

  return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_tailcheck(const std::string& config_path, const CommonArgs& args) {
  nlohmann::json doc = load_json_file(config_path);
  for (const std::string& kv : args.overrides) apply_override(doc, kv);
  if (args.seed) doc["base_seed"] = *args.seed;
  const TailcheckConfig cfg = parse_tailcheck_config(doc);
  if (cfg.trials < 100) throw ConfigError("tail check needs at least 100 trials/draws");

  TailRunner runner = Lemma0TailSpec{cfg.dist, cfg.sigma, cfg.bias};
  if (!cfg.lemma0_mode) {
    OptimizerTailSpec spec{to_problem(cfg.problem), ScheduleConfig{}, cfg.T, Vector()};
    ExperimentConfig tmp;
    tmp.problem = cfg.problem;
    tmp.schedule_kind = cfg.schedule_kind;
    tmp.schedule_r = cfg.schedule_r;
    tmp.schedule_decay = cfg.schedule_decay;
    spec.schedule = to_schedule(tmp, spec.problem);
    spec.x0 = initial_point(cfg.problem, spec.problem);
    runner = std::move(spec);
  }

  const std::vector<ExceedanceRow> rows =
      mc_tail_check(cfg.trials, cfg.theta_grid, runner, cfg.base_seed, args.jobs);

  const std::string base = args.out_path.empty() ? cfg.output_path : args.out_path;
  const std::string csv_path = base + ".csv";
  {
    std::ofstream out = open_output(csv_path);
    CsvWriter csv(out);
    csv.field("theta").field("threshold").field("count").field("trials").field("fraction")
        .field("bound").field("p_value").field("reject");
    csv.end_row();
    for (const ExceedanceRow& row : rows) {
      csv.field(row.theta).field(row.threshold).field(row.count).field(row.trials)
          .field(row.fraction).field(row.bound).field(row.p_value).field(row.reject);
      csv.end_row();
    }
  }

  bool any_reject = false;
  std::cout << "theta  threshold      fraction   bound      p_value\n";
  for (const ExceedanceRow& row : rows) {
    any_reject = any_reject || row.reject;
    std::cout << format_double(row.theta) << "  " << format_double(row.threshold) << "  "
              << format_double(row.fraction) << "  " << format_double(row.bound) << "  "
              << format_double(row.p_value) << (row.reject ? "  REJECT" : "") << "\n";
  }

  nlohmann::json summary;
  summary["command"] = "tailcheck";
  summary["config"] = to_json(cfg);
  nlohmann::json jrows = nlohmann::json::array();
  for (const ExceedanceRow& row : rows) {
    jrows.push_back({{"theta", row.theta},
                     {"threshold", row.threshold},
                     {"count", row.count},
                     {"trials", row.trials},
                     {"fraction", row.fraction},
                     {"bound", row.bound},
                     {"p_value", row.p_value},
                     {"reject", row.reject}});
  }
  summary["rows"] = jrows;
  summary["any_reject"] = any_reject;
  summary["outputs"] = {{"csv", csv_path}};
  write_summary(base + ".summary.json", summary);

  return any_reject ? kExitCheckFailed : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"weighted-averaging SGD benchmarks, bound evaluation and proof-condition checks"};
  app.require_subcommand(1);

  CommonArgs run_args, verify_args_common, tail_args;
  std::string run_config, tail_config;
  VerifyArgs verify_args;

  CLI::App* run = app.add_subcommand("run", "run a sweep from a config file");
  run->add_option("config", run_config, "JSON config path")->required();
  run->add_option("--override", run_args.overrides, "config override key=value (repeatable)");
  run->add_option("--out", run_args.out_path, "output base path (overrides config output_path)");
  run->add_option("--seed", run_args.seed, "override base_seed");
  run->add_option("--jobs", run_args.jobs, "worker threads (default: SGD_RATES_JOBS or hardware)");

  CLI::App* verify = app.add_subcommand("verify", "check the per-step recursion conditions");
  verify->add_option("source", verify_args.source, "thm1|prop_original|prop_interior|thm2")
      ->required();
  verify->add_option("--T", verify_args.T, "horizon")->required();
  verify->add_option("--kappa", verify_args.kappa, "condition number")->required();
  verify->add_option("--mu", verify_args.mu, "strong convexity constant (default 1)");
  verify->add_option("--L", verify_args.lips, "smoothness constant (must equal kappa*mu)");
  verify->add_option("--Q", verify_args.noise, "noise radius (default 1)");
  verify->add_option("--D", verify_args.diam, "domain diameter (default 1)");
  verify->add_option("--corrupt", verify_args.corrupt,
                     "scale one sequence, e.g. r_hat=0.01 (negative control)");
  verify->add_option("--out", verify_args_common.out_path, "output base path");
  verify->add_option("--seed", verify_args_common.seed, "echoed into the summary");
  verify->add_option("--jobs", verify_args_common.jobs, "worker threads");

  CLI::App* tail = app.add_subcommand("tailcheck", "Monte Carlo exceedance check");
  tail->add_option("config", tail_config, "JSON config path")->required();
  tail->add_option("--override", tail_args.overrides, "config override key=value (repeatable)");
  tail->add_option("--out", tail_args.out_path, "output base path");
  tail->add_option("--seed", tail_args.seed, "override base_seed");
  tail->add_option("--jobs", tail_args.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(run_config, run_args);
    if (verify->parsed()) return cmd_verify(verify_args, verify_args_common);
    return cmd_tailcheck(tail_config, tail_args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace sgdrates
