// Command-line front door: fit a data column, select, build marginal
// intervals and credible balls, run experiment specs, emit plot-ready
// coverage curves, and benchmark the fit at scale.
//
// Exit codes: 0 success, 2 input parse error, 3 configuration violation,
// 4 internal numeric failure.

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddm/core.hpp"
#include "ddm/credible_ball.hpp"
#include "ddm/inference.hpp"
#include "ddm/io.hpp"
#include "ddm/math.hpp"
#include "ddm/parallel.hpp"
#include "ddm/sim.hpp"

namespace {

using nlohmann::json;

constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumeric = 4;

struct CommonOpts {
  double sigma = 1.0;
  double alpha = 0.49;
  double gamma = 1.0;
  double a = 1.0;
  double T = 0.25;
  double zeta = 0.05;
  double M = 1.0;
  std::uint64_t seed = 0;
  std::size_t mc_samples = 10000;
  double threshold = 0.5;
  std::string format = "json";
  std::string out;
  std::size_t threads = 0;
};

void add_common_flags(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--sigma", opts->sigma, "error variance proxy");
  cmd->add_option("--alpha", opts->alpha, "learning-rate fraction");
  cmd->add_option("--gamma", opts->gamma, "prior precision factor");
  cmd->add_option("--a", opts->a, "sparsity exponent in lambda_n = n^-(1+a)");
  cmd->add_option("--T", opts->T, "MGF window endpoint (alpha < 2T)");
  cmd->add_option("--zeta", opts->zeta, "significance level");
  cmd->add_option("--M", opts->M, "ball inflation constant");
  cmd->add_option("--seed", opts->seed, "RNG seed (echoed into output)");
  cmd->add_option("--mc-samples", opts->mc_samples,
                  "Monte Carlo draws for quantile radii");
  cmd->add_option("--threshold", opts->threshold, "selection threshold");
  cmd->add_option("--format", opts->format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opts->out, "output path (default: stdout)");
  cmd->add_option("--threads", opts->threads,
                  "worker cap (0 = hardware; results are thread-count "
                  "independent)");
}

ddm::ModelConfig make_config(const CommonOpts& opts, std::size_t n) {
  ddm::ModelConfig config;
  config.n = n;
  config.sigma = opts.sigma;
  config.alpha = opts.alpha;
  config.gamma = opts.gamma;
  config.a = opts.a;
  config.T = opts.T;
  config.rng_seed = opts.seed;
  config.validate();
  return config;
}

void emit(const CommonOpts& opts, const std::string& content) {
  if (opts.out.empty()) {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << '\n';
  } else {
    std::string body = content;
    if (body.empty() || body.back() != '\n') body.push_back('\n');
    ddm::write_file_atomic(opts.out, body);
  }
}

json meta_json(const CommonOpts& opts, const ddm::ModelConfig& config) {
  json j = ddm::config_to_json(config);
  j["zeta"] = opts.zeta;
  j["M"] = opts.M;
  j["mc_samples"] = opts.mc_samples;
  j["threshold"] = opts.threshold;
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ddm::ParseError("cannot open spec file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ddm::ParseError("spec file '" + path + "': " + e.what());
  }
}

ddm::ExperimentSpec load_spec(const std::string& path) {
  try {
    return ddm::experiment_from_json(load_json_file(path));
  } catch (const json::exception& e) {
    throw ddm::ParseError("spec file '" + path + "': " + e.what());
  }
}

int run_fit(const CommonOpts& opts, const std::string& input) {
  const std::vector<double> y = ddm::read_column_file(input);
  const ddm::ModelConfig config = make_config(opts, y.size());
  const ddm::DDMParams params = ddm::fit(y, config);
  const ddm::SelectionResult sel = ddm::select(params, opts.threshold);

  json out{{"command", "fit"},
           {"config", meta_json(opts, config)},
           {"params", ddm::params_record(params)},
           {"posterior_mean", ddm::posterior_mean(params)},
           {"selected", sel.selected},
           {"expected_dim", sel.expected_dim},
           {"threshold", sel.threshold}};
  emit(opts, out.dump(2));
  return 0;
}

int run_select(const CommonOpts& opts, const std::string& input) {
  const std::vector<double> y = ddm::read_column_file(input);
  const ddm::ModelConfig config = make_config(opts, y.size());
  const ddm::DDMParams params = ddm::fit(y, config);
  const ddm::SelectionResult sel = ddm::select(params, opts.threshold);

  if (opts.format == "csv") {
    std::ostringstream csv;
    csv << "# config: " << meta_json(opts, config).dump() << '\n';
    csv << "index,phi,selected\n";
    for (std::size_t i = 0; i < params.n(); ++i) {
      const bool in_set = params.phi[i] > opts.threshold;
      csv << i << ',' << ddm::format_double(params.phi[i]) << ','
          << (in_set ? 1 : 0) << '\n';
    }
    emit(opts, csv.str());
    return 0;
  }
  json out{{"command", "select"},
           {"config", meta_json(opts, config)},
           {"selected", sel.selected},
           {"phi", sel.phi},
           {"expected_dim", sel.expected_dim},
           {"threshold", sel.threshold}};
  emit(opts, out.dump(2));
  return 0;
}

int run_interval(const CommonOpts& opts, const std::string& input) {
  const std::vector<double> y = ddm::read_column_file(input);
  const ddm::ModelConfig config = make_config(opts, y.size());
  const ddm::DDMParams params = ddm::fit(y, config);

  std::vector<ddm::Interval> intervals(params.n());
  for (std::size_t i = 0; i < params.n(); ++i) {
    intervals[i] = ddm::marginal_interval(params, i, opts.zeta);
  }

  if (opts.format == "csv") {
    std::ostringstream csv;
    csv << "# config: " << meta_json(opts, config).dump() << '\n';
    csv << "index,lower,upper,contains_atom_at_zero\n";
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      csv << i << ',' << ddm::format_double(intervals[i].lower) << ','
          << ddm::format_double(intervals[i].upper) << ','
          << (intervals[i].contains_atom_at_zero ? 1 : 0) << '\n';
    }
    emit(opts, csv.str());
    return 0;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    rows.push_back(json{{"index", i},
                        {"lower", intervals[i].lower},
                        {"upper", intervals[i].upper},
                        {"contains_atom_at_zero",
                         intervals[i].contains_atom_at_zero}});
  }
  json out{{"command", "interval"},
           {"config", meta_json(opts, config)},
           {"zeta", opts.zeta},
           {"intervals", rows}};
  emit(opts, out.dump(2));
  return 0;
}

int run_ball(const CommonOpts& opts, const std::string& input,
             const std::string& method_name) {
  const std::vector<double> y = ddm::read_column_file(input);
  const ddm::ModelConfig config = make_config(opts, y.size());
  const ddm::DDMParams params = ddm::fit(y, config);
  const ddm::BallMethod method = ddm::ball_method_from_name(method_name);
  const ddm::CredibleBall ball = ddm::build_ball(
      params, method, opts.zeta, opts.M, opts.mc_samples, opts.seed);

  json out{{"command", "ball"},
           {"config", meta_json(opts, config)},
           {"ball", ddm::ball_to_json(ball)}};
  emit(opts, out.dump(2));
  return 0;
}

int run_simulate(const CommonOpts& opts, const std::string& spec_path) {
  const ddm::ExperimentSpec spec = load_spec(spec_path);
  const ddm::ExperimentResult result = ddm::run_experiment(spec);

  if (opts.format == "csv") {
    std::ostringstream csv;
    csv << "# spec: " << ddm::experiment_to_json(spec).dump() << '\n';
    csv << ddm::result_csv_header() << '\n'
        << ddm::result_csv_row(result) << '\n';
    emit(opts, csv.str());
    return 0;
  }
  json out{{"command", "simulate"},
           {"spec", ddm::experiment_to_json(spec)},
           {"result", ddm::result_to_json(result)}};
  emit(opts, out.dump(2));
  return 0;
}

int run_curve(const CommonOpts& opts, const std::string& spec_path,
              double grid_min, double grid_max, double grid_step) {
  const ddm::ExperimentSpec spec = load_spec(spec_path);
  if (!(grid_step > 0.0)) {
    throw ddm::ConfigError("curve: --grid-step must be positive");
  }
  std::vector<double> grid;
  for (double v = grid_min; v <= grid_max + 1e-12; v += grid_step) {
    grid.push_back(v);
  }
  const std::vector<ddm::CurveRow> rows = ddm::coverage_curve(spec, grid);

  std::ostringstream csv;
  csv << "# spec: " << ddm::experiment_to_json(spec).dump() << '\n';
  csv << ddm::curve_csv_header() << '\n';
  for (const ddm::CurveRow& row : rows) {
    csv << ddm::curve_csv_row(row) << '\n';
  }
  emit(opts, csv.str());
  return 0;
}

int run_bench(const CommonOpts& opts, std::size_t n) {
  const ddm::ModelConfig config = make_config(opts, n);
  std::vector<double> y(n);
  ddm::Rng rng(opts.seed);
  for (double& v : y) v = rng.normal();

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const ddm::DDMParams params = ddm::fit(y, config);
  const auto t1 = clock::now();
  const std::vector<double> mean = ddm::posterior_mean(params);
  const auto t2 = clock::now();
  const ddm::SelectionResult sel = ddm::select(params, opts.threshold);
  const auto t3 = clock::now();

  const auto secs = [](auto a, auto b) {
    return std::chrono::duration<double>(b - a).count();
  };
  const double total = secs(t0, t3);
  json out{{"command", "bench"},
           {"config", meta_json(opts, config)},
           {"n", n},
           {"selected_count", sel.selected.size()},
           {"mean_first", mean.empty() ? 0.0 : mean.front()},
           {"fit_seconds", secs(t0, t1)},
           {"posterior_mean_seconds", secs(t1, t2)},
           {"select_seconds", secs(t2, t3)},
           {"total_seconds", total},
           {"coords_per_second",
            total > 0.0 ? static_cast<double>(n) / total : 0.0}};
  emit(opts, out.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"data-dependent measure for sparse normal means"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string input_path;
  std::string spec_path;
  std::string ball_method = "quantile";
  double grid_min = 0.0, grid_max = 10.0, grid_step = 1.0;
  std::size_t bench_n = 1000000;

  CLI::App* fit = app.add_subcommand("fit", "fit the measure to a data column");
  fit->add_option("input", input_path, "CSV with one observation per line")
      ->required();
  add_common_flags(fit, &opts);

  CLI::App* sel = app.add_subcommand("select", "estimated configuration");
  sel->add_option("input", input_path)->required();
  add_common_flags(sel, &opts);

  CLI::App* interval =
      app.add_subcommand("interval", "marginal credible intervals");
  interval->add_option("input", input_path)->required();
  add_common_flags(interval, &opts);

  CLI::App* ball = app.add_subcommand("ball", "credible ball around the mean");
  ball->add_option("input", input_path)->required();
  ball->add_option("--method", ball_method, "quantile or plug_in")
      ->check(CLI::IsMember({"quantile", "plug_in"}));
  add_common_flags(ball, &opts);

  CLI::App* simulate =
      app.add_subcommand("simulate", "run an experiment spec (JSON)");
  simulate->add_option("spec", spec_path, "experiment spec file")->required();
  add_common_flags(simulate, &opts);

  CLI::App* curve = app.add_subcommand(
      "curve", "coverage curve over a theta11 grid (CSV output)");
  curve->add_option("spec", spec_path, "Section4 experiment spec file")
      ->required();
  curve->add_option("--grid-min", grid_min);
  curve->add_option("--grid-max", grid_max);
  curve->add_option("--grid-step", grid_step);
  add_common_flags(curve, &opts);

  CLI::App* bench =
      app.add_subcommand("bench", "time fit + mean + select end-to-end");
  bench->add_option("--n", bench_n, "problem size");
  add_common_flags(bench, &opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  if (opts.threads > 0) ddm::set_max_threads(opts.threads);

  try {
    if (fit->parsed()) return run_fit(opts, input_path);
    if (sel->parsed()) return run_select(opts, input_path);
    if (interval->parsed()) return run_interval(opts, input_path);
    if (ball->parsed()) return run_ball(opts, input_path, ball_method);
    if (simulate->parsed()) return run_simulate(opts, spec_path);
    if (curve->parsed())
      return run_curve(opts, spec_path, grid_min, grid_max, grid_step);
    if (bench->parsed()) return run_bench(opts, bench_n);
    std::cerr << "no command given\n";
    return kExitParse;
  } catch (const ddm::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ddm::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
