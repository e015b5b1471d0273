#include "guamp/cli.hpp"

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "guamp/algorithms.hpp"
#include "guamp/certification.hpp"
#include "guamp/config.hpp"
#include "guamp/errors.hpp"
#include "guamp/fixture.hpp"
#include "guamp/sweep.hpp"

namespace guamp {

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RunArgs {
  std::string config;
  std::optional<std::string> out;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  bool record_timing = false;
};

struct ReduceArgs {
  std::uint64_t seed = 1;
  int iterations = 50;
};

struct FixtureArgs {
  std::uint64_t seed = 0;
  std::string out;
  Index m = 64;
  Index n = 16;
  double rho = 0.0;
  double snr_db = 20.0;
  std::string channel = "onebit";
  double lambda = 0.1;
};

int do_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  SweepConfig config = load_config(args.config);
  if (args.out) config.out_path = *args.out;
  if (args.trials) config.trials = *args.trials;
  if (args.seed) config.master_seed = *args.seed;
  config.validate();

  SweepOptions options;
  options.record_timing = args.record_timing;
  options.progress = &err;
  const auto start = std::chrono::steady_clock::now();
  const SweepResult result = run_sweep(config, options);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << "wrote " << result.records.size() << " rows to " << config.out_path << " ("
      << secs << " s)\n";
  return 0;
}

int do_oracle_check(std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const CertificationReport report = run_certification();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const FamilyReport& f : report.families) {
    out << f.family << ": points=" << f.points << " max_rel_err(first)="
        << f.max_rel_error_first << " max_rel_err(second)=" << f.max_rel_error_second
        << " worst=" << f.worst_case << "\n";
  }
  const bool ok = report.passed();
  out << "max relative error " << report.max_rel_error() << " (tolerance 1e-08) "
      << (ok ? "PASS" : "FAIL") << " in " << secs << " s\n";
  return ok ? 0 : kExitFailure;
}

int do_reduce_check(const ReduceArgs& args, std::ostream& out) {
  ProblemSpec spec;
  spec.m = 256;
  spec.n = 64;
  spec.rho = 0.3;
  spec.snr_db = 20.0;
  spec.channel = ChannelKind::gaussian;
  Rng rng(args.seed);
  const GlmProblem problem = make_problem(spec, rng, args.seed);
  RunParams params;
  params.T_max = args.iterations;
  const ReductionReport r = check_reduction(problem, params);
  const bool ext_ok = r.max_ext_mean_deviation <= 1e-10 && r.max_ext_var_deviation <= 1e-10;
  const bool path_ok = r.max_trajectory_deviation <= 1e-8;
  out << "iterations " << r.iterations << "\n"
      << "module B extrinsic vs (U^T y, sigma^2): max |mean dev| " << r.max_ext_mean_deviation
      << ", max |var dev| " << r.max_ext_var_deviation << " (tolerance 1e-10) "
      << (ext_ok ? "PASS" : "FAIL") << "\n"
      << "GUAMP vs UAMP x_hat: max per-iteration deviation " << r.max_trajectory_deviation
      << " (tolerance 1e-08) " << (path_ok ? "PASS" : "FAIL") << "\n";
  return ext_ok && path_ok ? 0 : kExitFailure;
}

int do_export_fixture(const FixtureArgs& args, std::ostream& out) {
  ProblemSpec spec;
  spec.m = args.m;
  spec.n = args.n;
  spec.rho = args.rho;
  spec.snr_db = args.snr_db;
  spec.lambda = args.lambda;
  if (args.channel == "onebit") {
    spec.channel = ChannelKind::onebit;
  } else if (args.channel == "twobit") {
    spec.channel = ChannelKind::multibit;
  } else if (args.channel == "gaussian") {
    spec.channel = ChannelKind::gaussian;
  } else {
    throw ConfigError("channel", "unknown channel '" + args.channel + "'");
  }
  Rng rng(args.seed);
  const GlmProblem problem = make_problem(spec, rng, args.seed);
  write_problem_dir(problem, args.out);
  out << "wrote problem (m=" << spec.m << ", n=" << spec.n << ") to " << args.out << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"GUAMP / GAMP / UAMP message passing for quantized compressed sensing"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Monte Carlo sweep from a JSON config");
  run->add_option("--config", run_args.config, "Sweep configuration (JSON)")->required();
  run->add_option("--out", run_args.out, "Override out_path");
  run->add_option("--trials", run_args.trials, "Override trials");
  run->add_option("--seed", run_args.seed, "Override master_seed");
  run->add_flag("--record-timing", run_args.record_timing, "Fill the wall_ms column");

  auto* oracle = app.add_subcommand("oracle-check", "Certify closed forms against quadrature");

  ReduceArgs reduce_args;
  auto* reduce = app.add_subcommand("reduce-check", "Gaussian-channel GUAMP vs UAMP identity");
  reduce->add_option("--seed", reduce_args.seed, "Problem seed");
  reduce->add_option("--iterations", reduce_args.iterations, "Outer iterations")
      ->check(CLI::PositiveNumber);

  FixtureArgs fixture_args;
  auto* fixture = app.add_subcommand("export-fixture", "Write a problem directory");
  fixture->add_option("--seed", fixture_args.seed, "Problem seed")->required();
  fixture->add_option("--out", fixture_args.out, "Output directory")->required();
  fixture->add_option("--m", fixture_args.m, "Measurements")->check(CLI::PositiveNumber);
  fixture->add_option("--n", fixture_args.n, "Signal length")->check(CLI::PositiveNumber);
  fixture->add_option("--rho", fixture_args.rho, "Correlation coefficient");
  fixture->add_option("--snr", fixture_args.snr_db, "SNR in dB");
  fixture->add_option("--channel", fixture_args.channel, "onebit, twobit or gaussian");
  fixture->add_option("--lambda", fixture_args.lambda, "Bernoulli-Gaussian sparsity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return do_run(run_args, out, err);
    if (*oracle) return do_oracle_check(out);
    if (*reduce) return do_reduce_check(reduce_args, out);
    if (*fixture) return do_export_fixture(fixture_args, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

int cli_main(int argc, char** argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace guamp
