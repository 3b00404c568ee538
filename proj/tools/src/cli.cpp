#include "dasa/cli/cli.hpp"

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dasa/errors.hpp"

namespace dasa::cli {

namespace {

void add_common(CLI::App* sub, CommonOptions& c) {
  sub->add_option("--config", c.config_path, "JSON configuration file");
  sub->add_option("--set", c.overrides, "Override key=value (repeatable)")->take_all();
  sub->add_option("--out", c.out_path, "Output file (default stdout)");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shared-access network analysis and simulation", "dasa"};
  app.require_subcommand(1);

  CommonOptions common;
  OptimizeOptions opt;
  SimulateOptions simo;
  BoundaryOptions bnd;
  std::string sweep_path;

  auto* analyze = app.add_subcommand("analyze", "Success probabilities, queue and throughput report");
  add_common(analyze, common);

  auto* optimize = app.add_subcommand("optimize", "Delay-constrained throughput optimization");
  add_common(optimize, common);
  optimize->add_option("--mode", opt.mode, "grid or closed-form")
      ->check(CLI::IsMember({"grid", "closed-form"}));
  optimize->add_option("--p2", opt.p2_mw, "Secondary power in mW; in grid mode fixes the P2 axis");
  optimize->add_option("--q2-steps", opt.q2_steps, "Grid points along q2");
  optimize->add_option("--p2-steps", opt.p2_steps, "Grid points along P2");
  optimize->add_option("--p2-min", opt.p2_min_mw, "Smallest P2 in mW");
  optimize->add_flag("--linear-p2", opt.linear_p2, "Uniform instead of log-uniform P2 axis");
  optimize->add_option("--surface", opt.surface_path, "CSV file for the throughput surface");

  auto* sweep = app.add_subcommand("sweep", "One-parameter sweep to CSV");
  add_common(sweep, common);
  sweep->add_option("--spec", sweep_path, "Sweep definition JSON")->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo simulation against the analytics");
  add_common(simulate, common);
  simulate->add_option("--slots", simo.slots, "Slots per replication, warmup included");
  simulate->add_option("--seed", simo.seed, "Base seed");
  simulate->add_option("--replications", simo.replications, "Independent replications");
  simulate->add_option("--warmup", simo.warmup, "Warmup slots");
  simulate->add_option("--estimator", simo.estimator, "conditional or sampled")
      ->check(CLI::IsMember({"conditional", "sampled"}));
  simulate->add_option("--batches", simo.batches, "Batches for standard errors");
  simulate->add_option("--sim-radius-factor", simo.sim_radius_factor, "Simulation disk / R");
  simulate->add_option("--measure-radius", simo.measure_radius, "Throughput disk radius in m");

  auto* boundary = app.add_subcommand("boundary", "Feasible-region boundary to CSV");
  add_common(boundary, common);
  boundary->add_option("--lambda", bnd.lambda, "Arrival rate");
  boundary->add_option("--m", bnd.m, "Congestion threshold, integer or inf");
  boundary->add_option("--p2-steps", bnd.p2_steps, "Points along P2");
  boundary->add_option("--p2-min", bnd.p2_min_mw, "Smallest P2 in mW");
  boundary->add_flag("--linear-p2", bnd.linear_p2, "Uniform instead of log-uniform P2 axis");

  // CLI11 consumes the vector from the back.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidation;
  }

  if (analyze->parsed()) return cmd_analyze(common, out);
  if (optimize->parsed()) return cmd_optimize(common, opt, out);
  if (sweep->parsed()) return cmd_sweep(common, sweep_path, out);
  if (simulate->parsed()) return cmd_simulate(common, simo, out);
  return cmd_boundary(common, bnd, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const InvalidParameter& e) {
    err << "error: invalid parameters\n";
    for (const auto& v : e.violations()) err << "  " << v.field << ": " << v.reason << '\n';
    return kValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const Unstable& e) {
    err << "error: " << e.what() << '\n';
    return kUnstable;
  } catch (const InvalidArrival& e) {
    err << "error: " << e.what() << '\n';
    return kUnstable;
  } catch (const PowerRatioViolation& e) {
    err << "error: " << e.what() << '\n';
    return kPowerRatio;
  } catch (const NoFeasiblePoint& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace dasa::cli
