#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dasa/config_io.hpp"
#include "dasa/model.hpp"

namespace dasa::cli {

struct CommonOptions {
  std::string config_path;             // empty: reference scenario
  std::vector<std::string> overrides;  // key=value, applied after the file
  std::string out_path;                // empty or "-": the output stream
};

// Loads the document and applies overrides in order.
ConfigDocument load_document(const CommonOptions& opts);

// Validates; q1 = "optimal" is resolved against the validated geometry.
ValidatedConfig build_config(const ConfigDocument& doc);

struct OptimizeOptions {
  std::string mode = "grid";  // grid | closed-form
  std::optional<double> p2_mw;  // closed-form: default from the config; grid: single P2
  std::size_t q2_steps = 400;
  std::size_t p2_steps = 400;
  std::optional<double> p2_min_mw;
  bool linear_p2 = false;
  std::string surface_path;
};

struct SimulateOptions {
  std::uint64_t slots = 200000;
  std::uint64_t seed = 1;
  std::uint32_t replications = 1;
  std::uint64_t warmup = 1000;
  std::string estimator = "conditional";
  std::uint32_t batches = 40;
  double sim_radius_factor = 3.0;
  std::optional<double> measure_radius;
};

struct BoundaryOptions {
  std::optional<double> lambda;
  std::optional<std::string> m;
  std::size_t p2_steps = 50;
  std::optional<double> p2_min_mw;
  bool linear_p2 = false;
};

// Sweep definition file:
//   {"variable": "q2",
//    "range": {"start": 0, "stop": 1, "steps": 50} | "values": [...],
//    "outputs": ["success_probs", "throughput", "delay", "occupancy"],
//    "fixed": {"lambda": 0.3, "m": 1, "channel": {"alpha": 4}}}
// `fixed` takes bare keys, dotted keys or whole sections and is applied on
// top of the config and --set overrides.
struct SweepSpec {
  std::string variable;  // q1 | q2 | p2 | lambda | m
  std::vector<double> values;
  std::vector<std::string> outputs;
  std::vector<std::string> fixed;  // key=value assignments
};

SweepSpec parse_sweep_spec(std::string_view json_text);

// Each returns a process exit code and throws dasa::Error subclasses for the
// caller to map.
int cmd_analyze(const CommonOptions& common, std::ostream& out);
int cmd_optimize(const CommonOptions& common, const OptimizeOptions& opts, std::ostream& out);
int cmd_sweep(const CommonOptions& common, const std::string& sweep_spec_path, std::ostream& out);
int cmd_simulate(const CommonOptions& common, const SimulateOptions& opts, std::ostream& out);
int cmd_boundary(const CommonOptions& common, const BoundaryOptions& opts, std::ostream& out);

}  // namespace dasa::cli
