#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "dasa/errors.hpp"
#include "dasa/metrics.hpp"
#include "dasa/optimize.hpp"
#include "dasa/phy.hpp"
#include "dasa/queueing.hpp"
#include "dasa/sim.hpp"
#include "output.hpp"

namespace dasa::cli {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Writes to --out when given, otherwise to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error("cannot open output file: " + path);
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameter(path, "cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json threshold_json(const CongestionThreshold& m) {
  return m.is_finite() ? json(m.value()) : json("inf");
}

CongestionThreshold parse_threshold(const std::string& text) {
  if (text == "inf") return CongestionThreshold::infinite();
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || v < 1) throw InvalidParameter("m", "must be a positive integer or \"inf\"");
  return CongestionThreshold::finite(static_cast<std::uint64_t>(v));
}

}  // namespace

ConfigDocument load_document(const CommonOptions& opts) {
  ConfigDocument doc = opts.config_path.empty() ? ConfigDocument{} : load_config(opts.config_path);
  for (const auto& o : opts.overrides) apply_override(doc, o);
  return doc;
}

ValidatedConfig build_config(const ConfigDocument& doc) {
  ProtocolParams p = doc.protocol;
  if (doc.q1_optimal) p.q1 = 0.0;
  auto cfg = validate(doc.channel, doc.geometry, p, doc.delay);
  if (!doc.q1_optimal) return cfg;
  p.q1 = optimize::optimal_q1(cfg);
  return cfg.with_protocol(p);
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const CommonOptions& common, std::ostream& out) {
  const auto doc = load_document(common);
  const auto cfg = build_config(doc);
  const auto& proto = cfg.protocol();

  const auto report = metrics::secondary_throughput(cfg);
  json j;
  j["config"] = json::parse(to_json(doc));
  j["q1"] = proto.q1;
  j["q1_optimal"] = optimize::optimal_q1(cfg);
  j["success_probabilities"] = to_json(phy::success_probabilities(cfg));
  j["kappa"] = to_json(optimize::kappa_constants(cfg, proto.p2_mw));
  j["expected_pt_to_sr_distance"] = phy::expected_pt_to_sr_distance(cfg);
  j["queue"] = to_json(report.queue, report.rates);
  j["throughput"] = to_json(report);

  Sink sink(common.out_path, out);
  sink.stream() << j.dump(2) << '\n';
  return 0;
}

// --------------------------------------------------------------- optimize

int cmd_optimize(const CommonOptions& common, const OptimizeOptions& opts, std::ostream& out) {
  const auto doc = load_document(common);
  const auto cfg = build_config(doc);
  const auto& proto = cfg.protocol();
  const DelayConstraint d = *cfg.delay();

  json j;
  j["lambda"] = proto.lambda;
  j["m"] = threshold_json(proto.m);
  j["d_max"] = number(d.d_max);

  if (opts.mode == "closed-form") {
    if (proto.m.is_finite())
      throw InvalidParameter("m", "closed-form mode requires m = \"inf\"");
    const double p2 = opts.p2_mw.value_or(proto.p2_mw);
    if (!(p2 > 0.0 && p2 <= cfg.channel().p2_max_mw))
      throw InvalidParameter("p2_mw", "must lie in (0, p2_max_mw]");
    const auto r = optimize::constrained_optimal_q2(cfg, p2, proto.lambda, d);
    const auto bound = optimize::feasible_q2_bound(cfg, p2, proto.lambda, d);
    j["result"] = to_json(r);
    j["global_q2"] = optimize::global_optimal_q2(cfg, p2);
    j["q2_max"] = number(bound.q2_max);
    j["eta1"] = bound.eta1;
    j["kappa"] = to_json(optimize::kappa_constants(cfg, p2));
  } else if (opts.mode == "grid") {
    optimize::GridSpec spec;
    spec.q2_steps = opts.q2_steps;
    spec.p2_steps = opts.p2_steps;
    spec.p2_min_mw = opts.p2_min_mw;
    spec.log_p2 = !opts.linear_p2;
    spec.keep_surface = !opts.surface_path.empty();
    if (opts.p2_mw) spec.p2_values = {*opts.p2_mw};
    const auto g = optimize::grid_optimize(cfg, proto.lambda, proto.m, d, spec);
    j["result"] = to_json(g.best);
    j["grid"] = {{"q2_steps", spec.q2_steps},
                 {"p2_steps", spec.p2_steps},
                 {"log_p2", spec.log_p2}};
    if (spec.keep_surface) {
      Sink surf(opts.surface_path, out);
      CsvWriter csv(surf.stream());
      csv.row({"q2", "p2_mw", "t_s", "delay", "feasible"});
      for (const auto& c : g.surface) {
        csv.row({format_float(c.q2), format_float(c.p2_mw), format_float(c.t_s),
                 format_float(c.delay.value_or(kInf)), c.feasible ? "1" : "0"});
      }
    }
  } else {
    throw InvalidParameter("mode", "must be grid or closed-form");
  }

  Sink sink(common.out_path, out);
  sink.stream() << j.dump(2) << '\n';
  return 0;
}

// ------------------------------------------------------------------ sweep

namespace {

const std::vector<std::string> kSweepVariables = {"q1", "q2", "p2", "lambda", "m"};
const std::vector<std::string> kSweepOutputs = {"success_probs", "throughput", "delay", "occupancy"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// Config keys that would set the swept variable.
std::vector<std::string> aliases(const std::string& variable) {
  if (variable == "p2") return {"p2", "p2_mw", "protocol.p2_mw"};
  return {variable, "protocol." + variable};
}

double sweep_value(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "inf") return kInf;
  throw InvalidParameter(field, "must be a number or \"inf\"");
}

}  // namespace

SweepSpec parse_sweep_spec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidParameter("sweep", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidParameter("sweep", "must be a JSON object");

  std::vector<Violation> v;
  SweepSpec s;
  for (const auto& [key, _] : j.items()) {
    if (key != "variable" && key != "range" && key != "values" && key != "outputs" && key != "fixed")
      v.push_back({key, "unknown key"});
  }

  if (!j.contains("variable") || !j["variable"].is_string() ||
      !contains(kSweepVariables, j["variable"].get<std::string>())) {
    v.push_back({"variable", "must be one of q1, q2, p2, lambda, m"});
  } else {
    s.variable = j["variable"].get<std::string>();
  }

  const bool has_range = j.contains("range");
  const bool has_values = j.contains("values");
  if (has_range == has_values) {
    v.push_back({"range", "exactly one of range or values is required"});
  } else if (has_range) {
    const auto& r = j["range"];
    if (!r.is_object() || !r.contains("start") || !r.contains("stop") || !r.contains("steps") ||
        !r["start"].is_number() || !r["stop"].is_number() || !r["steps"].is_number_integer()) {
      v.push_back({"range", "needs numeric start, stop and integer steps"});
    } else if (r["steps"].get<long long>() < 2) {
      v.push_back({"range.steps", "must be >= 2"});
    } else {
      const double a = r["start"].get<double>();
      const double b = r["stop"].get<double>();
      const auto n = static_cast<std::size_t>(r["steps"].get<long long>());
      for (std::size_t i = 0; i < n; ++i)
        s.values.push_back(i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
  } else {
    const auto& vals = j["values"];
    if (!vals.is_array() || vals.empty()) {
      v.push_back({"values", "must be a non-empty array"});
    } else {
      try {
        for (const auto& x : vals) s.values.push_back(sweep_value(x, "values"));
      } catch (const InvalidParameter& e) {
        v.insert(v.end(), e.violations().begin(), e.violations().end());
      }
    }
  }

  if (s.variable == "m") {
    for (double x : s.values) {
      if (!(std::isinf(x) || (x >= 1.0 && x == std::round(x)))) {
        v.push_back({"values", "m must be a positive integer or \"inf\""});
        break;
      }
    }
  } else {
    for (double x : s.values) {
      if (!std::isfinite(x)) {
        v.push_back({"values", "must be finite"});
        break;
      }
    }
  }

  if (!j.contains("outputs") || !j["outputs"].is_array() || j["outputs"].empty()) {
    v.push_back({"outputs", "must be a non-empty array"});
  } else {
    for (const auto& o : j["outputs"]) {
      if (!o.is_string() || !contains(kSweepOutputs, o.get<std::string>())) {
        v.push_back({"outputs", "entries must be success_probs, throughput, delay or occupancy"});
      } else if (contains(s.outputs, o.get<std::string>())) {
        v.push_back({"outputs", "duplicate entry " + o.get<std::string>()});
      } else {
        s.outputs.push_back(o.get<std::string>());
      }
    }
  }

  if (j.contains("fixed")) {
    const auto& f = j["fixed"];
    if (!f.is_object()) {
      v.push_back({"fixed", "must be an object"});
    } else {
      const auto swept = s.variable.empty() ? std::vector<std::string>{} : aliases(s.variable);
      auto add = [&](const std::string& key, const json& value) {
        if (contains(swept, key))
          v.push_back({"fixed." + key, "the swept variable cannot also be fixed"});
        s.fixed.push_back(key + "=" + value.dump());
      };
      for (const auto& [key, value] : f.items()) {
        if (value.is_object()) {
          for (const auto& [sub, sv] : value.items()) add(key + "." + sub, sv);
        } else {
          add(key, value);
        }
      }
    }
  }

  if (!v.empty()) throw InvalidParameter(std::move(v));
  return s;
}

int cmd_sweep(const CommonOptions& common, const std::string& sweep_spec_path, std::ostream& out) {
  const auto spec = parse_sweep_spec(read_file(sweep_spec_path));
  auto base = load_document(common);
  for (const auto& a : spec.fixed) apply_override(base, a);

  std::vector<std::string> header = {spec.variable};
  for (const auto& o : spec.outputs) {
    if (o == "success_probs") header.insert(header.end(), {"p_2_2", "p_1_12", "p_2_12", "p_1_1"});
    if (o == "throughput") header.insert(header.end(), {"t_s", "t_s_case1", "t_s_case2"});
    if (o == "delay") header.push_back("delay");
    if (o == "occupancy") header.insert(header.end(), {"pi0", "prob_mid", "prob_above"});
  }

  // Validate every point before writing anything.
  std::vector<ValidatedConfig> configs;
  configs.reserve(spec.values.size());
  for (double x : spec.values) {
    ConfigDocument doc = base;
    auto& p = doc.protocol;
    if (spec.variable == "q1") {
      p.q1 = x;
      doc.q1_optimal = false;
    } else if (spec.variable == "q2") {
      p.q2 = x;
    } else if (spec.variable == "p2") {
      p.p2_mw = x;
    } else if (spec.variable == "lambda") {
      p.lambda = x;
    } else {
      p.m = std::isinf(x) ? CongestionThreshold::infinite()
                          : CongestionThreshold::finite(static_cast<std::uint64_t>(x));
    }
    configs.push_back(build_config(doc));
  }

  Sink sink(common.out_path, out);
  CsvWriter csv(sink.stream());
  csv.row(header);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& cfg = configs[i];
    std::optional<metrics::ThroughputReport> rep;
    try {
      rep = metrics::secondary_throughput(cfg);
    } catch (const Unstable&) {
      // Unstable points stay in the table: infinite delay, no throughput.
    }
    std::vector<std::string> row = {format_float(spec.values[i])};
    for (const auto& o : spec.outputs) {
      if (o == "success_probs") {
        const auto sp = phy::success_probabilities(cfg);
        for (double x : {sp.p_2_2, sp.p_1_12, sp.p_2_12, sp.p_1_1}) row.push_back(format_float(x));
      } else if (o == "throughput") {
        for (double x : {rep ? rep->t_s : kNaN, rep ? rep->breakdown.case1 : kNaN,
                         rep ? rep->breakdown.case2 : kNaN})
          row.push_back(format_float(x));
      } else if (o == "delay") {
        row.push_back(format_float(!rep ? kInf : rep->delay.value_or(kNaN)));
      } else if (o == "occupancy") {
        for (double x : {rep ? rep->queue.pi0 : kNaN, rep ? rep->queue.prob_mid : kNaN,
                         rep ? rep->queue.prob_above : kNaN})
          row.push_back(format_float(x));
      }
    }
    csv.row(row);
  }
  return 0;
}

// --------------------------------------------------------------- simulate

namespace {

struct Quantity {
  const char* name;
  std::function<const sim::Estimate&(const sim::SimStats&)> get;
  bool proportion;
};

const std::vector<Quantity>& quantities() {
  static const std::vector<Quantity> q = {
      {"p_2_2", [](const sim::SimStats& s) -> const sim::Estimate& { return s.emp_p.p_2_2; }, true},
      {"p_1_12", [](const sim::SimStats& s) -> const sim::Estimate& { return s.emp_p.p_1_12; }, true},
      {"p_2_12", [](const sim::SimStats& s) -> const sim::Estimate& { return s.emp_p.p_2_12; }, true},
      {"p_1_1", [](const sim::SimStats& s) -> const sim::Estimate& { return s.emp_p.p_1_1; }, true},
      {"pi0", [](const sim::SimStats& s) -> const sim::Estimate& { return s.emp_occupancy.pi0; }, true},
      {"prob_mid", [](const sim::SimStats& s) -> const sim::Estimate& { return s.emp_occupancy.prob_mid; }, true},
      {"prob_above", [](const sim::SimStats& s) -> const sim::Estimate& { return s.emp_occupancy.prob_above; }, true},
      {"q_bar", [](const sim::SimStats& s) -> const sim::Estimate& { return s.emp_qbar; }, false},
      {"delay", [](const sim::SimStats& s) -> const sim::Estimate& { return s.emp_delay; }, false},
      {"t_s", [](const sim::SimStats& s) -> const sim::Estimate& { return s.emp_ts; }, false},
      {"mu_bar", [](const sim::SimStats& s) -> const sim::Estimate& { return s.emp_mu_bar; }, false},
  };
  return q;
}

}  // namespace

int cmd_simulate(const CommonOptions& common, const SimulateOptions& opts, std::ostream& out) {
  const auto doc = load_document(common);
  const auto cfg = build_config(doc);

  if (opts.replications < 1) throw InvalidParameter("replications", "must be >= 1");
  sim::SimSpec spec;
  spec.slots = opts.slots;
  spec.warmup_slots = opts.warmup;
  spec.batches = opts.batches;
  spec.sim_radius_factor = opts.sim_radius_factor;
  spec.measure_radius = opts.measure_radius;
  if (opts.estimator == "conditional") {
    spec.sr_estimator = sim::SrEstimator::Conditional;
  } else if (opts.estimator == "sampled") {
    spec.sr_estimator = sim::SrEstimator::Sampled;
  } else {
    throw InvalidParameter("estimator", "must be conditional or sampled");
  }
  sim::validate_spec(spec, cfg.geometry());

  std::vector<sim::SimStats> runs;
  json reps = json::array();
  bool growth = false;
  for (std::uint32_t r = 0; r < opts.replications; ++r) {
    spec.seed = sim::splitmix64(opts.seed + r);
    runs.push_back(sim::run(cfg, spec));
    json one = to_flat_json(runs.back());
    one["seed"] = spec.seed;
    reps.push_back(std::move(one));
    growth = growth || !runs.back().converged;
  }

  // Analytic side; an unstable queue leaves only the success probabilities.
  std::map<std::string, double> analytic;
  const auto sp = phy::success_probabilities(cfg);
  analytic["p_2_2"] = sp.p_2_2;
  analytic["p_1_12"] = sp.p_1_12;
  analytic["p_2_12"] = sp.p_2_12;
  analytic["p_1_1"] = sp.p_1_1;
  bool stable = true;
  try {
    const auto rep = metrics::secondary_throughput(cfg);
    analytic["pi0"] = rep.queue.pi0;
    analytic["prob_mid"] = rep.queue.prob_mid;
    analytic["prob_above"] = rep.queue.prob_above;
    analytic["q_bar"] = rep.queue.q_bar;
    analytic["mu_bar"] = rep.queue.mu_bar;
    analytic["t_s"] = rep.t_s;
    if (rep.delay) analytic["delay"] = *rep.delay;
  } catch (const Unstable&) {
    stable = false;
  }

  json pooled = json::object();
  json analytic_j = json::object();
  json z = json::object();
  for (const auto& q : quantities()) {
    std::vector<sim::Estimate> parts;
    for (const auto& s : runs) parts.push_back(q.get(s));
    const auto p = sim::pool(parts);
    pooled[q.name] = to_json(p);
    const auto it = analytic.find(q.name);
    analytic_j[q.name] = it == analytic.end() ? json(nullptr) : number(it->second);
    if (it == analytic.end() || p.n == 0 || !std::isfinite(p.value)) {
      z[q.name] = nullptr;
      continue;
    }
    double se = std::isfinite(p.se) ? p.se : 0.0;
    if (q.proportion) {
      const double a = it->second;
      se = std::max(se, std::sqrt(a * (1.0 - a) / static_cast<double>(p.n)));
    }
    z[q.name] = se > 0.0 ? number((p.value - it->second) / se) : json(nullptr);
  }

  json j;
  j["config"] = json::parse(to_json(doc));
  j["q1"] = cfg.protocol().q1;
  j["spec"] = {{"slots", spec.slots},
               {"warmup_slots", spec.warmup_slots},
               {"seed", opts.seed},
               {"replications", opts.replications},
               {"batches", spec.batches},
               {"sim_radius_factor", spec.sim_radius_factor},
               {"measure_radius", spec.measure_radius ? json(*spec.measure_radius) : json(nullptr)},
               {"estimator", opts.estimator}};
  j["replications"] = std::move(reps);
  j["pooled"] = std::move(pooled);
  j["analytic"] = std::move(analytic_j);
  j["z_scores"] = std::move(z);
  j["analytic_stable"] = stable;
  j["growth_detected"] = growth;

  Sink sink(common.out_path, out);
  sink.stream() << j.dump(2) << '\n';
  return 0;
}

// --------------------------------------------------------------- boundary

int cmd_boundary(const CommonOptions& common, const BoundaryOptions& opts, std::ostream& out) {
  auto doc = load_document(common);
  if (opts.lambda) doc.protocol.lambda = *opts.lambda;
  if (opts.m) doc.protocol.m = parse_threshold(*opts.m);
  const auto cfg = build_config(doc);
  const auto& proto = cfg.protocol();

  optimize::GridSpec g;
  g.p2_steps = opts.p2_steps;
  g.p2_min_mw = opts.p2_min_mw;
  g.log_p2 = !opts.linear_p2;
  if (g.p2_steps < 1) throw InvalidParameter("p2_steps", "must be >= 1");
  const auto axis = optimize::grid_p2_axis(g, cfg.channel());

  std::vector<optimize::BoundaryPoint> pts;
  bool any = false;
  for (double p2 : axis) {
    pts.push_back(optimize::feasible_boundary(cfg, p2, proto.lambda, proto.m, *cfg.delay()));
    any = any || pts.back().binding != optimize::BoundaryKind::Infeasible;
  }

  Sink sink(common.out_path, out);
  CsvWriter csv(sink.stream());
  csv.row({"p2_mw", "q2_boundary", "binding"});
  for (const auto& p : pts)
    csv.row({format_float(p.p2_mw), format_float(p.q2_boundary), std::string(optimize::to_string(p.binding))});
  if (!any) throw NoFeasiblePoint("no P2 on the grid admits a feasible q2");
  return 0;
}

}  // namespace dasa::cli
