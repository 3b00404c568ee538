#include "output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace dasa::cli {

using nlohmann::json;

std::string format_float(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os_ << ',';
    const auto& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      os_ << f;
      continue;
    }
    os_ << '"';
    for (char c : f) {
      if (c == '"') os_ << '"';
      os_ << c;
    }
    os_ << '"';
  }
  os_ << "\r\n";
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json to_json(const phy::SuccessProbabilities& p) {
  return {{"p_2_2", p.p_2_2}, {"p_1_12", p.p_1_12}, {"p_2_12", p.p_2_12}, {"p_1_1", p.p_1_1}};
}

json to_json(const queueing::QueueAnalysis& q, const queueing::ServiceRates& r) {
  return {{"pi0", q.pi0},
          {"prob_mid", q.prob_mid},
          {"prob_above", q.prob_above},
          {"q_bar", q.q_bar},
          {"mu_bar", q.mu_bar},
          {"mu_bar_by_convention", q.mu_bar_by_convention},
          {"delay", q.delay ? number(*q.delay) : json(nullptr)},
          {"stable", q.stable},
          {"xi", number(q.xi)},
          {"mu1", r.mu1},
          {"mu2", r.mu2}};
}

json to_json(const metrics::ThroughputReport& r) {
  return {{"t_s", r.t_s},
          {"breakdown", {{"case1", r.breakdown.case1}, {"case2", r.breakdown.case2}}},
          {"delay", r.delay ? number(*r.delay) : json(nullptr)},
          {"feasible", r.feasible}};
}

json to_json(const optimize::KappaConstants& k) {
  return {{"kappa1", k.kappa1},   {"kappa2", k.kappa2},
          {"kappa12", k.kappa12}, {"c_star", k.c_star},
          {"c12_star", k.c12_star}, {"c12_star_noise_free", k.c12_star_noise_free}};
}

json to_json(const optimize::OptimizationResult& r) {
  return {{"q1", r.q1},
          {"q2_star", r.q2_star},
          {"p2_star", r.p2_star},
          {"t_s_star", r.t_s_star},
          {"delay", r.delay ? number(*r.delay) : json(nullptr)},
          {"binding", std::string(optimize::to_string(r.binding))},
          {"method", std::string(optimize::to_string(r.method))}};
}

json to_json(const sim::Estimate& e) {
  return {{"value", number(e.value)}, {"se", number(e.se)}, {"n", e.n}};
}

namespace {

void put(json& j, const std::string& name, const sim::Estimate& e) {
  j[name] = number(e.value);
  j[name + "_se"] = number(e.se);
  j[name + "_n"] = e.n;
}

}  // namespace

json to_flat_json(const sim::SimStats& s) {
  json j = json::object();
  put(j, "emp_p_2_2", s.emp_p.p_2_2);
  put(j, "emp_p_1_12", s.emp_p.p_1_12);
  put(j, "emp_p_2_12", s.emp_p.p_2_12);
  put(j, "emp_p_1_1", s.emp_p.p_1_1);
  put(j, "emp_occupancy_pi0", s.emp_occupancy.pi0);
  put(j, "emp_occupancy_prob_mid", s.emp_occupancy.prob_mid);
  put(j, "emp_occupancy_prob_above", s.emp_occupancy.prob_above);
  put(j, "emp_qbar", s.emp_qbar);
  put(j, "emp_delay", s.emp_delay);
  put(j, "emp_ts", s.emp_ts);
  put(j, "emp_mu_bar", s.emp_mu_bar);
  j["departures"] = s.departures;
  j["measured_slots"] = s.measured_slots;
  j["slots_case1"] = s.slots_case1;
  j["slots_case2"] = s.slots_case2;
  j["slots_case3"] = s.slots_case3;
  j["total_arrivals"] = s.total_arrivals;
  j["total_departures"] = s.total_departures;
  j["final_q"] = s.final_q;
  j["q_mid"] = s.q_mid;
  j["q_second_quarter_mean"] = s.q_second_quarter_mean;
  j["q_last_quarter_mean"] = s.q_last_quarter_mean;
  j["converged"] = s.converged;
  return j;
}

}  // namespace dasa::cli
