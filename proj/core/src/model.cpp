#include "dasa/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace dasa {

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::ostringstream os;
  os << "invalid parameters:";
  for (const auto& v : violations) os << " [" << v.field << ": " << v.reason << "]";
  return os.str();
}

void check_channel(const ChannelParams& c, std::vector<Violation>& out) {
  if (!(c.alpha > 2.0) || !std::isfinite(c.alpha))
    out.push_back({"alpha", "must be finite and > 2"});
  if (!(c.theta > 0.0) || !std::isfinite(c.theta))
    out.push_back({"theta", "must be finite and > 0"});
  if (!(c.noise_mw >= 0.0) || !std::isfinite(c.noise_mw))
    out.push_back({"noise_mw", "must be finite and >= 0"});
  if (!(c.p1_mw > 0.0) || !std::isfinite(c.p1_mw))
    out.push_back({"p1_mw", "must be finite and > 0"});
  if (!(c.p2_max_mw > 0.0) || !std::isfinite(c.p2_max_mw))
    out.push_back({"p2_max_mw", "must be finite and > 0"});
}

void check_geometry(const Geometry& g, std::vector<Violation>& out) {
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) out.push_back({name, "must be finite and > 0"});
  };
  positive(g.d_p, "d_p");
  positive(g.d_s, "d_s");
  positive(g.radius, "radius");
  positive(g.lambda_s, "lambda_s");
  if (g.d_p > 0.0 && g.radius > 0.0 && !(g.d_p < g.radius))
    out.push_back({"d_p", "primary transmitter must lie inside the disk (d_p < radius)"});
}

void check_protocol(const ProtocolParams& p, const ChannelParams& c,
                    std::vector<Violation>& out) {
  if (!(p.lambda >= 0.0 && p.lambda < 1.0)) out.push_back({"lambda", "must lie in [0, 1)"});
  if (!(p.q1 >= 0.0 && p.q1 <= 1.0)) out.push_back({"q1", "must lie in [0, 1]"});
  if (!(p.q2 >= 0.0 && p.q2 <= 1.0)) out.push_back({"q2", "must lie in [0, 1]"});
  if (p.m.is_finite() && p.m.value() < 1) out.push_back({"m", "finite threshold must be >= 1"});
  if (!(p.p2_mw > 0.0) || !std::isfinite(p.p2_mw)) {
    out.push_back({"p2_mw", "must be finite and > 0"});
  } else if (c.p2_max_mw > 0.0 && p.p2_mw > c.p2_max_mw) {
    out.push_back({"p2_mw", "must not exceed p2_max_mw"});
  }
}

void check_delay(const DelayConstraint& d, std::vector<Violation>& out) {
  if (!(d.d_max > 1.0)) out.push_back({"d_max", "must be > 1"});
}

void throw_if_any(std::vector<Violation> violations) {
  if (!violations.empty()) throw InvalidParameter(std::move(violations));
}

}  // namespace

InvalidParameter::InvalidParameter(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

InvalidParameter::InvalidParameter(std::string field, std::string reason)
    : InvalidParameter(std::vector<Violation>{{std::move(field), std::move(reason)}}) {}

std::uint64_t CongestionThreshold::value() const {
  if (!m_) throw std::logic_error("CongestionThreshold::value() on infinite threshold");
  return *m_;
}

std::string CongestionThreshold::to_string() const {
  return m_ ? std::to_string(*m_) : std::string("inf");
}

ValidatedConfig validate(const ChannelParams& channel, const Geometry& geometry,
                         const ProtocolParams& protocol) {
  std::vector<Violation> v;
  check_channel(channel, v);
  check_geometry(geometry, v);
  check_protocol(protocol, channel, v);
  throw_if_any(std::move(v));
  return ValidatedConfig(channel, geometry, protocol, std::nullopt);
}

ValidatedConfig validate(const ChannelParams& channel, const Geometry& geometry,
                         const ProtocolParams& protocol, const DelayConstraint& delay) {
  std::vector<Violation> v;
  check_channel(channel, v);
  check_geometry(geometry, v);
  check_protocol(protocol, channel, v);
  check_delay(delay, v);
  throw_if_any(std::move(v));
  return ValidatedConfig(channel, geometry, protocol, delay);
}

ValidatedConfig ValidatedConfig::with_protocol(const ProtocolParams& protocol) const {
  return delay_ ? validate(channel_, geometry_, protocol, *delay_)
                : validate(channel_, geometry_, protocol);
}

ValidatedConfig ValidatedConfig::with_delay(const DelayConstraint& delay) const {
  return validate(channel_, geometry_, protocol_, delay);
}

void validate_protocol(const ProtocolParams& protocol, const ChannelParams& channel) {
  std::vector<Violation> v;
  check_protocol(protocol, channel, v);
  throw_if_any(std::move(v));
}

double dbm_to_mw(double x_dbm) { return std::pow(10.0, x_dbm / 10.0); }
double mw_to_dbm(double x_mw) { return 10.0 * std::log10(x_mw); }
double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

ChannelParams reference_channel() {
  return ChannelParams{4.0, db_to_linear(0.0), dbm_to_mw(-113.97), 100.0, 0.02};
}

Geometry reference_geometry() { return Geometry{300.0, 40.0, 500.0, 2e-4}; }

DelayConstraint reference_delay() { return DelayConstraint{3.5}; }

}  // namespace dasa
