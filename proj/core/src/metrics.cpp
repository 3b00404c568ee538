#include "dasa/metrics.hpp"

#include <limits>

#include "dasa/phy.hpp"

namespace dasa::metrics {

queueing::ServiceRates service_rates(const ValidatedConfig& cfg, double q2, double p2_mw) {
  return {phy::p_1_12(q2, p2_mw, cfg), phy::p_1_1(cfg)};
}

ThroughputReport secondary_throughput(const ValidatedConfig& cfg, const ProtocolParams& protocol) {
  validate_protocol(protocol, cfg.channel());
  ThroughputReport r;
  r.rates = service_rates(cfg, protocol.q2, protocol.p2_mw);
  r.queue = queueing::analyze(protocol.lambda, r.rates, protocol.m);

  const double lambda_s = cfg.geometry().lambda_s;
  r.breakdown.case1 =
      lambda_s * r.queue.pi0 * protocol.q1 * phy::p_2_2(protocol.q1, protocol.p2_mw, cfg);
  r.breakdown.case2 =
      lambda_s * r.queue.prob_mid * protocol.q2 * phy::p_2_12(protocol.q2, protocol.p2_mw, cfg);
  r.t_s = r.breakdown.case1 + r.breakdown.case2;

  r.delay = r.queue.delay;
  const double d_max =
      cfg.delay() ? cfg.delay()->d_max : std::numeric_limits<double>::infinity();
  r.feasible = !r.delay || *r.delay < d_max;
  return r;
}

ThroughputReport secondary_throughput(const ValidatedConfig& cfg) {
  return secondary_throughput(cfg, cfg.protocol());
}

}  // namespace dasa::metrics
