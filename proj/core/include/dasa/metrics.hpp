#pragma once

#include <optional>

#include "dasa/model.hpp"
#include "dasa/queueing.hpp"

namespace dasa::metrics {

struct ThroughputBreakdown {
  double case1 = 0.0;  // lambda_s pi0 q1 p_2_2(q1)
  double case2 = 0.0;  // lambda_s P[1 <= Q <= M] q2 p_2_12(q2)
};

struct ThroughputReport {
  double t_s = 0.0;  // successful secondary packets per slot per m^2
  ThroughputBreakdown breakdown;
  std::optional<double> delay;  // primary average delay; absent when lambda = 0
  bool feasible = false;        // stable and delay < d_max
  queueing::ServiceRates rates;
  queueing::QueueAnalysis queue;
};

// mu1 = p_1_12(q2, p2) and mu2 = p_1_1 are derived from the protocol on every
// call. The delay constraint comes from cfg.delay() (none means d_max = inf).
// With lambda = 0 the constraint is vacuous and the point is feasible.
// Throws Unstable.
ThroughputReport secondary_throughput(const ValidatedConfig& cfg, const ProtocolParams& protocol);
ThroughputReport secondary_throughput(const ValidatedConfig& cfg);

// Service rates implied by (q2, p2).
queueing::ServiceRates service_rates(const ValidatedConfig& cfg, double q2, double p2_mw);

}  // namespace dasa::metrics
