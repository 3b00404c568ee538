#pragma once

// Stationary analysis of the primary queue.
//
// The chain is observed after the slot's arrival. State i moves up with
// probability lambda (1 - mu_i) and down with (1 - lambda) mu_i, where
// mu_i = mu1 for 1 <= i <= M and mu2 for i > M.

#include <cstdint>
#include <optional>

#include "dasa/model.hpp"

namespace dasa::queueing {

struct ServiceRates {
  double mu1 = 0.0;  // secondaries active
  double mu2 = 0.0;  // secondaries silenced
};

// lambda (1 - mu1) / ((1 - lambda) mu1)
double xi(double lambda, const ServiceRates& rates);

bool is_stable(double lambda, const ServiceRates& rates, const CongestionThreshold& m);

class StationaryDistribution {
 public:
  double pi0() const noexcept { return pi0_; }
  // pi(i) for any i >= 0; evaluated in log space.
  double operator()(std::uint64_t i) const;

  double lambda() const noexcept { return lambda_; }
  const ServiceRates& rates() const noexcept { return rates_; }
  const CongestionThreshold& threshold() const noexcept { return m_; }

 private:
  friend StationaryDistribution stationary(double, const ServiceRates&,
                                           const CongestionThreshold&);
  StationaryDistribution(double lambda, ServiceRates rates, CongestionThreshold m, double pi0,
                         double log_pi0)
      : lambda_(lambda), rates_(rates), m_(m), pi0_(pi0), log_pi0_(log_pi0) {}

  double lambda_;
  ServiceRates rates_;
  CongestionThreshold m_;
  double pi0_;
  double log_pi0_;
};

// Throws Unstable, or InvalidParameter for rates outside 0 < mu1 <= mu2 <= 1
// or lambda outside [0, 1).
StationaryDistribution stationary(double lambda, const ServiceRates& rates,
                                  const CongestionThreshold& m);

struct Occupancy {
  double prob_mid = 0.0;    // P[1 <= Q <= M]
  double prob_above = 0.0;  // P[Q > M]
};

// Closed form for finite M. Throws DegenerateXi when |xi - 1| < 1e-9; use
// `analyze` there.
Occupancy occupancy(double lambda, const ServiceRates& rates, std::uint64_t m);

struct QueueAnalysis {
  double pi0 = 1.0;
  double prob_mid = 0.0;
  double prob_above = 0.0;
  double q_bar = 0.0;
  double mu_bar = 0.0;
  std::optional<double> delay;  // absent when lambda = 0
  bool stable = true;
  double xi = 0.0;
  bool mu_bar_by_convention = false;  // lambda = 0: mu_bar set to mu2
};

enum class DelayRequest { Optional, Required };

// Throws Unstable; ZeroArrival when lambda = 0 and the delay is Required.
QueueAnalysis analyze(double lambda, const ServiceRates& rates, const CongestionThreshold& m,
                      DelayRequest delay = DelayRequest::Optional);

}  // namespace dasa::queueing
