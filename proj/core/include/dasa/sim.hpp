#pragma once

// Slot-level Monte Carlo simulation of the shared-access network.
//
// Geometry: PR at the origin, PT at (d_p, 0). STs form a fresh PPP on a disk
// of radius sim_radius_factor * R every slot, each paired with an SR at
// distance d_s in a uniform direction. Fading is i.i.d. unit-mean
// exponential per link and slot.
//
// Slot order: Bernoulli arrival, observe Q (case selection), draw and thin
// the PPP, PR decoding, SR decoding, dequeue on PR success.
//
// RNG: slot k of a run with seed s uses std::mt19937_64 seeded with
// splitmix64(splitmix64(s) ^ k), so any slot can be reproduced in isolation.

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "dasa/model.hpp"

namespace dasa::sim {

enum class SrEstimator {
  // Average the SR fading analytically given the geometry: each link
  // contributes its conditional success probability. Unbiased, lower
  // variance, and much cheaper than sampling.
  Conditional,
  // Draw a fade per SR-interferer link and count SINR > theta.
  Sampled,
};

struct SimSpec {
  std::uint64_t slots = 200000;  // total, including warmup
  std::uint64_t seed = 1;
  double sim_radius_factor = 3.0;
  std::optional<double> measure_radius;  // default R
  std::uint64_t warmup_slots = 1000;
  SrEstimator sr_estimator = SrEstimator::Conditional;
  std::uint32_t batches = 40;  // batch means for standard errors
  bool measure_secondary = true;  // false skips SR decoding (queue-only runs)
};

// Throws InvalidParameter listing every violation.
void validate_spec(const SimSpec& spec, const Geometry& geometry);

struct Estimate {
  double value = std::numeric_limits<double>::quiet_NaN();
  double se = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t n = 0;  // denominator count (slots, links or packets)
};

struct EmpiricalSuccess {
  Estimate p_2_2;   // per active link, Case 1 slots
  Estimate p_1_12;  // per Case 2 slot
  Estimate p_2_12;  // per active link, Case 2 slots
  Estimate p_1_1;   // per Case 3 slot
};

struct EmpiricalOccupancy {
  Estimate pi0;
  Estimate prob_mid;
  Estimate prob_above;
};

struct SimStats {
  EmpiricalSuccess emp_p;
  EmpiricalOccupancy emp_occupancy;
  Estimate emp_qbar;   // time-average Q after arrivals
  Estimate emp_delay;  // mean sojourn, arrival slot to departure slot inclusive
  Estimate emp_ts;     // secondary successes per slot per m^2 inside measure_radius
  Estimate emp_mu_bar; // PR successes per slot with Q >= 1
  std::uint64_t departures = 0;  // post-warmup

  std::uint64_t measured_slots = 0;
  std::uint64_t slots_case1 = 0;  // Q = 0
  std::uint64_t slots_case2 = 0;  // 1 <= Q <= M
  std::uint64_t slots_case3 = 0;  // Q > M

  // Whole run, warmup included: total_arrivals - total_departures == final_q.
  std::uint64_t total_arrivals = 0;
  std::uint64_t total_departures = 0;
  std::uint64_t final_q = 0;

  // Stability diagnostics over the whole run.
  std::uint64_t q_mid = 0;  // Q at the end of slot slots/2
  double q_second_quarter_mean = 0.0;
  double q_last_quarter_mean = 0.0;
  bool converged = true;  // last-quarter mean within 10% of second-quarter mean
};

struct Link {
  double tx_x, tx_y;  // ST
  double rx_x, rx_y;  // SR, at distance d_s from the ST
};

std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 slot_rng(std::uint64_t seed, std::uint64_t slot);

// PPP of the given intensity on a disk centred at the origin, each point
// paired with a receiver at distance d_s in a uniform direction.
std::vector<Link> sample_ppp(double intensity, double radius, double d_s, std::mt19937_64& rng);

// Runs never throw on instability; inspect `converged`.
SimStats run(const ValidatedConfig& cfg, const ProtocolParams& protocol, const SimSpec& spec);
SimStats run(const ValidatedConfig& cfg, const SimSpec& spec);

// Case-2 secondary success rate alone (PT always active, ST access q2),
// from `samples` independent slots.
Estimate estimate_p_2_12(const ValidatedConfig& cfg, double q2, double p2_mw,
                         std::uint64_t samples, std::uint64_t seed,
                         SrEstimator estimator = SrEstimator::Conditional);

// Combines independent replications: values weighted by their sample counts,
// standard errors combined accordingly.
Estimate pool(const std::vector<Estimate>& parts);

}  // namespace dasa::sim
