#pragma once

// Success probabilities of the primary and secondary links under Rayleigh
// fading and a PPP of secondary interferers.
//
// Naming: p_a_b is the success probability of link `a` when the transmitters
// in `b` are active (1 = primary, 2 = secondary, 12 = both).

#include <cstdint>

#include "dasa/model.hpp"

namespace dasa::phy {

struct SuccessProbabilities {
  double p_2_2 = 0.0;   // secondary, only STs active
  double p_1_12 = 0.0;  // primary, PT and STs active
  double p_2_12 = 0.0;  // secondary, PT and STs active
  double p_1_1 = 0.0;   // primary, STs silent
};

// sin(pi x)/(pi x) on (0, 1); DomainError otherwise.
double sinc_norm(double x);

// PPP interference exponent per unit active density: pi d^2 theta^(2/alpha)/sinc(2/alpha).
double interference_area(double d, double theta, double alpha);

double p_2_2(double q1, double p2_mw, const ValidatedConfig& cfg);
double p_2_2(double q1, const ValidatedConfig& cfg);  // p2 from cfg.protocol()

double p_1_12(double q2, double p2_mw, const ValidatedConfig& cfg);

double p_1_1(const ValidatedConfig& cfg);

// E[distance from PT to an SR uniform on the disk of radius R centred on
// the PR]. Memoized per (d_p, R); thread-safe. Throws QuadratureFailure if
// successive rule doublings do not agree to 1e-8 relative.
double expected_pt_to_sr_distance(const ValidatedConfig& cfg);
// Same integral for raw geometry; accepts d_p = 0.
double expected_pt_to_sr_distance(double d_p, double radius);

enum class P212Method {
  Approximate,  // closed-form approximation (default)
  Empirical,    // Monte Carlo estimate from the simulator
};

struct EmpiricalOptions {
  std::uint64_t samples = 200000;  // Case-2 slots
  std::uint64_t seed = 1;
};

double p_2_12(double q2, double p2_mw, const ValidatedConfig& cfg,
              P212Method method = P212Method::Approximate,
              const EmpiricalOptions& empirical = {});

// All four at the protocol's q1, q2 and p2.
SuccessProbabilities success_probabilities(const ValidatedConfig& cfg);

}  // namespace dasa::phy
