#pragma once

#include <algorithm>
#include <cmath>

#include "dasa/model.hpp"
#include "dasa/optimize.hpp"

namespace dasa::test_support {

inline CongestionThreshold threshold(unsigned m) {
  return m == 0 ? CongestionThreshold::infinite() : CongestionThreshold::finite(m);
}

// Reference channel and geometry; m = 0 means infinite; q1 < 0 means optimal.
inline ValidatedConfig reference(double lambda = 0.3, unsigned m = 0, double q2 = 0.4,
                                 double p2_mw = 0.01, double q1 = -1.0,
                                 DelayConstraint d = reference_delay()) {
  ProtocolParams p;
  p.lambda = lambda;
  p.m = threshold(m);
  p.q2 = q2;
  p.p2_mw = p2_mw;
  p.q1 = std::max(q1, 0.0);
  auto cfg = validate(reference_channel(), reference_geometry(), p, d);
  if (q1 >= 0.0) return cfg;
  p.q1 = optimize::optimal_q1(cfg);
  return cfg.with_protocol(p);
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// Relative agreement with an absolute floor for values below what the
// iterative oracle resolves.
inline bool close_rel(double a, double b, double rel, double abs_floor = 1e-12) {
  return std::abs(a - b) <= rel * std::abs(b) + abs_floor;
}

}  // namespace dasa::test_support
