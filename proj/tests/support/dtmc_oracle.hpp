#pragma once

// Reference solution of the congestion-controlled queue by power iteration
// on the truncated transition matrix. Independent of the closed forms: it
// only encodes the one-step transitions.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dasa::test_support {

struct OracleResult {
  std::vector<double> pi;  // pi[0..n-1]
  double pi0 = 0.0;
  double prob_mid = 0.0;
  double prob_above = 0.0;
  double q_bar = 0.0;
  double mu_bar = 0.0;  // busy-slot service rate
  double delay = 0.0;   // q_bar / lambda + 1 / mu_bar
  std::size_t iterations = 0;
};

// m = 0 stands for an infinite threshold (mu1 everywhere).
inline OracleResult dtmc_oracle(double lambda, double mu1, double mu2, std::uint64_t m,
                                std::size_t states = 0, double tol = 1e-16,
                                std::size_t max_iter = 50'000'000) {
  const bool infinite = m == 0;
  auto mu = [&](std::size_t i) { return infinite || i <= m ? mu1 : mu2; };

  if (states == 0) {
    // Cut where the geometric tail drops below 1e-12.
    const double mu_t = infinite ? mu1 : mu2;
    const double r = lambda * (1.0 - mu_t) / ((1.0 - lambda) * mu_t);
    const double extra = r > 0.0 ? std::ceil(std::log(1e-13) / std::log(r)) : 1.0;
    states = static_cast<std::size_t>((infinite ? 0.0 : static_cast<double>(m)) + extra) + 2;
  }

  std::vector<double> up(states), down(states);
  for (std::size_t i = 0; i < states; ++i) {
    up[i] = i == 0 ? lambda : lambda * (1.0 - mu(i));
    down[i] = i == 0 ? 0.0 : (1.0 - lambda) * mu(i);
  }
  up[states - 1] = 0.0;  // reflect at the cut

  std::vector<double> pi(states, 1.0 / static_cast<double>(states)), next(states);
  OracleResult res;
  for (res.iterations = 1; res.iterations <= max_iter; ++res.iterations) {
    for (std::size_t j = 0; j < states; ++j) {
      double v = pi[j] * (1.0 - up[j] - down[j]);
      if (j > 0) v += pi[j - 1] * up[j - 1];
      if (j + 1 < states) v += pi[j + 1] * down[j + 1];
      next[j] = v;
    }
    double diff = 0.0;
    for (std::size_t j = 0; j < states; ++j) diff += std::abs(next[j] - pi[j]);
    pi.swap(next);
    if (diff < tol) break;
  }
  if (res.iterations > max_iter) throw std::runtime_error("power iteration did not converge");

  double total = 0.0;
  for (double p : pi) total += p;
  for (double& p : pi) p /= total;

  res.pi0 = pi[0];
  double busy_service = 0.0;
  for (std::size_t i = 1; i < states; ++i) {
    if (infinite || i <= m) res.prob_mid += pi[i];
    else res.prob_above += pi[i];
    res.q_bar += static_cast<double>(i) * pi[i];
    busy_service += pi[i] * mu(i);
  }
  const double busy = 1.0 - res.pi0;
  res.mu_bar = busy > 0.0 ? busy_service / busy : std::numeric_limits<double>::quiet_NaN();
  res.delay = lambda > 0.0 ? res.q_bar / lambda + 1.0 / res.mu_bar
                           : std::numeric_limits<double>::quiet_NaN();
  res.pi = std::move(pi);
  return res;
}

}  // namespace dasa::test_support
