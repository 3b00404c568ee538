#include "dasa/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dasa::queueing {

namespace {

constexpr double kEqualRatesTol = 1e-9;
constexpr double kDegenerateXiTol = 1e-9;

void check_inputs(double lambda, const ServiceRates& r) {
  std::vector<Violation> v;
  if (!(lambda >= 0.0 && lambda < 1.0)) v.push_back({"lambda", "must lie in [0, 1)"});
  if (!(r.mu1 > 0.0 && r.mu1 <= 1.0)) v.push_back({"mu1", "must lie in (0, 1]"});
  if (!(r.mu2 > 0.0 && r.mu2 <= 1.0)) v.push_back({"mu2", "must lie in (0, 1]"});
  if (r.mu1 > r.mu2) v.push_back({"mu1", "must not exceed mu2"});
  if (!v.empty()) throw InvalidParameter(std::move(v));
}

void require_stable(double lambda, const ServiceRates& r, const CongestionThreshold& m) {
  if (!is_stable(lambda, r, m)) {
    const double bound = m.is_finite() ? r.mu2 : r.mu1;
    throw Unstable("queue unstable: lambda = " + std::to_string(lambda) +
                   " >= " + (m.is_finite() ? "mu2 = " : "mu1 = ") + std::to_string(bound));
  }
}

bool equal_rates(double lambda, double mu1) {
  return std::abs(lambda - mu1) < kEqualRatesTol * std::max(lambda, mu1);
}

// k * log(x), with 0 * log(0) = 0.
double scaled_log(double k, double log_x) { return k == 0.0 ? 0.0 : k * log_x; }

// sum_{i=1}^{M} i (1 + delta)^{i-1}
//   = sum_{k>=0} (k + 1) C(M + 1, k + 2) delta^k, for |M delta| < 1/2.
double weighted_geometric_series(double m, double delta) {
  double term = 0.5 * m * (m + 1.0);
  double sum = term;
  for (int k = 0; k < 200; ++k) {
    term *= (k + 2.0) / (k + 1.0) * (m - 1.0 - k) / (k + 3.0) * delta;
    sum += term;
    if (term == 0.0 || std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

struct FiniteSolution {
  double pi0;
  double log_pi0;
  double prob_mid;
  double prob_above;
  double q_bar;
  double inv_mu_bar;
};

// All quantities expressed through t = xi^M, H = sum_{i<M} xi^i and
// G = sum_{i<=M} i xi^(i-1), which removes the 1/(xi - 1) singularity.
// When xi^M is large every expression is divided through by t.
FiniteSolution solve_finite(double lam, double mu1, double mu2, std::uint64_t m_int) {
  const double m = static_cast<double>(m_int);
  const bool at_equal_rates = equal_rates(lam, mu1);
  if (at_equal_rates) lam = mu1;

  const double a = (1.0 - lam) * mu1;  // down-rate in the mid region
  const double tail = m + (1.0 - lam) * mu2 / (mu2 - lam);
  const double delta = at_equal_rates ? 0.0 : (lam - mu1) / a;
  const double ell = at_equal_rates ? 0.0 : std::log1p(delta);

  FiniteSolution s{};
  if (delta <= 0.0 || m * ell <= 1.0) {
    double t, h, g;
    if (delta == 0.0) {
      t = 1.0;
      h = m;
      g = 0.5 * m * (m + 1.0);
    } else {
      t = std::exp(scaled_log(m, ell));
      h = std::expm1(scaled_log(m, ell)) / delta;
      g = std::abs(m * delta) < 0.5 ? weighted_geometric_series(m, delta) : (m * t - h) / delta;
    }
    const double den = a * mu2 + lam * (mu2 - mu1) * h;
    s.pi0 = a * (mu2 - lam) / den;
    if (at_equal_rates) {
      // l'Hopital limit of the rational form at lambda = mu1.
      s.pi0 = (mu2 - mu1) / (mu1 + (mu2 - mu1) * (m + 1.0 - mu1) / (1.0 - mu1));
    }
    s.log_pi0 = std::log(s.pi0);
    s.prob_mid = lam * (mu2 - lam) * h / den;
    s.prob_above = lam * t * a / den;
    s.q_bar = (lam * (mu2 - lam) * g + t * lam * a * tail) / den;
    s.inv_mu_bar = (a + h * (mu2 - mu1)) / (mu1 * (h * (mu2 - lam) + t * (1.0 - lam) * mu2));
  } else {
    const double sc = std::exp(-m * ell);  // 1 / xi^M
    const double hs = -std::expm1(-m * ell) / delta;
    const double gs = (m - hs) / delta;
    const double den = a * mu2 * sc + lam * (mu2 - mu1) * hs;
    s.pi0 = a * (mu2 - lam) * sc / den;
    s.log_pi0 = std::log(a * (mu2 - lam)) - m * ell - std::log(den);
    s.prob_mid = lam * (mu2 - lam) * hs / den;
    s.prob_above = lam * a / den;
    s.q_bar = (lam * (mu2 - lam) * gs + lam * a * tail) / den;
    s.inv_mu_bar = (a * sc + hs * (mu2 - mu1)) / (mu1 * (hs * (mu2 - lam) + (1.0 - lam) * mu2));
  }
  return s;
}

}  // namespace

double xi(double lambda, const ServiceRates& rates) {
  return lambda * (1.0 - rates.mu1) / ((1.0 - lambda) * rates.mu1);
}

bool is_stable(double lambda, const ServiceRates& rates, const CongestionThreshold& m) {
  return m.is_finite() ? lambda < rates.mu2 : lambda < rates.mu1;
}

double StationaryDistribution::operator()(std::uint64_t i) const {
  if (i == 0) return pi0_;
  if (lambda_ == 0.0) return 0.0;
  const double lam = lambda_;
  const double mu1 = rates_.mu1;
  const double mu2 = rates_.mu2;
  const double log_xi = std::log(xi(lam, rates_));
  const double di = static_cast<double>(i);
  double log_p;
  if (m_.is_infinite() || i <= m_.value()) {
    log_p = log_pi0_ + std::log(lam / ((1.0 - lam) * mu1)) + scaled_log(di - 1.0, log_xi);
  } else {
    const double m = static_cast<double>(m_.value());
    const double log_r2 = std::log(lam * (1.0 - mu2) / ((1.0 - lam) * mu2));
    log_p = log_pi0_ + scaled_log(m, log_xi) + std::log(lam / ((1.0 - lam) * mu2)) +
            scaled_log(di - m - 1.0, log_r2);
  }
  return std::exp(log_p);
}

StationaryDistribution stationary(double lambda, const ServiceRates& rates,
                                  const CongestionThreshold& m) {
  check_inputs(lambda, rates);
  require_stable(lambda, rates, m);
  if (lambda == 0.0) return StationaryDistribution(lambda, rates, m, 1.0, 0.0);
  if (m.is_infinite()) {
    const double pi0 = 1.0 - lambda / rates.mu1;
    return StationaryDistribution(lambda, rates, m, pi0, std::log(pi0));
  }
  const auto s = solve_finite(lambda, rates.mu1, rates.mu2, m.value());
  return StationaryDistribution(lambda, rates, m, s.pi0, s.log_pi0);
}

Occupancy occupancy(double lambda, const ServiceRates& rates, std::uint64_t m) {
  check_inputs(lambda, rates);
  const auto threshold = CongestionThreshold::finite(m);
  require_stable(lambda, rates, threshold);
  if (m < 1) throw InvalidParameter("m", "finite threshold must be >= 1");
  if (lambda == 0.0) return {0.0, 0.0};
  if (std::abs(xi(lambda, rates) - 1.0) < kDegenerateXiTol)
    throw DegenerateXi("occupancy: |xi - 1| < 1e-9, closed form is singular");
  const auto s = solve_finite(lambda, rates.mu1, rates.mu2, m);
  return {s.prob_mid, s.prob_above};
}

QueueAnalysis analyze(double lambda, const ServiceRates& rates, const CongestionThreshold& m,
                      DelayRequest delay) {
  check_inputs(lambda, rates);
  if (m.is_finite() && m.value() < 1)
    throw InvalidParameter("m", "finite threshold must be >= 1");
  require_stable(lambda, rates, m);

  QueueAnalysis qa;
  qa.stable = true;
  qa.xi = xi(lambda, rates);
  if (lambda == 0.0) {
    if (delay == DelayRequest::Required)
      throw ZeroArrival("delay is undefined for lambda = 0");
    qa.pi0 = 1.0;
    qa.mu_bar = rates.mu2;
    qa.mu_bar_by_convention = true;
    return qa;
  }

  const double mu1 = rates.mu1;
  if (m.is_infinite()) {
    qa.pi0 = 1.0 - lambda / mu1;
    qa.prob_mid = lambda / mu1;
    qa.prob_above = 0.0;
    qa.q_bar = lambda * (1.0 - lambda) / (mu1 - lambda);
    qa.mu_bar = mu1;
    qa.delay = (1.0 - lambda) / (mu1 - lambda) + 1.0 / mu1;
    return qa;
  }

  const auto s = solve_finite(lambda, mu1, rates.mu2, m.value());
  qa.pi0 = s.pi0;
  qa.prob_mid = s.prob_mid;
  qa.prob_above = s.prob_above;
  qa.q_bar = s.q_bar;
  qa.mu_bar = 1.0 / s.inv_mu_bar;
  qa.delay = s.q_bar / lambda + s.inv_mu_bar;
  return qa;
}

}  // namespace dasa::queueing
