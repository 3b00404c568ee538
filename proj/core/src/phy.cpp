#include "dasa/phy.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "dasa/quadrature.hpp"
#include "dasa/sim.hpp"

namespace dasa::phy {

namespace {

constexpr double kPi = std::numbers::pi;

double noise_factor(double theta, double noise_mw, double d, double alpha, double p_mw) {
  return std::exp(-theta * noise_mw * std::pow(d, alpha) / p_mw);
}

// Rule of n points in both dimensions. The radial integral is split at
// r = d_p, where the integrand has a kink at phi = 0.
double mean_distance_rule(double d_p, double radius, std::size_t n) {
  const double r_split = std::min(d_p, radius);
  auto inner = [&](double phi) {
    const double c = std::cos(phi);
    auto f = [&](double r) { return 2.0 * r * std::sqrt(r * r + d_p * d_p - 2.0 * r * d_p * c); };
    double s = 0.0;
    if (r_split > 0.0) s += quadrature::integrate(f, 0.0, r_split, n);
    if (r_split < radius) s += quadrature::integrate(f, r_split, radius, n);
    return s / (radius * radius);
  };
  // The integrand is even in phi, so average over [0, pi].
  return quadrature::integrate(inner, 0.0, kPi, n) / kPi;
}

double compute_mean_distance(double d_p, double radius) {
  constexpr std::size_t kStart = 64;
  constexpr std::size_t kMax = 4096;
  constexpr double kTol = 1e-8;
  double prev = mean_distance_rule(d_p, radius, kStart);
  for (std::size_t n = 2 * kStart; n <= kMax; n *= 2) {
    const double cur = mean_distance_rule(d_p, radius, n);
    if (std::abs(cur - prev) <= kTol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw QuadratureFailure("mean PT-SR distance did not converge to 1e-8 within 4096 nodes");
}

}  // namespace

double sinc_norm(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("sinc_norm: argument must lie in (0, 1)");
  return std::sin(kPi * x) / (kPi * x);
}

double interference_area(double d, double theta, double alpha) {
  return kPi * d * d * std::pow(theta, 2.0 / alpha) / sinc_norm(2.0 / alpha);
}

double p_2_2(double q1, double p2_mw, const ValidatedConfig& cfg) {
  const auto& c = cfg.channel();
  const auto& g = cfg.geometry();
  return std::exp(-q1 * g.lambda_s * interference_area(g.d_s, c.theta, c.alpha)) *
         noise_factor(c.theta, c.noise_mw, g.d_s, c.alpha, p2_mw);
}

double p_2_2(double q1, const ValidatedConfig& cfg) {
  return p_2_2(q1, cfg.protocol().p2_mw, cfg);
}

double p_1_12(double q2, double p2_mw, const ValidatedConfig& cfg) {
  const auto& c = cfg.channel();
  const auto& g = cfg.geometry();
  const double d_eff = g.d_p * std::pow(p2_mw / c.p1_mw, 1.0 / c.alpha);
  return std::exp(-q2 * g.lambda_s * interference_area(d_eff, c.theta, c.alpha)) * p_1_1(cfg);
}

double p_1_1(const ValidatedConfig& cfg) {
  const auto& c = cfg.channel();
  return noise_factor(c.theta, c.noise_mw, cfg.geometry().d_p, c.alpha, c.p1_mw);
}

double expected_pt_to_sr_distance(double d_p, double radius) {
  if (!(d_p >= 0.0) || !(radius > 0.0) || !std::isfinite(d_p) || !std::isfinite(radius))
    throw DomainError("expected_pt_to_sr_distance: need d_p >= 0 and radius > 0");
  static std::mutex mu;
  static std::map<std::pair<double, double>, double> cache;
  const auto key = std::make_pair(d_p, radius);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double v = compute_mean_distance(d_p, radius);
  std::lock_guard lock(mu);
  cache.emplace(key, v);
  return v;
}

double expected_pt_to_sr_distance(const ValidatedConfig& cfg) {
  return expected_pt_to_sr_distance(cfg.geometry().d_p, cfg.geometry().radius);
}

double p_2_12(double q2, double p2_mw, const ValidatedConfig& cfg, P212Method method,
              const EmpiricalOptions& empirical) {
  if (method == P212Method::Empirical)
    return sim::estimate_p_2_12(cfg, q2, p2_mw, empirical.samples, empirical.seed).value;
  const auto& c = cfg.channel();
  const double ed = expected_pt_to_sr_distance(cfg);
  const double d_s = cfg.geometry().d_s;
  const double pt_term = (d_s * d_s) / (ed * ed) * std::pow(c.theta * c.p1_mw / p2_mw, 2.0 / c.alpha);
  return p_2_2(q2, p2_mw, cfg) / (1.0 + pt_term);
}

SuccessProbabilities success_probabilities(const ValidatedConfig& cfg) {
  const auto& p = cfg.protocol();
  return {p_2_2(p.q1, p.p2_mw, cfg), p_1_12(p.q2, p.p2_mw, cfg), p_2_12(p.q2, p.p2_mw, cfg),
          p_1_1(cfg)};
}

}  // namespace dasa::phy
