#include "dasa/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dasa/lambert_w.hpp"
#include "dasa/phy.hpp"
#include "dasa/queueing.hpp"

namespace dasa::optimize {

namespace {

constexpr double kInsideBound = 1.0 - 1e-12;

ProtocolParams make_protocol(double lambda, double q1, double q2, double p2_mw,
                             const CongestionThreshold& m) {
  ProtocolParams p;
  p.lambda = lambda;
  p.q1 = q1;
  p.q2 = q2;
  p.p2_mw = p2_mw;
  p.m = m;
  return p;
}

ValidatedConfig with_constraint(const ValidatedConfig& cfg, const DelayConstraint& d) {
  return cfg.delay() && *cfg.delay() == d ? cfg : cfg.with_delay(d);
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Delay at (q2, p2), or nullopt when the queue is unstable.
std::optional<double> delay_at(const ValidatedConfig& cfg, double q2, double p2_mw, double lambda,
                               const CongestionThreshold& m) {
  const auto rates = metrics::service_rates(cfg, q2, p2_mw);
  if (!queueing::is_stable(lambda, rates, m)) return std::nullopt;
  return queueing::analyze(lambda, rates, m).delay;
}

}  // namespace

std::string_view to_string(Binding b) {
  switch (b) {
    case Binding::Interior: return "interior";
    case Binding::StabilityBound: return "stability_bound";
    case Binding::DelayBound: return "delay_bound";
    case Binding::UnitInterval: return "unit_interval";
  }
  return "unknown";
}

std::string_view to_string(Method m) {
  return m == Method::ClosedForm ? "closed_form" : "grid";
}

std::string_view to_string(BoundKind b) {
  return b == BoundKind::Stability ? "stability" : "delay";
}

std::string_view to_string(BoundaryKind b) {
  switch (b) {
    case BoundaryKind::Delay: return "delay";
    case BoundaryKind::Stability: return "stability";
    case BoundaryKind::UnitInterval: return "unit_interval";
    case BoundaryKind::Infeasible: return "infeasible";
  }
  return "unknown";
}

KappaConstants kappa_constants(const ValidatedConfig& cfg, double p2_mw) {
  const auto& c = cfg.channel();
  const auto& g = cfg.geometry();
  KappaConstants k;
  k.kappa1 = phy::interference_area(g.d_s, c.theta, c.alpha);
  k.kappa2 = phy::interference_area(g.d_p, c.theta, c.alpha) *
             std::pow(p2_mw / c.p1_mw, 2.0 / c.alpha);
  const double ed = phy::expected_pt_to_sr_distance(cfg);
  k.kappa12 = 1.0 / (1.0 + (g.d_s * g.d_s) / (ed * ed) *
                               std::pow(c.theta * c.p1_mw / p2_mw, 2.0 / c.alpha));
  const double q1 = optimal_q1(cfg);
  k.c_star = q1 * phy::p_2_2(q1, p2_mw, cfg);
  const double noise_s = std::exp(-c.theta * c.noise_mw * std::pow(g.d_s, c.alpha) / p2_mw);
  k.c12_star = k.c_star / (k.kappa12 * noise_s);
  k.c12_star_noise_free = k.c_star / k.kappa12;
  return k;
}

bool power_ratio_ok(const ValidatedConfig& cfg, double p2_mw) {
  const auto& c = cfg.channel();
  const auto& g = cfg.geometry();
  return p2_mw / c.p1_mw < std::pow(g.d_s / g.d_p, c.alpha);
}

double optimal_q1(const ValidatedConfig& cfg) {
  const auto& g = cfg.geometry();
  const double k1 = phy::interference_area(g.d_s, cfg.channel().theta, cfg.channel().alpha);
  return std::min(1.0 / (g.lambda_s * k1), 1.0);
}

double global_optimal_q2(const ValidatedConfig& cfg, double p2_mw) {
  if (!(p2_mw > 0.0)) throw InvalidParameter("p2_mw", "must be > 0");
  const auto k = kappa_constants(cfg, p2_mw);
  if (!power_ratio_ok(cfg, p2_mw) || !(k.kappa1 > k.kappa2))
    throw PowerRatioViolation("P2/P1 must be below (d_s/d_p)^alpha for the closed-form optimum");

  const double ls = cfg.geometry().lambda_s;
  const double dk = k.kappa1 - k.kappa2;
  const double log_arg = std::log(ls * k.kappa1 * k.kappa2 * k.c12_star / dk) + k.kappa1 / dk;
  const double w = log_arg > 700.0 ? lambert_w0_exp(log_arg) : lambert_w0(std::exp(log_arg));
  const double bracket = -w / (ls * k.kappa1) + 1.0 / (ls * dk);
  return std::min(std::max(bracket, 0.0), 1.0);
}

double eta1(double lambda, double d_max) {
  if (std::isinf(d_max)) return lambda;
  const double a = (d_max - 1.0) * lambda;
  return (a + 2.0 + std::sqrt(a * a - 4.0 * lambda + 4.0)) / (2.0 * d_max);
}

FeasibleBound feasible_q2_bound(const ValidatedConfig& cfg, double p2_mw, double lambda,
                                const DelayConstraint& d) {
  const double p11 = phy::p_1_1(cfg);
  if (!(lambda > 0.0 && lambda < p11))
    throw InvalidArrival("feasible region requires 0 < lambda < p_1_1");
  if (!(d.d_max > 1.0)) throw InvalidParameter("d_max", "must be > 1");

  const double scale = cfg.geometry().lambda_s * kappa_constants(cfg, p2_mw).kappa2;
  FeasibleBound fb;
  fb.eta1 = eta1(lambda, d.d_max);
  const double stability = std::log(p11 / lambda) / scale;
  const double delay = std::log(p11 / fb.eta1) / scale;
  if (delay < stability) {
    fb.q2_max = delay;
    fb.binding = BoundKind::Delay;
  } else {
    fb.q2_max = stability;
    fb.binding = BoundKind::Stability;
  }
  if (!(fb.q2_max > 0.0))
    throw NoFeasiblePoint("no q2 >= 0 satisfies the delay constraint at this P2");
  return fb;
}

OptimizationResult constrained_optimal_q2(const ValidatedConfig& cfg, double p2_mw,
                                          double lambda, const DelayConstraint& d) {
  const double q2o = global_optimal_q2(cfg, p2_mw);
  const auto fb = feasible_q2_bound(cfg, p2_mw, lambda, d);

  OptimizationResult r;
  r.method = Method::ClosedForm;
  r.q1 = optimal_q1(cfg);
  r.p2_star = p2_mw;
  if (q2o < fb.q2_max) {
    r.q2_star = q2o;
    r.binding = (q2o == 0.0 || q2o == 1.0) ? Binding::UnitInterval : Binding::Interior;
  } else {
    r.q2_star = fb.q2_max * kInsideBound;
    r.binding = fb.binding == BoundKind::Delay ? Binding::DelayBound : Binding::StabilityBound;
  }
  const auto eval_cfg = with_constraint(cfg, d);
  const auto rep = metrics::secondary_throughput(
      eval_cfg, make_protocol(lambda, r.q1, r.q2_star, p2_mw, CongestionThreshold::infinite()));
  r.t_s_star = rep.t_s;
  r.delay = rep.delay;
  return r;
}

std::vector<double> grid_q2_axis(const GridSpec& spec) {
  if (!spec.q2_values.empty()) return sorted_unique(spec.q2_values);
  if (spec.q2_steps < 2) throw InvalidParameter("q2_steps", "must be >= 2");
  std::vector<double> v(spec.q2_steps);
  const double n = static_cast<double>(spec.q2_steps - 1);
  for (std::size_t i = 0; i < spec.q2_steps; ++i) v[i] = static_cast<double>(i) / n;
  return v;
}

std::vector<double> grid_p2_axis(const GridSpec& spec, const ChannelParams& channel) {
  if (!spec.p2_values.empty()) return sorted_unique(spec.p2_values);
  if (spec.p2_steps < 2) throw InvalidParameter("p2_steps", "must be >= 2");
  const double hi = channel.p2_max_mw;
  const double lo = spec.p2_min_mw.value_or(hi * 1e-3);
  if (!(lo > 0.0 && lo < hi)) throw InvalidParameter("p2_min_mw", "must lie in (0, p2_max_mw)");
  std::vector<double> v(spec.p2_steps);
  const double n = static_cast<double>(spec.p2_steps - 1);
  for (std::size_t i = 0; i < spec.p2_steps; ++i) {
    const double f = static_cast<double>(i) / n;
    v[i] = spec.log_p2 ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  v.back() = hi;
  return v;
}

GridResult grid_optimize(const ValidatedConfig& cfg, double lambda, const CongestionThreshold& m,
                         const DelayConstraint& d, const GridSpec& spec) {
  const double p11 = phy::p_1_1(cfg);
  if (m.is_finite() && !(lambda < p11))
    throw InvalidArrival("grid optimization requires lambda < p_1_1");
  const auto q2_axis = grid_q2_axis(spec);
  const auto p2_axis = grid_p2_axis(spec, cfg.channel());
  const auto eval_cfg = with_constraint(cfg, d);
  const double q1 = optimal_q1(cfg);

  GridResult out;
  if (spec.keep_surface) out.surface.reserve(q2_axis.size() * p2_axis.size());

  bool found = false;
  std::size_t best_i = 0, best_j = 0;
  double best_t = -1.0;
  metrics::ThroughputReport best_rep;
  // Strict improvement while scanning P2 then q2 ascending gives the
  // smallest-P2, smallest-q2 tie-break.
  for (std::size_t j = 0; j < p2_axis.size(); ++j) {
    for (std::size_t i = 0; i < q2_axis.size(); ++i) {
      GridCell cell{q2_axis[i], p2_axis[j], 0.0, std::nullopt, false};
      const auto proto = make_protocol(lambda, q1, cell.q2, cell.p2_mw, m);
      const auto rates = metrics::service_rates(cfg, cell.q2, cell.p2_mw);
      if (queueing::is_stable(lambda, rates, m)) {
        const auto rep = metrics::secondary_throughput(eval_cfg, proto);
        cell.t_s = rep.t_s;
        cell.delay = rep.delay;
        cell.feasible = rep.feasible;
        if (rep.feasible && rep.t_s > best_t) {
          found = true;
          best_t = rep.t_s;
          best_i = i;
          best_j = j;
          best_rep = rep;
        }
      }
      if (spec.keep_surface) out.surface.push_back(cell);
    }
  }
  if (!found) throw NoFeasiblePoint("no grid cell satisfies the delay constraint");

  auto& r = out.best;
  r.method = Method::Grid;
  r.q1 = q1;
  r.q2_star = q2_axis[best_i];
  r.p2_star = p2_axis[best_j];
  r.t_s_star = best_rep.t_s;
  r.delay = best_rep.delay;
  if (best_i + 1 == q2_axis.size()) {
    r.binding = r.q2_star == 1.0 ? Binding::UnitInterval : Binding::Interior;
  } else {
    const double next_q2 = q2_axis[best_i + 1];
    const auto next_delay = delay_at(cfg, next_q2, r.p2_star, lambda, m);
    if (!next_delay) r.binding = Binding::StabilityBound;
    else if (!(*next_delay < d.d_max)) r.binding = Binding::DelayBound;
    else r.binding = Binding::Interior;
  }
  return out;
}

BoundaryPoint feasible_boundary(const ValidatedConfig& cfg, double p2_mw, double lambda,
                                const CongestionThreshold& m, const DelayConstraint& d) {
  BoundaryPoint bp;
  bp.p2_mw = p2_mw;
  if (m.is_infinite()) {
    try {
      const auto fb = feasible_q2_bound(cfg, p2_mw, lambda, d);
      if (fb.q2_max >= 1.0) {
        bp.q2_boundary = 1.0;
        bp.binding = BoundaryKind::UnitInterval;
      } else {
        bp.q2_boundary = fb.q2_max;
        bp.binding = fb.binding == BoundKind::Delay ? BoundaryKind::Delay : BoundaryKind::Stability;
      }
    } catch (const NoFeasiblePoint&) {
      bp.binding = BoundaryKind::Infeasible;
    }
    return bp;
  }

  if (!(lambda < phy::p_1_1(cfg))) throw InvalidArrival("boundary requires lambda < p_1_1");
  auto feasible = [&](double q2) {
    const auto dl = delay_at(cfg, q2, p2_mw, lambda, m);
    return !dl || *dl < d.d_max;
  };
  if (!feasible(0.0)) {
    bp.binding = BoundaryKind::Infeasible;
    return bp;
  }
  if (feasible(1.0)) {
    bp.q2_boundary = 1.0;
    bp.binding = BoundaryKind::UnitInterval;
    return bp;
  }
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  bp.q2_boundary = lo;
  bp.binding = BoundaryKind::Delay;
  return bp;
}

}  // namespace dasa::optimize
