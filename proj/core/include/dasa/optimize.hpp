#pragma once

// Secondary throughput maximization.
//
// Closed-form path (no congestion control, M = inf): optimal q1, the
// Lambert-W optimum of q2, the delay-feasible bound on q2 and their minimum.
// General path: exhaustive grid over (q2, P2).

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "dasa/metrics.hpp"
#include "dasa/model.hpp"

namespace dasa::optimize {

struct KappaConstants {
  double kappa1 = 0.0;   // pi d_s^2 theta^(2/alpha) / sinc(2/alpha)
  double kappa2 = 0.0;   // pi d_p^2 (theta P2/P1)^(2/alpha) / sinc(2/alpha)
  double kappa12 = 0.0;  // 1 / (1 + (d_s/E[d0i])^2 (theta P1/P2)^(2/alpha))
  double c_star = 0.0;   // q1* p_2_2(q1*)
  // c* / (kappa12 exp(-theta sigma^2 d_s^alpha / P2)). The secondary noise
  // factor is divided out so that the closed-form q2 is the exact stationary
  // point of the throughput; c12_star_noise_free keeps it.
  double c12_star = 0.0;
  double c12_star_noise_free = 0.0;
};

KappaConstants kappa_constants(const ValidatedConfig& cfg, double p2_mw);

// True when P2/P1 < (d_s/d_p)^alpha.
bool power_ratio_ok(const ValidatedConfig& cfg, double p2_mw);

double optimal_q1(const ValidatedConfig& cfg);

enum class Binding { Interior, StabilityBound, DelayBound, UnitInterval };
enum class Method { ClosedForm, Grid };

std::string_view to_string(Binding b);
std::string_view to_string(Method m);

// Throws PowerRatioViolation when P2/P1 >= (d_s/d_p)^alpha.
double global_optimal_q2(const ValidatedConfig& cfg, double p2_mw);

enum class BoundKind { Stability, Delay };
std::string_view to_string(BoundKind b);

struct FeasibleBound {
  double q2_max = 0.0;  // may exceed 1; the caller clamps
  BoundKind binding = BoundKind::Stability;
  double eta1 = 0.0;
};

// Largest q2 keeping the M = inf queue stable with delay below d_max.
// Throws InvalidArrival unless 0 < lambda < p_1_1; NoFeasiblePoint when
// q2_max <= 0.
FeasibleBound feasible_q2_bound(const ValidatedConfig& cfg, double p2_mw, double lambda,
                                const DelayConstraint& d);

// Root of the M = inf delay equation in mu1.
double eta1(double lambda, double d_max);

struct OptimizationResult {
  double q1 = 0.0;
  double q2_star = 0.0;
  double p2_star = 0.0;
  double t_s_star = 0.0;
  std::optional<double> delay;
  Binding binding = Binding::Interior;
  Method method = Method::ClosedForm;
};

// min(q2o, stability bound, delay bound), M = inf. The feasible region is
// open, so a binding bound is approached from inside by a relative 1e-12.
OptimizationResult constrained_optimal_q2(const ValidatedConfig& cfg, double p2_mw, double lambda,
                                          const DelayConstraint& d);

struct GridSpec {
  std::size_t q2_steps = 200;
  std::size_t p2_steps = 200;
  std::optional<double> p2_min_mw;  // default p2_max_mw * 1e-3
  bool log_p2 = true;
  // Explicit axes override the ranges.
  std::vector<double> q2_values;
  std::vector<double> p2_values;
  bool keep_surface = false;
};

struct GridCell {
  double q2 = 0.0;
  double p2_mw = 0.0;
  double t_s = 0.0;
  std::optional<double> delay;  // nullopt when unstable
  bool feasible = false;
};

struct GridResult {
  OptimizationResult best;
  std::vector<GridCell> surface;  // p2-major, filled when keep_surface
};

// Axis values a GridSpec resolves to, ascending.
std::vector<double> grid_q2_axis(const GridSpec& spec);
std::vector<double> grid_p2_axis(const GridSpec& spec, const ChannelParams& channel);

// Exhaustive argmax of T_s over the grid with q1 = optimal_q1, keeping cells
// with delay < d_max. Ties go to the smallest P2, then the smallest q2.
// Throws InvalidArrival when lambda >= p_1_1 for finite M, NoFeasiblePoint
// when no cell is feasible, InvalidParameter for axes with fewer than 1
// point or ranges with fewer than 2 steps.
GridResult grid_optimize(const ValidatedConfig& cfg, double lambda, const CongestionThreshold& m,
                         const DelayConstraint& d, const GridSpec& spec = {});

enum class BoundaryKind { Delay, Stability, UnitInterval, Infeasible };
std::string_view to_string(BoundaryKind b);

struct BoundaryPoint {
  double p2_mw = 0.0;
  double q2_boundary = 0.0;  // largest feasible q2 in [0, 1]
  BoundaryKind binding = BoundaryKind::Infeasible;
};

// M = inf: the closed-form bound. Finite M: bisection on delay(q2) = d_max
// to 1e-5, using monotonicity of the delay in q2.
BoundaryPoint feasible_boundary(const ValidatedConfig& cfg, double p2_mw, double lambda,
                                const CongestionThreshold& m, const DelayConstraint& d);

}  // namespace dasa::optimize
