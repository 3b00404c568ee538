#include "dasa/lambert_w.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dasa/errors.hpp"

namespace dasa {

namespace {

constexpr int kMaxIter = 50;
constexpr double kInvE = 1.0 / std::numbers::e;

double initial_guess(double x) {
  if (x < -0.25) {
    // Branch-point series in p = sqrt(2 (e x + 1)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  }
  if (x < 3.0) {
    const double l = std::log1p(x);
    return l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < -kInvE) throw DomainError("lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;
  if (x == -kInvE) return -1.0;
  if (std::isinf(x)) return x;
  if (x > 1e300) return lambert_w0_exp(std::log(x));

  double w = initial_guess(x);
  for (int i = 0; i < kMaxIter; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    const double next = std::max(w - step, -1.0);
    if (std::abs(next - w) <= 1e-16 * std::max(1.0, std::abs(next))) {
      w = next;
      break;
    }
    w = next;
  }
  return w;
}

double lambert_w0_exp(double log_x) {
  if (log_x < 1.0) return lambert_w0(std::exp(log_x));
  // Newton on g(w) = w + ln w - log_x, convex and increasing for w > 0.
  double w = log_x - std::log(log_x);
  if (w <= 0.0) w = 1.0;
  for (int i = 0; i < kMaxIter; ++i) {
    const double g = w + std::log(w) - log_x;
    const double next = w - g / (1.0 + 1.0 / w);
    if (std::abs(next - w) <= 1e-16 * std::abs(next)) {
      w = next;
      break;
    }
    w = next;
  }
  return w;
}

}  // namespace dasa
