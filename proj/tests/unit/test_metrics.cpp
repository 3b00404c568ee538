#include <gtest/gtest.h>

#include <limits>

#include "dasa/metrics.hpp"
#include "dasa/phy.hpp"
#include "reference.hpp"

using namespace dasa;
using dasa::test_support::reference;

TEST(Metrics, SilentNetworkHasNoThroughput) {
  const auto r = metrics::secondary_throughput(reference(0.3, 3, 0.0, 0.01, 0.0));
  EXPECT_EQ(r.t_s, 0.0);
  EXPECT_EQ(r.breakdown.case1, 0.0);
  EXPECT_EQ(r.breakdown.case2, 0.0);
}

TEST(Metrics, ZeroArrivalsInfiniteThreshold) {
  const auto cfg = reference(0.0, 0, 0.4, 0.01);
  const auto r = metrics::secondary_throughput(cfg);
  const double q1 = cfg.protocol().q1;
  EXPECT_NEAR(r.t_s, 2e-4 * q1 * phy::p_2_2(q1, 0.01, cfg), 1e-20);
  EXPECT_FALSE(r.delay.has_value());
}

TEST(Metrics, ReferenceOptimumPoint) {
  const auto r = metrics::secondary_throughput(reference(0.3, 3, 0.377, 0.0177));
  EXPECT_NEAR(r.t_s / 3.63e-5, 1.0, 0.02);
  EXPECT_NEAR(r.breakdown.case1 + r.breakdown.case2, r.t_s, 1e-20);
  EXPECT_EQ(r.rates.mu2, phy::p_1_1(reference()));
}

TEST(Metrics, RatesFollowAccessAndPower) {
  const auto cfg = reference();
  const auto r = metrics::service_rates(cfg, 0.4, 0.01);
  EXPECT_EQ(r.mu1, phy::p_1_12(0.4, 0.01, cfg));
  EXPECT_EQ(r.mu2, phy::p_1_1(cfg));
}

TEST(Metrics, LargerThresholdGivesMoreThroughput) {
  for (double q2 : {0.2, 0.4, 0.6}) {
    double prev = 0.0;
    for (unsigned m = 1; m <= 8; ++m) {
      const double t = metrics::secondary_throughput(reference(0.3, m, q2, 0.01)).t_s;
      EXPECT_GE(t, prev) << q2 << " " << m;
      prev = t;
    }
  }
}

TEST(Metrics, DelayBoundDoesNotChangeThroughput) {
  const auto a = metrics::secondary_throughput(reference(0.3, 3, 0.4, 0.01, -1, {3.5}));
  const auto b = metrics::secondary_throughput(reference(0.3, 3, 0.4, 0.01, -1, {100.0}));
  EXPECT_EQ(a.t_s, b.t_s);
  EXPECT_EQ(a.delay, b.delay);
}

TEST(Metrics, Feasibility) {
  EXPECT_TRUE(metrics::secondary_throughput(reference(0.3, 1, 0.2, 0.01)).feasible);
  EXPECT_FALSE(metrics::secondary_throughput(reference(0.3, 1, 1.0, 0.02)).feasible);
  const auto inf = reference(0.3, 1, 1.0, 0.02, -1, {std::numeric_limits<double>::infinity()});
  EXPECT_TRUE(metrics::secondary_throughput(inf).feasible);
}
