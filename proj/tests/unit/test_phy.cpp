#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <iostream>
#include <random>

#include "dasa/optimize.hpp"
#include "dasa/phy.hpp"
#include "dasa/quadrature.hpp"
#include "dasa/sim.hpp"
#include "reference.hpp"

using namespace dasa;
using dasa::test_support::reference;

namespace {

constexpr double kPi = std::numbers::pi;

// Mean interfering area, the plane integral of 1 - 1/(1 + theta d^a / r^a).
// With u = r^2 scaled by theta^(2/a) d^2 it is pi theta^(2/a) d^2 times
// int_0^inf dv / (1 + v^b), b = a/2; the tail [1, inf) is folded onto
// [0, 1] with v = z^(-1/(b-1)), which leaves a smooth integrand.
double area_numeric(double d, double theta, double alpha) {
  const double b = alpha / 2.0;
  const double head =
      quadrature::integrate([&](double v) { return 1.0 / (1.0 + std::pow(v, b)); }, 0.0, 1.0, 2000);
  const double tail = quadrature::integrate(
      [&](double z) { return 1.0 / (1.0 + std::pow(z, b / (b - 1.0))); }, 0.0, 1.0, 2000);
  return kPi * std::pow(theta, 2.0 / alpha) * d * d * (head + tail / (b - 1.0));
}

// E over SR uniform on the disk of 1 / (1 + theta P1 d_s^a / (P2 d0^a)).
double pt_factor_exact(const ValidatedConfig& cfg, double p2) {
  const auto& c = cfg.channel();
  const auto& g = cfg.geometry();
  const double k = c.theta * c.p1_mw / p2 * std::pow(g.d_s, c.alpha);
  auto inner = [&](double phi) {
    return quadrature::integrate(
        [&](double r) {
          const double d2 = r * r + g.d_p * g.d_p - 2.0 * r * g.d_p * std::cos(phi);
          const double da = std::pow(d2, 0.5 * c.alpha);
          return 2.0 * r / (g.radius * g.radius) * da / (da + k);
        },
        0.0, g.radius, 512);
  };
  return quadrature::integrate(inner, 0.0, kPi, 512) / kPi;
}

}  // namespace

TEST(Phy, SincNorm) {
  EXPECT_NEAR(phy::sinc_norm(0.5), 2.0 / kPi, 1e-15);
  EXPECT_NEAR(phy::sinc_norm(2.0 / 3.0), std::sin(2.0 * kPi / 3.0) / (2.0 * kPi / 3.0), 1e-15);
  EXPECT_NEAR(phy::sinc_norm(2.0 / 3.0), 0.41350, 1e-5);
  EXPECT_NEAR(phy::sinc_norm(1e-9), 1.0, 1e-12);
}

TEST(Phy, InterferenceAreaMatchesPlaneIntegral) {
  for (double alpha : {2.5, 3.0, 4.0, 5.5}) {
    for (double theta : {0.5, 1.0, 4.0}) {
      const double a = phy::interference_area(40.0, theta, alpha);
      EXPECT_NEAR(a / area_numeric(40.0, theta, alpha), 1.0, 1e-6) << alpha << " " << theta;
    }
  }
  // alpha = 4: pi^2 / 2 sqrt(theta) d^2.
  EXPECT_NEAR(phy::interference_area(40.0, 1.0, 4.0), kPi * kPi / 2.0 * 1600.0, 1e-9);
}

TEST(Phy, CaseThreePrimarySuccess) {
  const auto cfg = reference();
  EXPECT_NEAR(phy::p_1_1(cfg), 0.9997, 5e-5);
  const auto& c = cfg.channel();
  EXPECT_DOUBLE_EQ(phy::p_1_1(cfg), std::exp(-c.theta * c.noise_mw * std::pow(300.0, 4) / c.p1_mw));
}

TEST(Phy, NoiseFreeLimits) {
  auto c = reference_channel();
  c.noise_mw = 0.0;
  ProtocolParams p;
  const auto cfg = validate(c, reference_geometry(), p);
  EXPECT_EQ(phy::p_1_1(cfg), 1.0);
  EXPECT_EQ(phy::p_2_2(0.0, 0.01, cfg), 1.0);
  c.theta = 1e12;
  c.noise_mw = reference_channel().noise_mw;
  EXPECT_LT(phy::p_1_1(validate(c, reference_geometry(), p)), 1e-100);
}

TEST(Phy, SecondarySuccessAtOptimalAccess) {
  const auto cfg = reference();
  const double q1 = optimize::optimal_q1(cfg);
  const auto& c = cfg.channel();
  const double noise = std::exp(-c.theta * c.noise_mw * std::pow(40.0, 4) / 0.01);
  EXPECT_NEAR(phy::p_2_2(q1, 0.01, cfg), std::exp(-1.0) * noise, 1e-14);
  EXPECT_NEAR(phy::p_2_2(q1, 0.01, cfg), 0.3675, 5e-5);
}

TEST(Phy, PrimaryCaseTwoLimitsAndMonotonicity) {
  const auto cfg = reference();
  EXPECT_DOUBLE_EQ(phy::p_1_12(0.0, 0.01, cfg), phy::p_1_1(cfg));
  EXPECT_GT(phy::p_1_12(0.2, 0.01, cfg), phy::p_1_12(0.8, 0.01, cfg));
  double prev = 2.0;
  for (int i = 0; i <= 100; ++i) {
    const double q = i / 100.0;
    const double v = phy::p_1_12(q, 0.01, cfg);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_LT(v, prev);
    if (i > 0) {
      EXPECT_LT(v, phy::p_1_1(cfg));
    }
    prev = v;
  }
}

TEST(Phy, SecondaryCaseOneLogAffine) {
  const auto cfg = reference();
  const double h = 0.05;
  const double slope0 = std::log(phy::p_2_2(h, 0.01, cfg)) - std::log(phy::p_2_2(0.0, 0.01, cfg));
  for (int i = 1; i < 20; ++i) {
    const double q = i * h;
    const double s = std::log(phy::p_2_2(q + h, 0.01, cfg)) - std::log(phy::p_2_2(q, 0.01, cfg));
    EXPECT_NEAR(s / slope0, 1.0, 1e-10);
  }
}

TEST(Phy, DominanceOnGrid) {
  const auto cfg = reference();
  for (double p2 : {0.001, 0.005, 0.01, 0.02}) {
    for (int i = 0; i < 100; ++i) {
      const double q = i / 99.0;
      EXPECT_GT(phy::p_2_2(q, p2, cfg), phy::p_2_12(q, p2, cfg));
      EXPECT_GE(phy::p_1_1(cfg), phy::p_1_12(q, p2, cfg));
      for (double v : {phy::p_2_2(q, p2, cfg), phy::p_2_12(q, p2, cfg), phy::p_1_12(q, p2, cfg)}) {
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
  }
}

TEST(Phy, CaseTwoSecondaryVanishingPrimaryPower) {
  auto c = reference_channel();
  c.p1_mw = 1e-14;
  const auto cfg = validate(c, reference_geometry(), ProtocolParams{});
  for (double q : {0.1, 0.5, 0.9})
    EXPECT_NEAR(phy::p_2_12(q, 0.01, cfg) / phy::p_2_2(q, 0.01, cfg), 1.0, 1e-6);
}

TEST(Phy, ExpectedDistanceLimits) {
  EXPECT_NEAR(phy::expected_pt_to_sr_distance(0.0, 500.0), 1000.0 / 3.0, 1e-9);
  EXPECT_NEAR(phy::expected_pt_to_sr_distance(300.0, 1e-6), 300.0, 1e-5);
}

TEST(Phy, ExpectedDistanceMonteCarlo) {
  const auto cfg = reference();
  const double v = phy::expected_pt_to_sr_distance(cfg);
  EXPECT_GT(v, 1000.0 / 3.0);
  EXPECT_LT(v, 800.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double sum = 0.0;
  const int n = 10'000'000;
  for (int i = 0; i < n; ++i) {
    const double r = 500.0 * std::sqrt(u(rng));
    const double phi = 2.0 * kPi * u(rng);
    sum += std::sqrt(r * r + 90000.0 - 600.0 * r * std::cos(phi));
  }
  EXPECT_NEAR(v / (sum / n), 1.0, 1e-3);
}

TEST(Phy, SuccessProbabilitiesBundle) {
  const auto cfg = reference(0.3, 3, 0.5, 0.01);
  const auto sp = phy::success_probabilities(cfg);
  const double q1 = cfg.protocol().q1;
  EXPECT_EQ(sp.p_2_2, phy::p_2_2(q1, 0.01, cfg));
  EXPECT_EQ(sp.p_1_12, phy::p_1_12(0.5, 0.01, cfg));
  EXPECT_EQ(sp.p_2_12, phy::p_2_12(0.5, 0.01, cfg));
  EXPECT_EQ(sp.p_1_1, phy::p_1_1(cfg));
}

// The simulator's Case-2 secondary success against the exact expectation
// (PPP factor times the PT factor averaged over the disk).
TEST(Phy, EmpiricalCaseTwoSecondaryMatchesExactAverage) {
  const auto cfg = reference();
  const double q2 = 0.5, p2 = 0.01;
  const double exact = phy::p_2_2(q2, p2, cfg) * pt_factor_exact(cfg, p2);
  const auto est = sim::estimate_p_2_12(cfg, q2, p2, 100000, 11);
  EXPECT_LT(std::abs(est.value - exact), 3.0 * est.se) << est.value << " vs " << exact;

  const double approx = phy::p_2_12(q2, p2, cfg);
  const double gap = approx / est.value - 1.0;
  std::cout << "[ info ] approx p_2_12 = " << approx << ", empirical = " << est.value
            << " +- " << est.se << ", relative gap = " << gap << '\n';
  EXPECT_GT(approx, exact);  // the closed-form approximation overestimates here
  const double via_method = phy::p_2_12(q2, p2, cfg, phy::P212Method::Empirical, {100000, 11});
  EXPECT_DOUBLE_EQ(via_method, est.value);
}
