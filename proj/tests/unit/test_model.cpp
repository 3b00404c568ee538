#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dasa/errors.hpp"
#include "dasa/model.hpp"

using namespace dasa;

namespace {

std::vector<std::string> fields_of(const InvalidParameter& e) {
  std::vector<std::string> out;
  for (const auto& v : e.violations()) out.push_back(v.field);
  return out;
}

template <class F>
std::vector<std::string> violations(F&& f) {
  try {
    f();
  } catch (const InvalidParameter& e) {
    return fields_of(e);
  }
  return {};
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST(Model, ReferenceScenarioValidates) {
  const auto c = reference_channel();
  EXPECT_EQ(c.alpha, 4.0);
  EXPECT_EQ(c.theta, 1.0);
  EXPECT_EQ(c.p1_mw, 100.0);
  EXPECT_EQ(c.p2_max_mw, 0.02);
  const auto g = reference_geometry();
  EXPECT_EQ(g.lambda_s, 2e-4);
  EXPECT_EQ(g.d_s, 40.0);
  EXPECT_EQ(g.d_p, 300.0);
  EXPECT_EQ(g.radius, 500.0);
  const auto cfg = validate(c, g, ProtocolParams{});
  EXPECT_EQ(cfg.channel(), c);
  EXPECT_EQ(cfg.geometry(), g);
  EXPECT_FALSE(cfg.delay().has_value());
}

TEST(Model, AlphaTwoRejected) {
  auto c = reference_channel();
  c.alpha = 2.0;
  const auto f = violations([&] { validate(c, reference_geometry(), ProtocolParams{}); });
  EXPECT_TRUE(has(f, "alpha"));
}

TEST(Model, PrimaryOutsideDiskRejected) {
  auto g = reference_geometry();
  g.d_p = 600.0;
  const auto f = violations([&] { validate(reference_channel(), g, ProtocolParams{}); });
  EXPECT_TRUE(has(f, "d_p"));
}

TEST(Model, AllViolationsCollected) {
  ChannelParams c{1.5, -1.0, -1.0, 0.0, 0.0};
  Geometry g{-1.0, 0.0, 0.0, -2.0};
  ProtocolParams p;
  p.lambda = 1.0;
  p.q1 = 2.0;
  p.q2 = -0.1;
  p.p2_mw = 0.0;
  const auto f = violations([&] { validate(c, g, p, DelayConstraint{1.0}); });
  for (const char* name : {"alpha", "theta", "noise_mw", "p1_mw", "p2_max_mw", "d_p", "d_s",
                           "radius", "lambda_s", "lambda", "q1", "q2", "p2_mw", "d_max"})
    EXPECT_TRUE(has(f, name)) << name;
}

TEST(Model, FiniteThresholdZeroRejected) {
  ProtocolParams p;
  p.m = CongestionThreshold::finite(0);
  const auto f = violations([&] { validate(reference_channel(), reference_geometry(), p); });
  EXPECT_TRUE(has(f, "m"));
}

TEST(Model, P2AboveMaxRejected) {
  ProtocolParams p;
  p.p2_mw = 0.03;
  const auto f = violations([&] { validate(reference_channel(), reference_geometry(), p); });
  EXPECT_TRUE(has(f, "p2_mw"));
}

TEST(Model, InfiniteDelayBoundAllowed) {
  EXPECT_NO_THROW(validate(reference_channel(), reference_geometry(), ProtocolParams{},
                           DelayConstraint{std::numeric_limits<double>::infinity()}));
}

TEST(Model, ValidateIsIdempotent) {
  ProtocolParams p;
  p.q1 = 0.5;
  p.q2 = 0.3;
  p.m = CongestionThreshold::finite(3);
  const auto a = validate(reference_channel(), reference_geometry(), p, reference_delay());
  const auto b = validate(a.channel(), a.geometry(), a.protocol(), *a.delay());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.with_protocol(a.protocol()), a);
}

TEST(Model, WithProtocolRevalidates) {
  const auto a = validate(reference_channel(), reference_geometry(), ProtocolParams{});
  ProtocolParams bad;
  bad.q2 = 1.5;
  EXPECT_THROW(a.with_protocol(bad), InvalidParameter);
}

TEST(Model, CongestionThreshold) {
  const auto inf = CongestionThreshold::infinite();
  const auto three = CongestionThreshold::finite(3);
  EXPECT_TRUE(inf.is_infinite());
  EXPECT_FALSE(inf.is_finite());
  EXPECT_THROW((void)inf.value(), std::logic_error);
  EXPECT_EQ(three.value(), 3u);
  EXPECT_EQ(inf.to_string(), "inf");
  EXPECT_EQ(three.to_string(), "3");
  EXPECT_NE(inf, three);
}

TEST(Units, DbmToMw) {
  EXPECT_DOUBLE_EQ(dbm_to_mw(0.0), 1.0);
  EXPECT_DOUBLE_EQ(dbm_to_mw(30.0), 1000.0);
  EXPECT_NEAR(dbm_to_mw(-113.97), std::pow(10.0, -11.397), 1e-26);
  EXPECT_NEAR(dbm_to_mw(-113.97), 4.0087e-12, 1e-15);
}

TEST(Units, RoundTrip) {
  for (double e = -15.0; e <= 6.0; e += 0.25) {
    const double x = std::pow(10.0, e);
    EXPECT_NEAR(dbm_to_mw(mw_to_dbm(x)) / x, 1.0, 1e-12) << x;
    EXPECT_NEAR(db_to_linear(linear_to_db(x)) / x, 1.0, 1e-12) << x;
  }
}
