#include <gtest/gtest.h>

#include <cmath>

#include "dasa/config_io.hpp"
#include "dasa/errors.hpp"

using namespace dasa;

namespace {

std::vector<std::string> fields(std::string_view text) {
  try {
    parse_config(text);
  } catch (const InvalidParameter& e) {
    std::vector<std::string> out;
    for (const auto& v : e.violations()) out.push_back(v.field);
    return out;
  }
  return {};
}

}  // namespace

TEST(ConfigIo, EmptyDocumentIsReferenceScenario) {
  const auto doc = parse_config("{}");
  EXPECT_EQ(doc.channel, reference_channel());
  EXPECT_EQ(doc.geometry, reference_geometry());
  EXPECT_EQ(doc.delay, reference_delay());
  EXPECT_TRUE(doc.q1_optimal);
}

TEST(ConfigIo, ParsesAllSections) {
  const auto doc = parse_config(R"({
    "channel": {"alpha": 3.5, "theta_db": 3, "noise_dbm": -100, "p1_mw": 50, "p2_max_mw": 0.05},
    "geometry": {"d_p": 200, "d_s": 30, "radius": 400, "lambda_s": 1e-4},
    "protocol": {"lambda": 0.5, "q1": 0.2, "q2": 0.7, "m": 4, "p2_mw": 0.02},
    "delay_constraint": {"d_max": "inf"}
  })");
  EXPECT_EQ(doc.channel.alpha, 3.5);
  EXPECT_NEAR(doc.channel.theta, std::pow(10.0, 0.3), 1e-12);
  EXPECT_NEAR(doc.channel.noise_mw, 1e-10, 1e-22);
  EXPECT_EQ(doc.geometry.d_p, 200.0);
  EXPECT_EQ(doc.protocol.m.value(), 4u);
  EXPECT_FALSE(doc.q1_optimal);
  EXPECT_EQ(doc.protocol.q1, 0.2);
  EXPECT_TRUE(std::isinf(doc.delay.d_max));
}

TEST(ConfigIo, InfiniteThresholdAndOptimalQ1) {
  const auto doc = parse_config(R"({"protocol": {"m": "inf", "q1": "optimal"}})");
  EXPECT_TRUE(doc.protocol.m.is_infinite());
  EXPECT_TRUE(doc.q1_optimal);
}

TEST(ConfigIo, UnknownKeysRejected) {
  const auto f = fields(R"({"channel": {"alpah": 4}, "extra": {}})");
  EXPECT_NE(std::find(f.begin(), f.end(), "channel.alpah"), f.end());
  EXPECT_NE(std::find(f.begin(), f.end(), "extra"), f.end());
}

TEST(ConfigIo, WrongTypesRejected) {
  EXPECT_FALSE(fields(R"({"protocol": {"lambda": "fast"}})").empty());
  EXPECT_FALSE(fields(R"({"protocol": {"m": 2.5}})").empty());
  EXPECT_FALSE(fields("not json").empty());
}

TEST(ConfigIo, OverridesDottedAndBare) {
  auto doc = parse_config("{}");
  apply_override(doc, "protocol.q2=0.25");
  apply_override(doc, "lambda=0.7");
  apply_override(doc, "m=inf");
  apply_override(doc, "q1=0.1");
  EXPECT_EQ(doc.protocol.q2, 0.25);
  EXPECT_EQ(doc.protocol.lambda, 0.7);
  EXPECT_TRUE(doc.protocol.m.is_infinite());
  EXPECT_FALSE(doc.q1_optimal);
  apply_override(doc, "q1=optimal");
  EXPECT_TRUE(doc.q1_optimal);
  apply_override(doc, "m=5");
  EXPECT_EQ(doc.protocol.m.value(), 5u);
  EXPECT_THROW(apply_override(doc, "nope=1"), InvalidParameter);
  EXPECT_THROW(apply_override(doc, "lambda"), InvalidParameter);
}

TEST(ConfigIo, JsonRoundTrip) {
  auto doc = parse_config(R"({"protocol": {"m": 3, "q2": 0.4}, "delay_constraint": {"d_max": "inf"}})");
  const auto again = parse_config(to_json(doc));
  EXPECT_EQ(again.channel, doc.channel);
  EXPECT_EQ(again.geometry, doc.geometry);
  EXPECT_EQ(again.protocol, doc.protocol);
  EXPECT_EQ(again.q1_optimal, doc.q1_optimal);
  EXPECT_TRUE(std::isinf(again.delay.d_max));
}
