#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dasa/errors.hpp"
#include "dasa/lambert_w.hpp"

using namespace dasa;

TEST(LambertW, SpecialValues) {
  EXPECT_EQ(lambert_w0(0.0), 0.0);
  EXPECT_NEAR(lambert_w0(std::numbers::e), 1.0, 1e-15);
  EXPECT_NEAR(lambert_w0(-1.0 / std::numbers::e), -1.0, 1e-7);
  EXPECT_NEAR(lambert_w0(3.21 * std::exp(3.21)), 3.21, 1e-10);
}

TEST(LambertW, RoundTrip) {
  for (int i = 0; i <= 1100; ++i) {
    const double w = -1.0 + i * 0.01;
    const double x = w * std::exp(w);
    EXPECT_NEAR(lambert_w0(x), w, w < -0.999 ? 1e-7 : 1e-10) << w;
  }
}

TEST(LambertW, InverseIdentity) {
  for (double x : {1e-300, 1e-12, 0.1, 1.0, 50.0, 1e6, 1e300}) {
    const double w = lambert_w0(x);
    EXPECT_NEAR(w * std::exp(w) / x, 1.0, 1e-13) << x;
  }
}

TEST(LambertW, DomainError) {
  EXPECT_THROW(lambert_w0(-0.5), DomainError);
  EXPECT_THROW(lambert_w0(std::nan("")), DomainError);
}

TEST(LambertW, LogArgument) {
  for (double lx : {-5.0, 0.0, 3.0, 700.0, 1e4, 1e8}) {
    const double w = lambert_w0_exp(lx);
    EXPECT_NEAR(w + std::log(w), lx, 1e-14 * std::max(1.0, std::abs(lx))) << lx;
    if (lx < 700.0) {
      EXPECT_NEAR(w, lambert_w0(std::exp(lx)), 1e-12 * std::max(1.0, w));
    }
  }
}
