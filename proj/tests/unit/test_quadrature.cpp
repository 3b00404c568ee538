#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dasa/quadrature.hpp"

using namespace dasa;

TEST(Quadrature, WeightsSumToTwo) {
  for (std::size_t n : {1u, 2u, 5u, 64u, 512u}) {
    const auto& r = quadrature::gauss_legendre(n);
    ASSERT_EQ(r.nodes.size(), n);
    double s = 0.0;
    for (double w : r.weights) s += w;
    EXPECT_NEAR(s, 2.0, 1e-13) << n;
  }
}

TEST(Quadrature, ExactForPolynomials) {
  // n nodes integrate degree 2n - 1 exactly.
  const std::size_t n = 6;
  for (int k = 0; k <= 11; ++k) {
    const double got = quadrature::integrate([k](double x) { return std::pow(x, k); }, -1.0, 1.0, n);
    const double want = k % 2 ? 0.0 : 2.0 / (k + 1);
    EXPECT_NEAR(got, want, 1e-14) << k;
  }
}

TEST(Quadrature, SmoothIntegrands) {
  EXPECT_NEAR(quadrature::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 32),
              2.0, 1e-14);
  EXPECT_NEAR(quadrature::integrate([](double x) { return std::exp(-x * x); }, 0.0, 3.0, 64),
              std::sqrt(std::numbers::pi) / 2.0 * std::erf(3.0), 1e-14);
}

TEST(Quadrature, NodesSymmetric) {
  const auto& r = quadrature::gauss_legendre(9);
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_NEAR(r.nodes[i], -r.nodes[8 - i], 1e-15);
    EXPECT_NEAR(r.weights[i], r.weights[8 - i], 1e-15);
  }
}
