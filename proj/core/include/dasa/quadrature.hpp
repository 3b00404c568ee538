#pragma once

#include <cstddef>
#include <vector>

namespace dasa::quadrature {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule by Newton iteration on P_n. Rules are cached
// and shared; the returned reference stays valid for the program lifetime.
const Rule& gauss_legendre(std::size_t n);

// Integral of f over [a, b] with the n-point rule.
template <class F>
double integrate(F&& f, double a, double b, std::size_t n) {
  const Rule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

}  // namespace dasa::quadrature
