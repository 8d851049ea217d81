#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "pamlab/errors.hpp"

namespace pamlab {

// Gauss-Legendre rule on (-1, 1). Nodes by Newton iteration on P_n; cheap
// enough (O(n^2)) that rules are rebuilt per quadrature call, which keeps
// every routine reentrant.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
  if (n < 1) throw usage_error("gauss_legendre: n must be >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

template <typename F>
double integrate_gl(F&& f, double a, double b, int n) {
  const GaussRule rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

template <typename F>
double integrate_gl_panels(F&& f, double a, double b, int n, int panels) {
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double pa = a + (b - a) * p / panels;
    const double pb = a + (b - a) * (p + 1) / panels;
    sum += integrate_gl(f, pa, pb, n);
  }
  return sum;
}

// tanh-sinh (double-exponential) rule on the unit interval. Nodes carry the
// distances to both endpoints so integrands with endpoint singularities can
// be evaluated without catastrophic rounding near 0 or 1.
struct DeNode {
  double dist_a;  // distance to the left endpoint, in (0, 1/2]
  double dist_b;  // distance to the right endpoint
  double weight;
};

inline std::vector<DeNode> tanh_sinh_rule(int n_side = 45, double h = 0.09) {
  std::vector<DeNode> nodes;
  nodes.reserve(2 * n_side + 1);
  for (int i = -n_side; i <= n_side; ++i) {
    const double u = 0.5 * M_PI * std::sinh(i * h);
    const double da = 1.0 / (1.0 + std::exp(-2.0 * u));  // (1+tanh u)/2
    const double db = 1.0 / (1.0 + std::exp(2.0 * u));
    const double ch = std::cosh(u);
    const double w = 0.25 * M_PI * h * std::cosh(i * h) / (ch * ch);
    if (w < 1e-290) continue;
    nodes.push_back({da, db, w});
  }
  return nodes;
}

// f is called as f(y, dist_to_a, dist_to_b) with distances in target scale.
template <typename F>
double integrate_de(F&& f, double a, double b, int n_side = 45,
                    double h = 0.09) {
  const auto rule = tanh_sinh_rule(n_side, h);
  const double len = b - a;
  double sum = 0.0;
  for (const DeNode& nd : rule) {
    const double da = len * nd.dist_a;
    const double db = len * nd.dist_b;
    const double y = (nd.dist_a <= nd.dist_b) ? a + da : b - db;
    sum += nd.weight * f(y, da, db);
  }
  return len * sum;
}

template <typename F>
double integrate_de_plain(F&& f, double a, double b, int n_side = 45,
                          double h = 0.09) {
  return integrate_de([&](double y, double, double) { return f(y); }, a, b,
                      n_side, h);
}

}  // namespace pamlab
