#include "pamlab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pamlab/kernels.hpp"
#include "pamlab/quadrature.hpp"

namespace pamlab::oracle {

namespace {

// Spatial extent beyond which every Gaussian factor is below 1e-18.
double box_reach(double t) { return 6.5 * std::sqrt(std::max(t, 1e-12)); }

double measure_extent(const InitialMeasure& u0) {
  double ext = 0.0;
  for (const auto& a : u0.atoms())
    ext = std::max(ext, std::abs(a.location[0]));
  for (const auto& g : u0.gaussians())
    ext = std::max(ext, std::abs(g.mean[0]) + 6.5 * std::sqrt(g.sigma2));
  return ext;
}

}  // namespace

double chaos_kernel_physical(double t, double x, std::span<const double> times,
                             std::span<const double> ys,
                             const InitialMeasure& u0) {
  if (u0.dim() != 1) throw usage_error("oracle: d = 1 only");
  const int n = static_cast<int>(times.size());
  if (static_cast<int>(ys.size()) != n)
    throw usage_error("oracle: times and points must match");
  double value = heat_kernel_1d(t - times[n - 1], x - ys[n - 1]);
  for (int k = n - 1; k >= 1; --k)
    value *= heat_kernel_1d(times[k] - times[k - 1], ys[k] - ys[k - 1]);
  const double y0[1] = {ys[0]};
  return value * heat_evolve(u0, times[0], y0).w;
}

std::complex<double> fourier_kernel_bruteforce(double t, double x,
                                               std::span<const double> times,
                                               std::span<const double> xis,
                                               const InitialMeasure& u0,
                                               int nodes_per_panel) {
  const int n = static_cast<int>(times.size());
  if (n < 1 || n > 2) throw usage_error("oracle: n <= 2 only");
  if (static_cast<int>(xis.size()) != n)
    throw usage_error("oracle: expected n frequencies");

  const double reach = box_reach(t) + measure_extent(u0);
  const double lo = x - reach, hi = x + reach;
  double xi_max = 1.0;
  for (double xi : xis) xi_max = std::max(xi_max, std::abs(xi));
  const int panels =
      std::max(8, static_cast<int>((hi - lo) * xi_max / 2.5) + 1);

  const GaussRule gl = gauss_legendre(nodes_per_panel);
  std::vector<double> nodes, weights;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + (hi - lo) * p / panels;
    const double b = lo + (hi - lo) * (p + 1) / panels;
    for (int i = 0; i < nodes_per_panel; ++i) {
      nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i]);
      weights.push_back(0.5 * (b - a) * gl.weights[i]);
    }
  }
  const int nn = static_cast<int>(nodes.size());

  std::complex<double> sum(0.0, 0.0);
  if (n == 1) {
    for (int i = 0; i < nn; ++i) {
      const double ys[1] = {nodes[i]};
      const double f = chaos_kernel_physical(t, x, times, ys, u0);
      sum += weights[i] * f * std::polar(1.0, -xis[0] * nodes[i]);
    }
    return sum;
  }
  for (int i = 0; i < nn; ++i) {
    for (int j = 0; j < nn; ++j) {
      const double ys[2] = {nodes[i], nodes[j]};
      const double f = chaos_kernel_physical(t, x, times, ys, u0);
      if (f != 0.0)
        sum += weights[i] * weights[j] * f *
               std::polar(1.0, -xis[0] * nodes[i] - xis[1] * nodes[j]);
    }
  }
  return sum;
}

}  // namespace pamlab::oracle
