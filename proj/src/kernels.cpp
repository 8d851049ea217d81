#include "pamlab/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "pamlab/quadrature.hpp"

namespace pamlab {

namespace {

constexpr int kMaxOrder = 8;
constexpr int kMaxDim = 3;

double sq_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void check_times(double t, std::span<const double> times) {
  if (times.empty()) throw usage_error("chaos kernel: order must be >= 1");
  if (times.size() > kMaxOrder)
    throw capacity_error("chaos kernel: order too large");
  double prev = 0.0;
  for (double ti : times) {
    if (!(ti > prev && ti < t))
      throw usage_error("chaos kernel: times must satisfy 0 < t1 < ... < t");
    prev = ti;
  }
}

// Gaussian part of the shifted energy integrand in radial form, stable for
// large arguments: exp(-t(r^2+e^2)) * angular average of exp(-2 t r e cos).
double radial_angular_factor(double t, double r, double eta_norm, int dim) {
  const double a = t * (r * r + eta_norm * eta_norm);
  if (dim == 1) {
    // "Angular" set is {-1, +1}.
    return std::exp(-t * (r - eta_norm) * (r - eta_norm)) +
           std::exp(-t * (r + eta_norm) * (r + eta_norm));
  }
  if (dim == 2) {
    const int m = 128;
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      const double th = 2.0 * M_PI * (i + 0.5) / m;
      s += std::exp(-a - 2.0 * t * r * eta_norm * std::cos(th));
    }
    return s * (2.0 * M_PI / m);
  }
  // dim == 3: closed-form polar integral.
  const double b = 2.0 * t * r * eta_norm;
  if (b < 1e-12) return 4.0 * M_PI * std::exp(-a);
  return 2.0 * M_PI *
         (std::exp(-t * (r - eta_norm) * (r - eta_norm)) -
          std::exp(-t * (r + eta_norm) * (r + eta_norm))) /
         b;
}

// int |F G_t|^2 C |xi - eta|^{p} dxi over R^d for p in (-d, 1].
double shifted_energy_radial(double t, double eta_norm, int dim, double p,
                             double coeff) {
  if (!(t > 0.0)) throw domain_error("spectral energy: t must be > 0");
  const double rmax = eta_norm + std::sqrt(43.0 / t);
  auto integrand = [&](double r) {
    return std::pow(r, dim - 1 + p) * radial_angular_factor(t, r, eta_norm, dim);
  };
  // dim==1 has no r^{d-1} factor beyond the weight itself; the formula above
  // already covers it since d-1 = 0.
  const double core = integrate_de(
      [&](double, double da, double) {
        const double rr = da;  // accurate distance to 0
        return std::pow(rr, dim - 1 + p) *
               radial_angular_factor(t, rr, eta_norm, dim);
      },
      0.0, std::min(1.0, rmax));
  double tail = 0.0;
  if (rmax > 1.0) {
    const int panels = std::max(16, static_cast<int>(4.0 * (rmax - 1.0) *
                                                     std::sqrt(t)));
    tail = integrate_gl_panels(integrand, 1.0, rmax, 16, panels);
  }
  return coeff * (core + tail);
}

}  // namespace

double heat_kernel(double t, std::span<const double> x) {
  if (t <= 0.0) return 0.0;
  return std::pow(2.0 * M_PI * t, -0.5 * static_cast<double>(x.size())) *
         std::exp(-0.5 * sq_norm(x) / t);
}

double heat_kernel_1d(double t, double x) {
  const double xv[1] = {x};
  return heat_kernel(t, xv);
}

double fourier_heat_kernel(double t, std::span<const double> xi) {
  if (t < 0.0) return 0.0;
  return std::exp(-0.5 * t * sq_norm(xi));
}

double fourier_heat_kernel_1d(double t, double xi) {
  const double v[1] = {xi};
  return fourier_heat_kernel(t, v);
}

OrderedTimes OrderedTimes::make(double t, std::span<const double> times) {
  if (!(t > 0.0)) throw domain_error("OrderedTimes: t must be > 0");
  check_times(t, times);
  return OrderedTimes{t, {times.begin(), times.end()}};
}

std::complex<double> fourier_chaos_kernel_value(double t,
                                                std::span<const double> x,
                                                std::span<const double> times,
                                                std::span<const double> xis,
                                                const InitialMeasure& u0) {
  const int d = u0.dim();
  const int n = static_cast<int>(times.size());
  if (static_cast<int>(x.size()) != d)
    throw usage_error("fourier_chaos_kernel: x has wrong dimension");
  if (static_cast<int>(xis.size()) != n * d)
    throw usage_error("fourier_chaos_kernel: expected n*d frequencies");
  check_times(t, times);

  std::array<double, kMaxDim> s{};  // running sum of t_j xi_j
  std::array<double, kMaxDim> c{};  // sum of (1 - t_j/t) xi_j
  double log_gauss = 0.0;
  for (int k = 0; k < n; ++k) {
    const double tk = times[k];
    const double tk1 = (k + 1 < n) ? times[k + 1] : t;
    double s2 = 0.0;
    for (int i = 0; i < d; ++i) {
      s[i] += tk * xis[k * d + i];
      c[i] += (1.0 - tk / t) * xis[k * d + i];
      s2 += s[i] * s[i];
    }
    log_gauss -= 0.5 * (tk1 - tk) / (tk * tk1) * s2;
  }
  double phase = 0.0;
  for (int i = 0; i < d; ++i) phase -= s[i] * x[i] / t;
  const std::complex<double> osc = oscillatory_heat_integral(
      u0, t, x, std::span<const double>(c.data(), d));
  return std::exp(log_gauss) * std::polar(1.0, phase) * osc;
}

KernelEval fourier_chaos_kernel(double t, std::span<const double> x,
                                const OrderedTimes& ord,
                                std::span<const double> xis,
                                const InitialMeasure& u0) {
  if (ord.t != t) throw usage_error("fourier_chaos_kernel: t mismatch");
  KernelEval out;
  out.value = fourier_chaos_kernel_value(t, x, ord.times, xis, u0);
  out.order = static_cast<int>(ord.times.size());
  out.t = t;
  out.x.assign(x.begin(), x.end());
  out.xis.assign(xis.begin(), xis.end());
  return out;
}

KernelEval symmetrized_fourier_chaos_kernel(double t,
                                            std::span<const double> x,
                                            std::span<const double> times,
                                            std::span<const double> xis,
                                            const InitialMeasure& u0) {
  const int d = u0.dim();
  const int n = static_cast<int>(times.size());
  if (n < 1 || n > kMaxOrder)
    throw usage_error("symmetrized kernel: bad order");
  if (static_cast<int>(xis.size()) != n * d)
    throw usage_error("symmetrized kernel: expected n*d frequencies");
  std::array<int, kMaxOrder> perm;
  std::iota(perm.begin(), perm.begin() + n, 0);
  std::sort(perm.begin(), perm.begin() + n,
            [&](int a, int b) { return times[a] < times[b]; });
  for (int k = 0; k + 1 < n; ++k)
    if (times[perm[k]] == times[perm[k + 1]])
      throw degenerate_input_error("symmetrized kernel: coincident times");
  std::array<double, kMaxOrder> ts;
  std::array<double, kMaxOrder * kMaxDim> xs;
  for (int k = 0; k < n; ++k) {
    ts[k] = times[perm[k]];
    for (int i = 0; i < d; ++i) xs[k * d + i] = xis[perm[k] * d + i];
  }
  KernelEval out;
  out.value = fourier_chaos_kernel_value(
      t, x, std::span<const double>(ts.data(), n),
      std::span<const double>(xs.data(), n * d), u0);
  out.order = n;
  out.t = t;
  out.x.assign(x.begin(), x.end());
  out.xis.assign(xis.begin(), xis.end());
  return out;
}

double weighted_kernel_energy(double t, std::span<const double> eta, int dim,
                              double alpha) {
  const double lower = std::max(static_cast<double>(dim) - 2.0, 0.0);
  if (!(alpha > lower && alpha < static_cast<double>(dim)))
    throw domain_error("weighted_kernel_energy: need max(d-2,0) < alpha < d");
  if (static_cast<int>(eta.size()) != dim)
    throw usage_error("weighted_kernel_energy: eta has wrong dimension");
  const double value =
      shifted_energy_radial(t, std::sqrt(sq_norm(eta)), dim, -alpha, 1.0);
  const double bound = riesz_constants(dim, alpha, t).k_bound *
                       std::pow(t, -0.5 * (dim - alpha));
  if (!(value <= bound * (1.0 + 1e-9)))
    throw numerical_error("weighted_kernel_energy: bound violated");
  return value;
}

double shifted_spectral_energy(double t, std::span<const double> eta,
                               const SpatialParam& param) {
  if (static_cast<int>(eta.size()) != param.dim)
    throw usage_error("shifted_spectral_energy: eta has wrong dimension");
  const double eta_norm = std::sqrt(sq_norm(eta));
  if (param.family == NoiseFamily::Regular)
    return shifted_energy_radial(t, eta_norm, param.dim, -param.alpha, 1.0);
  return shifted_energy_radial(t, eta_norm, 1, 1.0 - 2.0 * param.hurst,
                               fractional_spectral_constant(param.hurst));
}

}  // namespace pamlab
