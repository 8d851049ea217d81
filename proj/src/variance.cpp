#include "pamlab/variance.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "pamlab/kernels.hpp"
#include "pamlab/quadrature.hpp"

namespace pamlab {

namespace {

// Frequency nodes and weights for int_R h(xi) rho(xi) dxi with the spectral
// density rho folded into the weights; nodes on (0,inf), caller supplies h
// per sign. Core (0,1] by tanh-sinh (absorbs |xi|^p at 0), tail by xi = 1/w.
struct FreqRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // include rho(node)
};

FreqRule make_freq_rule(const SpatialParam& param, int n_side) {
  double p, coeff;
  if (param.family == NoiseFamily::Regular) {
    if (param.dim != 1)
      throw domain_error("chaos_variance: regular family supported for d=1");
    p = -param.alpha;
    coeff = 1.0;
  } else {
    p = 1.0 - 2.0 * param.hurst;
    coeff = fractional_spectral_constant(param.hurst);
  }
  FreqRule rule;
  const auto de = tanh_sinh_rule(n_side, 0.10);
  for (const DeNode& nd : de) {
    // core: xi in (0,1], distance to 0 is dist_a
    const double xi = nd.dist_a;
    rule.nodes.push_back(xi);
    rule.weights.push_back(nd.weight * coeff * std::pow(xi, p));
  }
  for (const DeNode& nd : de) {
    // tail: xi = 1/w, w in (0,1); dw weight picks up w^{-2}
    const double w = nd.dist_a;
    const double xi = 1.0 / w;
    rule.nodes.push_back(xi);
    rule.weights.push_back(nd.weight * coeff * std::pow(xi, p) / (w * w));
  }
  return rule;
}

}  // namespace

double gamma0_cell_mass(double a1, double a2, double b1, double b2,
                        double hurst0) {
  const double h2 = 2.0 * hurst0;
  auto v = [&](double r, double s) { return std::pow(std::abs(r - s), h2); };
  return -0.5 * (v(a2, b2) - v(a2, b1) - v(a1, b2) + v(a1, b1));
}

namespace {

double variance_k1(const SpatialParam& param, const TemporalParam& temporal,
                   double t, std::span<const double> x,
                   const InitialMeasure& u0, const VarianceConfig& cfg) {
  const TemporalConstants tc = temporal_constants(temporal, t);
  const FreqRule freq = make_freq_rule(param, cfg.freq_nodes);
  const int nf = static_cast<int>(freq.nodes.size());

  // Keeps quadrature nodes strictly inside (0, t); tanh-sinh abscissae can
  // round onto the endpoint at double precision.
  const double t_hi = t * (1.0 - 1e-13);
  auto clamp_time = [&](double s) { return std::clamp(s, t * 1e-300, t_hi); };

  // Phi(r,s) = int p(r,xi) conj(p(s,xi)) rho(xi) dxi over R; the two signs
  // of xi are complex conjugates for a real measure, so twice the real part
  // of the positive half suffices.
  auto phi = [&](double r, double s) {
    r = clamp_time(r);
    s = clamp_time(s);
    double acc = 0.0;
    for (int i = 0; i < nf; ++i) {
      const double xi = freq.nodes[i];
      const double tr[1] = {r}, ts[1] = {s}, xv[1] = {xi};
      const std::complex<double> pr =
          fourier_chaos_kernel_value(t, x, tr, xv, u0);
      const std::complex<double> ps =
          fourier_chaos_kernel_value(t, x, ts, xv, u0);
      acc += freq.weights[i] * (pr * std::conj(ps)).real();
    }
    return 2.0 * acc;
  };

  // V = alpha_{H0} int_0^t u^{2H0-2} theta(u) du,
  // theta(u) = int_0^{t-u} 2 Re Phi(s+u, s) ds (diagonal-shift form).
  auto theta = [&](double u) {
    if (t - u <= 0.0) return 0.0;
    return integrate_de_plain([&](double s) { return phi(s + u, s); }, 0.0,
                              t - u, cfg.time_nodes, 0.10);
  };
  const double v = integrate_de(
      [&](double, double da, double) {
        const double uu = da;  // accurate distance to u = 0
        return std::pow(uu, 2.0 * temporal.hurst0 - 2.0) * theta(uu);
      },
      0.0, t, cfg.time_nodes, 0.10);
  // Factor 2: the two order regions r > s and r < s contribute equally
  // (Phi is real and symmetric for a real measure).
  return 2.0 * tc.alpha_h0 * v;
}

// Small dense Cholesky; the gamma_0 cell-mass matrix is a Gram matrix.
std::vector<double> cholesky(std::vector<double> a, int n) {
  double trace = 0.0;
  for (int i = 0; i < n; ++i) trace += a[i * n + i];
  const double jitter = 1e-13 * trace / n;
  for (int i = 0; i < n; ++i) a[i * n + i] += jitter;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      const double ljk = a[j * n + k];
      for (int i = j; i < n; ++i) a[i * n + j] -= a[i * n + k] * ljk;
    }
    if (a[j * n + j] <= 0.0)
      throw numerical_error("chaos_variance: covariance matrix not PSD");
    const double d = std::sqrt(a[j * n + j]);
    for (int i = j; i < n; ++i) a[i * n + j] /= d;
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) a[i * n + j] = 0.0;
  return a;
}

double variance_k2(const SpatialParam& param, const TemporalParam& temporal,
                   double t, std::span<const double> x,
                   const InitialMeasure& u0, const VarianceConfig& cfg) {
  const int n = cfg.cells_k2;
  const double dt = t / n;
  // Exact gamma_0 masses between time cells, factored once.
  std::vector<double> gram(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      gram[a * n + b] = gamma0_cell_mass(a * dt, (a + 1) * dt, b * dt,
                                         (b + 1) * dt, temporal.hurst0);
  const std::vector<double> chol = cholesky(gram, n);

  std::vector<double> mid(n);
  for (int a = 0; a < n; ++a) mid[a] = (a + 0.5) * dt;

  const FreqRule freq = make_freq_rule(param, cfg.freq_nodes_k2);
  const int nf = static_cast<int>(freq.nodes.size());

  // Sorted-kernel value on midpoint pairs; diagonal cells use a symmetric
  // in-cell representative since coincident times are degenerate.
  auto sym_eval = [&](int a, int b, double xi1,
                      double xi2) -> std::complex<double> {
    double t1 = mid[a], t2 = mid[b];
    double f1 = xi1, f2 = xi2;
    if (a == b) {
      t1 = mid[a] - dt / 6.0;
      t2 = mid[a] + dt / 6.0;
      const double times[2] = {t1, t2};
      const double x1[2] = {f1, f2}, x2[2] = {f2, f1};
      return 0.5 * (fourier_chaos_kernel_value(t, x, times, x1, u0) +
                    fourier_chaos_kernel_value(t, x, times, x2, u0));
    }
    if (t1 > t2) {
      std::swap(t1, t2);
      std::swap(f1, f2);
    }
    const double times[2] = {t1, t2};
    const double xs[2] = {f1, f2};
    return fourier_chaos_kernel_value(t, x, times, xs, u0);
  };

  // V2 = (1/2) sum_q W_q || L^T P(q) L ||_F^2 over xi pairs, exploiting the
  // conjugate symmetry between opposite quadrants.
  const std::int64_t n_pairs = static_cast<std::int64_t>(nf) * (2 * nf);
  std::vector<double> partial(n_pairs, 0.0);
#pragma omp parallel if (cfg.parallel)
  {
    std::vector<std::complex<double>> pmat(n * n), tmp(n * n);
#pragma omp for schedule(dynamic)
    for (std::int64_t q = 0; q < n_pairs; ++q) {
      const int i1 = static_cast<int>(q / (2 * nf));
      const int i2r = static_cast<int>(q % (2 * nf));
      const int i2 = i2r / 2;
      const double sign2 = (i2r % 2 == 0) ? 1.0 : -1.0;
      const double xi1 = freq.nodes[i1];
      const double xi2 = sign2 * freq.nodes[i2];
      const double wq = freq.weights[i1] * freq.weights[i2];

      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          pmat[a * n + b] = sym_eval(a, b, xi1, xi2);
      // tmp = L^T * P ; Y = tmp * L  (L lower triangular, row-major)
      for (int i = 0; i < n; ++i)
        for (int b = 0; b < n; ++b) {
          std::complex<double> s(0.0, 0.0);
          for (int a = i; a < n; ++a) s += chol[a * n + i] * pmat[a * n + b];
          tmp[i * n + b] = s;
        }
      double frob = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          std::complex<double> s(0.0, 0.0);
          for (int b = j; b < n; ++b) s += tmp[i * n + b] * chol[b * n + j];
          frob += std::norm(s);
        }
      // factor 2: quadrants (xi1,xi2) and (-xi1,-xi2) contribute equally
      partial[q] = 2.0 * wq * frob;
    }
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return 0.5 * total;
}

}  // namespace

double chaos_variance(int order, const SpatialParam& param,
                      const TemporalParam& temporal, double t,
                      std::span<const double> x, const InitialMeasure& u0,
                      const VarianceConfig& config) {
  if (!(t > 0.0)) throw domain_error("chaos_variance: t must be > 0");
  if (u0.dim() != 1 || param.dim != 1)
    throw domain_error("chaos_variance: quadrature lane is 1-d");
  require_admissible(param, temporal);
  if (order == 1) return variance_k1(param, temporal, t, x, u0, config);
  if (order == 2) return variance_k2(param, temporal, t, x, u0, config);
  throw capacity_error("chaos_variance: only k <= 2 supported");
}

}  // namespace pamlab
