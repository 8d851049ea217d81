#include "pamlab/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pamlab/quadrature.hpp"

namespace pamlab {

namespace {

double stable_sinc(double x) {
  if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// Exact mass of the power weight C |z|^p over a 1D cell that does not
// straddle the origin.
double power_cell_mass(double lo, double hi, double p, double coeff) {
  double a = std::min(std::abs(lo), std::abs(hi));
  double b = std::max(std::abs(lo), std::abs(hi));
  if (lo < 0.0 && hi > 0.0)
    throw usage_error("power_cell_mass: cell straddles the origin");
  const double q = p + 1.0;
  return coeff * (std::pow(b, q) - std::pow(a, q)) / q;
}

int auto_nodes(double tau_max, double t) {
  const int m = static_cast<int>(0.5 * tau_max * t) + 12;
  return std::clamp(m, 16, 96);
}

std::uint64_t tensor_entries(int n_cells, int order) {
  std::uint64_t n = 1;
  for (int i = 0; i < order; ++i) n *= static_cast<std::uint64_t>(n_cells);
  return n;
}

}  // namespace

double spectral_weight(const SpatialParam& param,
                       const TemporalParam& temporal, double tau,
                       std::span<const double> xi) {
  if (tau == 0.0) throw domain_error("spectral_weight: tau must be nonzero");
  double xi2 = 0.0;
  for (double v : xi) xi2 += v * v;
  if (xi2 == 0.0) throw domain_error("spectral_weight: xi must be nonzero");
  const double xin = std::sqrt(xi2);
  const double temporal_part =
      std::sqrt(fractional_spectral_constant(temporal.hurst0)) *
      std::pow(std::abs(tau), 0.5 * (1.0 - 2.0 * temporal.hurst0));
  if (param.family == NoiseFamily::Regular)
    return temporal_part * std::pow(xin, -0.5 * param.alpha);
  return temporal_part * std::sqrt(fractional_spectral_constant(param.hurst)) *
         std::pow(xin, 0.5 * (1.0 - 2.0 * param.hurst));
}

std::vector<double> cell_weights(const FrequencyTimeGrid& grid,
                                 const SpatialParam& param,
                                 const TemporalParam& temporal) {
  if (grid.dim() != 1)
    throw domain_error("cell_weights: spectral simulation lane is 1-d");
  const TemporalConstants tc = temporal_constants(temporal, 1.0);
  double xi_p, xi_coeff;
  if (param.family == NoiseFamily::Regular) {
    if (!(param.alpha > 0.0 && param.alpha < 1.0))
      throw domain_error("cell_weights: regular d=1 needs alpha in (0,1)");
    xi_p = -param.alpha;
    xi_coeff = 1.0;
  } else {
    xi_p = 1.0 - 2.0 * param.hurst;
    xi_coeff = fractional_spectral_constant(param.hurst);
  }
  const int n_tau = grid.config().n_tau;
  const int n_xi = grid.config().n_xi;
  std::vector<double> tau_mass(n_tau), xi_mass(n_xi);
  for (int i = 0; i < n_tau; ++i) {
    const double c = -grid.config().tau_max + (i + 0.5) * grid.tau_width();
    tau_mass[i] = power_cell_mass(c - 0.5 * grid.tau_width(),
                                  c + 0.5 * grid.tau_width(),
                                  1.0 - 2.0 * temporal.hurst0, tc.c_h0);
  }
  for (int i = 0; i < n_xi; ++i) {
    const double c = -grid.config().xi_max + (i + 0.5) * grid.xi_width();
    xi_mass[i] = power_cell_mass(c - 0.5 * grid.xi_width(),
                                 c + 0.5 * grid.xi_width(), xi_p, xi_coeff);
  }
  std::vector<double> w(grid.n_cells());
  const double measure = grid.cell_measure();
  for (int c = 0; c < grid.n_cells(); ++c)
    w[c] = std::sqrt(tau_mass[grid.tau_index(c)] * xi_mass[grid.xi_flat(c)] /
                     measure);
  return w;
}

const std::complex<double>& ChaosTensor::at(std::span<const int> cells) const {
  if (static_cast<int>(cells.size()) != order)
    throw usage_error("ChaosTensor::at: wrong arity");
  std::size_t idx = 0;
  for (int c : cells) idx = idx * n_cells + static_cast<std::size_t>(c);
  return values[idx];
}

ChaosTensor build_chaos_tensor(const FrequencyTimeGrid& grid, int order,
                               double t, std::span<const double> x,
                               const InitialMeasure& u0,
                               const TensorConfig& config) {
  if (grid.dim() != 1 || u0.dim() != 1)
    throw domain_error("build_chaos_tensor: simulation lane is 1-d");
  if (order < 1 || order > config.k_max)
    throw capacity_error("build_chaos_tensor: order exceeds K_max = " +
                         std::to_string(config.k_max));
  if (!(t > 0.0)) throw domain_error("build_chaos_tensor: t must be > 0");
  const int nc = grid.n_cells();
  const std::uint64_t entries = tensor_entries(nc, order);
  if (entries * 16.0 > static_cast<double>(grid.config().max_tensor_bytes))
    throw capacity_error("build_chaos_tensor: cells^k exceeds memory budget");

  ChaosTensor tensor;
  tensor.order = order;
  tensor.n_cells = nc;
  tensor.t = t;
  tensor.values.assign(entries, {0.0, 0.0});

  const int k = order;
  const int n_tau = grid.config().n_tau;
  const int n_xi = grid.config().n_xi;
  const double dtau = grid.tau_width();
  const double tau0 = -grid.config().tau_max + 0.5 * dtau;
  const int m = config.nodes_per_dim > 0
                    ? config.nodes_per_dim
                    : auto_nodes(grid.config().tau_max, t);
  const GaussRule gl = gauss_legendre(m);
  std::vector<double> v(m), gw(m);
  for (int i = 0; i < m; ++i) {
    v[i] = 0.5 * (1.0 + gl.nodes[i]);
    gw[i] = 0.5 * gl.weights[i];
  }

  // Canonical xi-tuples: process one of each +/- pair, mirror the other.
  std::vector<std::uint32_t> canonical;
  {
    std::uint64_t total = tensor_entries(n_xi, k);
    for (std::uint64_t f = 0; f < total; ++f) {
      std::uint64_t g = f, neg = 0, stride = 1;
      for (int j = 0; j < k; ++j) {
        neg += (n_xi - 1 - (g % n_xi)) * stride;
        g /= n_xi;
        stride *= n_xi;
      }
      if (f <= neg) canonical.push_back(static_cast<std::uint32_t>(f));
    }
  }

  const std::uint64_t m_pow_k = tensor_entries(m, k);
  const std::uint64_t ntau_pow_k = tensor_entries(n_tau, k);

#pragma omp parallel if (config.parallel)
  {
    std::vector<std::complex<double>> a_buf(m_pow_k);
    std::vector<std::complex<double>> b_prev, b_next;
    std::vector<double> times(k), xis(k);
    std::vector<int> xi_idx(k);

#pragma omp for schedule(dynamic)
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(canonical.size());
         ++ci) {
      const std::uint64_t xi_tuple = canonical[ci];
      {
        std::uint64_t g = xi_tuple;
        // Decode with slot k-1 fastest so tuple order matches tensor layout.
        for (int j = k - 1; j >= 0; --j) {
          xi_idx[j] = static_cast<int>(g % n_xi);
          g /= n_xi;
        }
      }
      for (int j = 0; j < k; ++j)
        xis[j] = -grid.config().xi_max + (xi_idx[j] + 0.5) * grid.xi_width();

      // Stage 0: kernel values times quadrature weight on the Duffy cube,
      // a_1 fastest. times chain: t_j = t_{j+1} v_{a_j}, t_{k+1} = t.
      for (std::uint64_t suffix = 0; suffix < m_pow_k / m; ++suffix) {
        double t_next = t;  // t_{j+1} while walking j = k..2
        // Jacobian factors t_{j+1} for j = 2..k (the j = 1 factor t_2 is
        // applied inside the a_1 loop); empty product when k == 1.
        double jac_suffix = (k >= 2) ? t : 1.0;
        {
          std::uint64_t g = suffix;
          // suffix encodes (a_2..a_k) with a_2 fastest.
          double chain[8];
          int idx[8];
          for (int j = 2; j <= k; ++j) {
            idx[j] = static_cast<int>(g % m);
            g /= m;
          }
          for (int j = k; j >= 2; --j) {
            chain[j] = t_next * v[idx[j]];
            if (j > 2) jac_suffix *= chain[j];
            t_next = chain[j];
          }
          for (int j = 2; j <= k; ++j) times[j - 1] = chain[j];
        }
        const double t2 = (k == 1) ? t : times[1];
        double wsuffix = jac_suffix;
        {
          std::uint64_t g = suffix;
          for (int j = 2; j <= k; ++j) {
            wsuffix *= gw[g % m];
            g /= m;
          }
        }
        for (int a1 = 0; a1 < m; ++a1) {
          times[0] = t2 * v[a1];
          const double wq = wsuffix * gw[a1] * t2;
          const std::complex<double> phi = fourier_chaos_kernel_value(
              t, x, std::span<const double>(times.data(), k),
              std::span<const double>(xis.data(), k), u0);
          a_buf[suffix * m + a1] = wq * phi;
        }
      }

      // Stages 1..k: contract a_j against the tau axis. After stage j the
      // buffer holds (i_1..i_j; a_{j+1}..a_k) with i_1 fastest.
      b_prev.assign(a_buf.begin(), a_buf.end());
      std::uint64_t block = 1;  // N_tau^{j-1}
      for (int j = 1; j <= k; ++j) {
        const std::uint64_t n_suffix = tensor_entries(m, k - j);
        b_next.assign(block * n_tau * n_suffix, {0.0, 0.0});
        for (std::uint64_t suffix = 0; suffix < n_suffix; ++suffix) {
          // Recover t_j for each a_j given the suffix times.
          double t_next = t;
          {
            std::uint64_t g = suffix;
            int idx[8];
            for (int jj = j + 1; jj <= k; ++jj) {
              idx[jj] = static_cast<int>(g % m);
              g /= m;
            }
            for (int jj = k; jj >= j + 1; --jj) t_next *= v[idx[jj]];
          }
          for (int aj = 0; aj < m; ++aj) {
            const double tj = t_next * v[aj];
            const double corr =
                config.tau_cell_average ? stable_sinc(0.5 * dtau * tj) : 1.0;
            std::complex<double> phase =
                std::polar(corr, -tau0 * tj);
            const std::complex<double> step = std::polar(1.0, -dtau * tj);
            const std::complex<double>* src =
                &b_prev[(suffix * m + aj) * block];
            for (int i = 0; i < n_tau; ++i) {
              std::complex<double>* dst =
                  &b_next[(suffix * n_tau + i) * block];
              if (block == 1) {
                dst[0] += phase * src[0];
              } else {
                for (std::uint64_t b = 0; b < block; ++b)
                  dst[b] += phase * src[b];
              }
              phase *= step;
            }
          }
        }
        b_prev.swap(b_next);
        block *= n_tau;
      }

      // Scatter into the tensor (and the mirrored block).
      for (std::uint64_t ti = 0; ti < ntau_pow_k; ++ti) {
        std::uint64_t g = ti;
        std::uint64_t idx = 0, idx_neg = 0;
        // b_prev index has i_1 fastest; tensor index has slot k fastest.
        for (int j = 0; j < k; ++j) {
          const int i_tau = static_cast<int>(g % n_tau);
          g /= n_tau;
          const int cell = i_tau * n_xi + xi_idx[j];
          idx = idx * nc + cell;
          idx_neg = idx_neg * nc + grid.negated(cell);
        }
        const std::complex<double> val = b_prev[ti];
        tensor.values[idx] = val;
        tensor.values[idx_neg] = std::conj(val);
      }
    }
  }
  double sumsq = 0.0;
  for (const auto& v : tensor.values) sumsq += std::norm(v);
  tensor.rms = std::sqrt(sumsq / static_cast<double>(entries));
  return tensor;
}

std::complex<double> time_fourier_of_kernel(double t, std::span<const double> x,
                                            std::span<const double> taus,
                                            std::span<const double> xis,
                                            const InitialMeasure& u0,
                                            const TensorConfig& config) {
  const int k = static_cast<int>(taus.size());
  if (k < 1) throw usage_error("time_fourier_of_kernel: order must be >= 1");
  if (k > config.k_max)
    throw capacity_error("time_fourier_of_kernel: order exceeds K_max = " +
                         std::to_string(config.k_max));
  if (static_cast<int>(xis.size()) != k * u0.dim())
    throw usage_error("time_fourier_of_kernel: expected k*d frequencies");
  double tau_scale = 1.0;
  for (double tau : taus) tau_scale = std::max(tau_scale, std::abs(tau));
  const int m = config.nodes_per_dim > 0 ? config.nodes_per_dim
                                         : auto_nodes(2.0 * tau_scale, t);
  const GaussRule gl = gauss_legendre(m);
  std::vector<double> v(m), gw(m);
  for (int i = 0; i < m; ++i) {
    v[i] = 0.5 * (1.0 + gl.nodes[i]);
    gw[i] = 0.5 * gl.weights[i];
  }
  const std::uint64_t total = tensor_entries(m, k);
  std::vector<double> times(k);
  std::complex<double> sum(0.0, 0.0);
  for (std::uint64_t q = 0; q < total; ++q) {
    std::uint64_t g = q;
    int idx[8];
    for (int j = 0; j < k; ++j) {  // a_1 fastest
      idx[j] = static_cast<int>(g % m);
      g /= m;
    }
    double weight = 1.0;
    double t_next = t;
    for (int j = k; j >= 1; --j) {
      weight *= gw[idx[j - 1]] * t_next;
      times[j - 1] = t_next * v[idx[j - 1]];
      t_next = times[j - 1];
    }
    double phase = 0.0;
    for (int j = 0; j < k; ++j) phase -= taus[j] * times[j];
    sum += weight * std::polar(1.0, phase) *
           fourier_chaos_kernel_value(t, x, times, xis, u0);
  }
  return sum;
}

namespace {

// Pair-distinct contraction of the tensor against per-cell values.
std::complex<double> contract_distinct(const ChaosTensor& tensor,
                                       const FrequencyTimeGrid& grid,
                                       std::span<const std::complex<double>> v,
                                       bool parallel) {
  const int nc = tensor.n_cells;
  const auto* tv = tensor.values.data();
  if (tensor.order == 1) {
    std::complex<double> s(0.0, 0.0);
    for (int c = 0; c < nc; ++c) s += tv[c] * v[c];
    return s;
  }
  if (tensor.order == 2) {
    std::complex<double> full(0.0, 0.0);
    for (int c1 = 0; c1 < nc; ++c1) {
      std::complex<double> row(0.0, 0.0);
      const auto* r = tv + static_cast<std::size_t>(c1) * nc;
      for (int c2 = 0; c2 < nc; ++c2) row += r[c2] * v[c2];
      full += v[c1] * row;
    }
    std::complex<double> diag(0.0, 0.0);
    for (int c = 0; c < nc; ++c) {
      const int nb = grid.negated(c);
      const auto* r = tv + static_cast<std::size_t>(c) * nc;
      diag += r[c] * v[c] * v[c] + r[nb] * v[c] * v[nb];
    }
    return full - diag;
  }
  // order == 3
  const std::size_t nc2 = static_cast<std::size_t>(nc) * nc;
  const int chunks = 64;
  std::vector<std::complex<double>> partial(chunks, {0.0, 0.0});
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int chunk = 0; chunk < chunks; ++chunk) {
    const int lo = static_cast<int>(static_cast<std::int64_t>(nc) * chunk /
                                    chunks);
    const int hi = static_cast<int>(static_cast<std::int64_t>(nc) *
                                    (chunk + 1) / chunks);
    std::complex<double> acc(0.0, 0.0);
    for (int c1 = lo; c1 < hi; ++c1) {
      std::complex<double> mid(0.0, 0.0);
      for (int c2 = 0; c2 < nc; ++c2) {
        const auto* r = tv + static_cast<std::size_t>(c1) * nc2 +
                        static_cast<std::size_t>(c2) * nc;
        std::complex<double> row(0.0, 0.0);
        for (int c3 = 0; c3 < nc; ++c3) row += r[c3] * v[c3];
        mid += v[c2] * row;
      }
      acc += v[c1] * mid;
    }
    partial[chunk] = acc;
  }
  std::complex<double> full(0.0, 0.0);
  for (const auto& p : partial) full += p;

  std::complex<double> n12(0.0, 0.0), n13(0.0, 0.0), n23(0.0, 0.0),
      n123(0.0, 0.0);
  for (int c = 0; c < nc; ++c) {
    const int nb = grid.negated(c);
    const std::complex<double> vc2 = v[c] * v[c];
    const std::complex<double> vcn = v[c] * v[nb];
    // positions (1,2): tuples (c,c,e) and (c,neg c,e)
    {
      const auto* r1 = tv + static_cast<std::size_t>(c) * nc2 +
                       static_cast<std::size_t>(c) * nc;
      const auto* r2 = tv + static_cast<std::size_t>(c) * nc2 +
                       static_cast<std::size_t>(nb) * nc;
      std::complex<double> s1(0.0, 0.0), s2(0.0, 0.0);
      for (int e = 0; e < nc; ++e) {
        s1 += r1[e] * v[e];
        s2 += r2[e] * v[e];
      }
      n12 += vc2 * s1 + vcn * s2;
    }
    // positions (1,3): tuples (c,e,c) and (c,e,neg c)
    {
      std::complex<double> s1(0.0, 0.0), s2(0.0, 0.0);
      const auto* base = tv + static_cast<std::size_t>(c) * nc2;
      for (int e = 0; e < nc; ++e) {
        s1 += base[static_cast<std::size_t>(e) * nc + c] * v[e];
        s2 += base[static_cast<std::size_t>(e) * nc + nb] * v[e];
      }
      n13 += vc2 * s1 + vcn * s2;
    }
    // positions (2,3): tuples (e,c,c) and (e,c,neg c)
    {
      std::complex<double> s1(0.0, 0.0), s2(0.0, 0.0);
      for (int e = 0; e < nc; ++e) {
        const auto* base = tv + static_cast<std::size_t>(e) * nc2 +
                           static_cast<std::size_t>(c) * nc;
        s1 += base[c] * v[e];
        s2 += base[nb] * v[e];
      }
      n23 += vc2 * s1 + vcn * s2;
    }
    // all three in the same pair
    const int pairc[2] = {c, nb};
    for (int b : pairc)
      for (int e : pairc)
        n123 += tv[static_cast<std::size_t>(c) * nc2 +
                   static_cast<std::size_t>(b) * nc + e] *
                v[c] * v[b] * v[e];
  }
  return full - n12 - n13 - n23 + 2.0 * n123;
}

// Symmetrized |T~|^2 sum against cell masses, pair-distinct, times k!.
double variance_distinct(const ChaosTensor& tensor,
                         const FrequencyTimeGrid& grid,
                         std::span<const double> q, bool parallel) {
  const int nc = tensor.n_cells;
  const auto* tv = tensor.values.data();
  if (tensor.order == 1) {
    double s = 0.0;
    for (int c = 0; c < nc; ++c) s += std::norm(tv[c]) * q[c];
    return s;
  }
  if (tensor.order == 2) {
    double full = 0.0;
    for (int c1 = 0; c1 < nc; ++c1)
      for (int c2 = 0; c2 < nc; ++c2) {
        const std::complex<double> sym =
            0.5 * (tv[static_cast<std::size_t>(c1) * nc + c2] +
                   tv[static_cast<std::size_t>(c2) * nc + c1]);
        full += std::norm(sym) * q[c1] * q[c2];
      }
    double diag = 0.0;
    for (int c = 0; c < nc; ++c) {
      const int nb = grid.negated(c);
      diag += std::norm(tv[static_cast<std::size_t>(c) * nc + c]) * q[c] * q[c];
      const std::complex<double> sym =
          0.5 * (tv[static_cast<std::size_t>(c) * nc + nb] +
                 tv[static_cast<std::size_t>(nb) * nc + c]);
      diag += std::norm(sym) * q[c] * q[nb];
    }
    return 2.0 * (full - diag);
  }
  const std::size_t nc2 = static_cast<std::size_t>(nc) * nc;
  auto sym_at = [&](int a, int b, int c) {
    return (tv[a * nc2 + static_cast<std::size_t>(b) * nc + c] +
            tv[a * nc2 + static_cast<std::size_t>(c) * nc + b] +
            tv[b * nc2 + static_cast<std::size_t>(a) * nc + c] +
            tv[b * nc2 + static_cast<std::size_t>(c) * nc + a] +
            tv[c * nc2 + static_cast<std::size_t>(a) * nc + b] +
            tv[c * nc2 + static_cast<std::size_t>(b) * nc + a]) /
           6.0;
  };
  const int chunks = 64;
  std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int chunk = 0; chunk < chunks; ++chunk) {
    const int lo = static_cast<int>(static_cast<std::int64_t>(nc) * chunk /
                                    chunks);
    const int hi = static_cast<int>(static_cast<std::int64_t>(nc) *
                                    (chunk + 1) / chunks);
    double acc = 0.0;
    for (int c1 = lo; c1 < hi; ++c1)
      for (int c2 = 0; c2 < nc; ++c2)
        for (int c3 = 0; c3 < nc; ++c3)
          acc += std::norm(sym_at(c1, c2, c3)) * q[c1] * q[c2] * q[c3];
    partial[chunk] = acc;
  }
  double full = 0.0;
  for (double p : partial) full += p;

  double n_same = 0.0, n_all = 0.0;
  for (int c = 0; c < nc; ++c) {
    const int nb = grid.negated(c);
    for (int e = 0; e < nc; ++e) {
      n_same += (std::norm(sym_at(c, c, e)) +
                 std::norm(sym_at(c, nb, e))) *
                q[c] * q[c] * q[e];
    }
    const int pairc[2] = {c, nb};
    for (int b : pairc)
      for (int e : pairc)
        n_all += std::norm(sym_at(c, b, e)) * q[c] * q[c] * q[c];
  }
  return 6.0 * (full - 3.0 * n_same + 2.0 * n_all);
}

}  // namespace

ChaosEvaluator::ChaosEvaluator(const FrequencyTimeGrid& grid,
                               const TemporalParam& temporal, double t,
                               std::span<const double> x,
                               const InitialMeasure& u0,
                               const TensorConfig& config)
    : grid_(grid),
      temporal_(temporal),
      t_(t),
      x_(x.begin(), x.end()),
      u0_(u0),
      config_(config) {
  if (grid_.dim() != 1 || u0_.dim() != 1)
    throw domain_error("ChaosEvaluator: simulation lane is 1-d");
  const HeatEvolution he = heat_evolve(u0_, t_, x_);
  w_ = he.w;
  w_plus_ = he.w_plus;
}

const ChaosTensor& ChaosEvaluator::tensor(int order) {
  auto it = tensors_.find(order);
  if (it == tensors_.end()) {
    it = tensors_
             .emplace(order,
                      build_chaos_tensor(grid_, order, t_, x_, u0_, config_))
             .first;
  }
  return it->second;
}

const std::vector<double>& ChaosEvaluator::weights(const SpatialParam& param) {
  require_admissible(param, temporal_);
  const double key_value =
      param.family == NoiseFamily::Regular ? param.alpha : param.hurst;
  const auto key = std::make_pair(static_cast<int>(param.family), key_value);
  auto it = weight_cache_.find(key);
  if (it == weight_cache_.end())
    it = weight_cache_.emplace(key, cell_weights(grid_, param, temporal_))
             .first;
  return it->second;
}

double ChaosEvaluator::integral(int order, const SpatialParam& param,
                                const NoiseDraw& draw) {
  if (draw.grid_hash != grid_.config_hash() ||
      static_cast<int>(draw.values.size()) != grid_.n_cells())
    throw usage_error("ChaosEvaluator: draw does not match grid");
  const ChaosTensor& ten = tensor(order);
  const std::vector<double>& w = weights(param);
  std::vector<std::complex<double>> v(grid_.n_cells());
  double v_sq = 0.0;
  for (int c = 0; c < grid_.n_cells(); ++c) {
    v[c] = w[c] * draw.values[c];
    v_sq += std::norm(v[c]);
  }
  const std::complex<double> s =
      contract_distinct(ten, grid_, v, config_.parallel);
  // Residue scale: |s| where it dominates, otherwise a fraction of the
  // natural magnitude of the sum (draws can land near a zero crossing).
  const double proxy = ten.rms * std::pow(v_sq, 0.5 * order);
  const double scale = std::max(std::abs(s), 0.01 * proxy) + 1e-300;
  if (std::abs(s.imag()) > 1e-8 * scale)
    throw numerical_error(
        "chaos_integral: imaginary residue above tolerance (Hermitian "
        "symmetry violated)");
  return s.real();
}

double ChaosEvaluator::truncated_solution(int m, const SpatialParam& param,
                                          const NoiseDraw& draw) {
  if (m < 0 || m > config_.k_max)
    throw capacity_error("truncated_solution: m exceeds K_max");
  double u = w_;
  for (int k = 1; k <= m; ++k) u += integral(k, param, draw);
  return u;
}

double ChaosEvaluator::grid_variance(int order, const SpatialParam& param) {
  const ChaosTensor& ten = tensor(order);
  const std::vector<double>& w = weights(param);
  std::vector<double> q(grid_.n_cells());
  for (int c = 0; c < grid_.n_cells(); ++c)
    q[c] = w[c] * w[c] * grid_.cell_measure();
  return variance_distinct(ten, grid_, q, config_.parallel);
}

ChaosEvaluation chaos_integral(int order, const SpatialParam& param,
                               const TemporalParam& temporal,
                               const FrequencyTimeGrid& grid,
                               const NoiseDraw& draw, double t,
                               std::span<const double> x,
                               const InitialMeasure& u0,
                               const TensorConfig& config) {
  ChaosEvaluator ev(grid, temporal, t, x, u0, config);
  ChaosEvaluation out;
  out.order = order;
  out.t = t;
  out.x.assign(x.begin(), x.end());
  out.value = ev.integral(order, param, draw);
  out.param = param;
  out.grid_hash = grid.config_hash();
  return out;
}

double truncated_solution(int m, const SpatialParam& param,
                          const TemporalParam& temporal,
                          const FrequencyTimeGrid& grid, const NoiseDraw& draw,
                          double t, std::span<const double> x,
                          const InitialMeasure& u0,
                          const TensorConfig& config) {
  ChaosEvaluator ev(grid, temporal, t, x, u0, config);
  return ev.truncated_solution(m, param, draw);
}

}  // namespace pamlab
