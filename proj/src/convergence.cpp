#include "pamlab/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pamlab/kernels.hpp"
#include "pamlab/quadrature.hpp"
#include "pamlab/rng.hpp"
#include "pamlab/variance.hpp"

namespace pamlab {

namespace {

// Per-factor spectral weight as a function of |xi|.
double weight_1d(const SpatialParam& p, double xi_abs) {
  if (p.family == NoiseFamily::Regular)
    return std::pow(xi_abs, -0.5 * p.alpha);
  return std::sqrt(fractional_spectral_constant(p.hurst)) *
         std::pow(xi_abs, 0.5 * (1.0 - 2.0 * p.hurst));
}

// Signed frequency nodes (core + algebraic tail) with plain dxi weights;
// the singular factors are evaluated pointwise at accurate distances.
struct SignedFreqRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

SignedFreqRule signed_freq_rule(int n_side) {
  SignedFreqRule rule;
  const auto de = tanh_sinh_rule(n_side, 0.10);
  for (const DeNode& nd : de) {
    const double xi = nd.dist_a;  // (0,1]
    rule.nodes.push_back(xi);
    rule.weights.push_back(nd.weight);
    rule.nodes.push_back(-xi);
    rule.weights.push_back(nd.weight);
  }
  for (const DeNode& nd : de) {
    const double w = nd.dist_a;
    const double xi = 1.0 / w;
    rule.nodes.push_back(xi);
    rule.weights.push_back(nd.weight / (w * w));
    rule.nodes.push_back(-xi);
    rule.weights.push_back(nd.weight / (w * w));
  }
  return rule;
}

double continuity_q_k1(double t, std::span<const double> x,
                       const InitialMeasure& u0, const SpatialParam& pn,
                       const SpatialParam& ps, const QuadConfig& cfg) {
  // Q = 2 int_0^inf (dw)^2 int_0^t |phi_xi(t1)|^2 dt1 dxi
  const double t_hi = t * (1.0 - 1e-13);
  auto time_energy = [&](double xi) {
    const double xv[1] = {xi};
    return integrate_de_plain(
        [&](double t1) {
          const double tv[1] = {std::clamp(t1, t * 1e-300, t_hi)};
          return std::norm(fourier_chaos_kernel_value(t, x, tv, xv, u0));
        },
        0.0, t, cfg.time_nodes, 0.10);
  };
  auto dw2 = [&](double xi) {
    const double d = weight_1d(pn, xi) - weight_1d(ps, xi);
    return d * d;
  };
  const double core = integrate_de(
      [&](double, double da, double) {
        return dw2(da) * time_energy(da);
      },
      0.0, 1.0, cfg.freq_nodes, 0.10);
  const double tail = integrate_de(
      [&](double, double da, double) {
        const double xi = 1.0 / da;
        return dw2(xi) * time_energy(xi) / (da * da);
      },
      0.0, 1.0, cfg.freq_nodes, 0.10);
  return 2.0 * (core + tail);
}

double continuity_q_k2(double t, std::span<const double> x,
                       const InitialMeasure& u0, const SpatialParam& pn,
                       const SpatialParam& ps, const QuadConfig& cfg) {
  const SignedFreqRule freq = signed_freq_rule(cfg.freq_nodes_k2);
  const int nf = static_cast<int>(freq.nodes.size());
  const GaussRule gl = gauss_legendre(cfg.time_nodes_k2);
  std::vector<double> v(cfg.time_nodes_k2), gw(cfg.time_nodes_k2);
  for (int i = 0; i < cfg.time_nodes_k2; ++i) {
    v[i] = 0.5 * (1.0 + gl.nodes[i]);
    gw[i] = 0.5 * gl.weights[i];
  }
  double total = 0.0;
  // Joint-negation conjugate symmetry: restrict xi_2 > 0 and double.
  for (int i2 = 0; i2 < nf; ++i2) {
    if (freq.nodes[i2] < 0.0) continue;
    for (int i1 = 0; i1 < nf; ++i1) {
      const double xi1 = freq.nodes[i1], xi2 = freq.nodes[i2];
      const double d = weight_1d(pn, std::abs(xi1)) *
                           weight_1d(pn, std::abs(xi2)) -
                       weight_1d(ps, std::abs(xi1)) *
                           weight_1d(ps, std::abs(xi2));
      if (d == 0.0) continue;
      const double wq = 2.0 * d * d * freq.weights[i1] * freq.weights[i2];
      // int over the simplex via t2 = t v2, t1 = t2 v1
      double acc = 0.0;
      for (int b = 0; b < cfg.time_nodes_k2; ++b) {
        const double t2 = t * v[b];
        for (int a = 0; a < cfg.time_nodes_k2; ++a) {
          const double t1 = t2 * v[a];
          const double times[2] = {t1, t2};
          const double xs[2] = {xi1, xi2};
          acc += gw[a] * gw[b] * t * t2 *
                 std::norm(fourier_chaos_kernel_value(t, x, times, xs, u0));
        }
      }
      total += wq * acc;
    }
  }
  return total;
}

}  // namespace

ContinuityCurve l2_continuity_curve(int order, double t,
                                    std::span<const double> x,
                                    const InitialMeasure& u0,
                                    const TemporalParam& temporal,
                                    const SpatialParam& target,
                                    std::span<const SpatialParam> sequence,
                                    const QuadConfig& config) {
  if (order < 1 || order > 2)
    throw capacity_error("l2_continuity_curve: k <= 2 supported");
  if (u0.dim() != 1)
    throw domain_error("l2_continuity_curve: quadrature lane is 1-d");
  require_admissible(target, temporal);
  for (const SpatialParam& p : sequence) require_admissible(p, temporal);

  ContinuityCurve curve;
  curve.order = order;
  curve.target = target;
  for (const SpatialParam& p : sequence) {
    curve.params.push_back(p);
    const double q = (order == 1)
                         ? continuity_q_k1(t, x, u0, p, target, config)
                         : continuity_q_k2(t, x, u0, p, target, config);
    curve.q.push_back(q);
  }
  return curve;
}

CoupledDistanceResult coupled_distance(
    int truncation, std::span<const SpatialParam> sequence,
    const SpatialParam& target, const TemporalParam& temporal,
    const FrequencyTimeGrid& grid, double t, std::span<const double> x,
    const InitialMeasure& u0, int n_seeds, std::uint64_t base_seed,
    const TensorConfig& tensor_config) {
  if (n_seeds < 2) throw usage_error("coupled_distance: need >= 2 seeds");
  ChaosEvaluator ev(grid, temporal, t, x, u0, tensor_config);
  for (int k = 1; k <= truncation; ++k) ev.tensor(k);
  ev.weights(target);
  for (const SpatialParam& p : sequence) ev.weights(p);

  const int np = static_cast<int>(sequence.size());
  std::vector<double> target_vals(n_seeds);
  std::vector<std::vector<double>> seq_vals(np,
                                            std::vector<double>(n_seeds));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n_seeds; ++i) {
    const NoiseDraw draw = sample_noise(grid, derive_seed(base_seed, i));
    target_vals[i] = ev.truncated_solution(truncation, target, draw);
    for (int j = 0; j < np; ++j)
      seq_vals[j][i] = ev.truncated_solution(truncation, sequence[j], draw);
  }

  CoupledDistanceResult result;
  result.truncation = truncation;
  for (int j = 0; j < np; ++j) {
    CoupledStep step;
    step.param = sequence[j];
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n_seeds; ++i) {
      const double d2 = (seq_vals[j][i] - target_vals[i]) *
                        (seq_vals[j][i] - target_vals[i]);
      sum += d2;
      sumsq += d2 * d2;
    }
    const double mean = sum / n_seeds;
    step.mean_sq_distance = mean;
    step.stderr_ =
        std::sqrt(std::max(0.0, sumsq / n_seeds - mean * mean) / n_seeds);
    step.ks_statistic = ks_statistic(seq_vals[j], target_vals);
    step.ks_critical = ks_critical_value(seq_vals[j].size(),
                                         target_vals.size());
    result.steps.push_back(step);
  }
  return result;
}

HolderFit holder_sweep(const ParamWindow& window,
                       const TemporalParam& temporal, int moment_order,
                       const InitialMeasure& u0, double t0, double t_max,
                       double box_half_width, IncrementDirection direction,
                       const FrequencyTimeGrid& grid,
                       const HolderConfig& config) {
  require_admissible(window, temporal);
  if (moment_order < 2)
    throw usage_error("holder_sweep: moment order must be >= 2");
  const double h_max = *std::max_element(config.ladder.begin(),
                                         config.ladder.end());
  if (direction == IncrementDirection::Time) {
    if (!(config.t_base >= t0 && config.t_base + h_max <= t_max))
      throw usage_error("holder_sweep: time ladder leaves [t0, T]");
  } else {
    if (!(std::abs(config.x_base) + h_max <= box_half_width))
      throw usage_error("holder_sweep: space ladder leaves the box");
  }

  std::vector<double> params(config.n_params);
  for (int i = 0; i < config.n_params; ++i)
    params[i] = window.a + (window.b - window.a) * i /
                            std::max(1, config.n_params - 1);
  auto make_param = [&](double value) {
    return window.family == NoiseFamily::Regular
               ? SpatialParam::regular(window.dim, value)
               : SpatialParam::rough(value);
  };

  // Points: base first, then one per ladder entry.
  const int n_points = 1 + static_cast<int>(config.ladder.size());
  std::vector<std::vector<std::vector<double>>> values(
      n_points, std::vector<std::vector<double>>(
                    config.n_params, std::vector<double>(config.n_draws)));

  std::vector<NoiseDraw> draws(config.n_draws);
  for (int i = 0; i < config.n_draws; ++i)
    draws[i] = sample_noise(grid, derive_seed(config.base_seed, i));

  for (int pt = 0; pt < n_points; ++pt) {
    double t_pt = config.t_base, x_pt = config.x_base;
    if (pt > 0) {
      if (direction == IncrementDirection::Time)
        t_pt += config.ladder[pt - 1];
      else
        x_pt += config.ladder[pt - 1];
    }
    const double xv[1] = {x_pt};
    ChaosEvaluator ev(grid, temporal, t_pt, xv, u0, config.tensor);
    for (int k = 1; k <= config.tensor.k_max; ++k) ev.tensor(k);
    for (double p : params) ev.weights(make_param(p));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < config.n_draws; ++i)
      for (int j = 0; j < config.n_params; ++j)
        values[pt][j][i] = ev.truncated_solution(
            config.tensor.k_max, make_param(params[j]), draws[i]);
  }

  HolderFit fit;
  fit.direction = direction;
  fit.moment_order = moment_order;
  const double p_ord = static_cast<double>(moment_order);
  double min_const = 0.0, max_const = 0.0;
  for (int j = 0; j < config.n_params; ++j) {
    std::vector<double> hs, moments;
    bool inconclusive = false;
    for (std::size_t li = 0; li < config.ladder.size(); ++li) {
      double sum = 0.0, sumsq = 0.0;
      for (int i = 0; i < config.n_draws; ++i) {
        const double diff =
            std::abs(values[li + 1][j][i] - values[0][j][i]);
        const double dp = std::pow(diff, p_ord);
        sum += dp;
        sumsq += dp * dp;
      }
      const double mean = sum / config.n_draws;
      const double se = std::sqrt(
          std::max(0.0, sumsq / config.n_draws - mean * mean) /
          config.n_draws);
      if (se > 0.2 * mean) inconclusive = true;
      HolderSample sample;
      sample.param = params[j];
      sample.h = config.ladder[li];
      sample.moment = std::pow(mean, 1.0 / p_ord);
      sample.stderr_ = se;
      fit.samples.push_back(sample);
      hs.push_back(sample.h);
      moments.push_back(sample.moment);
    }
    const LogLogFit ll = fit_log_log(hs, moments);
    HolderParamFit pf;
    pf.param = params[j];
    pf.exponent = ll.slope;
    pf.constant = std::exp(ll.intercept);
    pf.inconclusive = inconclusive;
    fit.fits.push_back(pf);
    if (j == 0 || pf.constant < min_const) min_const = pf.constant;
    if (j == 0 || pf.constant > max_const) max_const = pf.constant;
    fit.sup_constant = std::max(fit.sup_constant, pf.constant);
  }
  fit.constant_spread = (min_const > 0.0) ? max_const / min_const
                                          : std::numeric_limits<double>::infinity();
  return fit;
}

LhProbeResult lh_ratio_probe(int order, const TemporalParam& temporal,
                             double t,
                             std::span<const LhTestFunction> family,
                             int cells_per_dim) {
  if (order < 1 || order > 2)
    throw capacity_error("lh_ratio_probe: k <= 2 supported");
  const int n = cells_per_dim;
  const double dt = t / n;
  std::vector<double> gram(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      gram[a * n + b] = gamma0_cell_mass(a * dt, (a + 1) * dt, b * dt,
                                         (b + 1) * dt, temporal.hurst0);
  const double inv_h0 = 1.0 / temporal.hurst0;

  LhProbeResult out;
  for (const LhTestFunction& fn : family) {
    double lhs = 0.0, lp = 0.0;
    if (order == 1) {
      std::vector<double> vals(n);
      for (int a = 0; a < n; ++a) {
        const double m[1] = {(a + 0.5) * dt};
        vals[a] = fn.value(m);
      }
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
          lhs += gram[a * n + b] * vals[a] * vals[b];
        lp += std::pow(vals[a], inv_h0) * dt;
      }
    } else {
      std::vector<double> vals(n * n, 0.0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double m[2] = {(a + 0.5) * dt, (b + 0.5) * dt};
          if (m[0] < m[1]) vals[a * n + b] = fn.value(m);
        }
      // (Gram x Gram) quadratic form: tmp_cb = sum_a Gram_ac vals_ab,
      // then lhs = sum_{c,e} (sum_b tmp_cb Gram_be) vals_ce.
      std::vector<double> tmp(n * n, 0.0);
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
          const double g = gram[a * n + c];
          for (int b = 0; b < n; ++b) tmp[c * n + b] += g * vals[a * n + b];
        }
      lhs = 0.0;
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          double s = 0.0;
          for (int b = 0; b < n; ++b) s += tmp[c * n + b] * gram[b * n + e];
          lhs += s * vals[c * n + e];
        }
      for (int a = 0; a < n * n; ++a)
        lp += std::pow(vals[a], inv_h0) * dt * dt;
    }
    const double rhs_env = std::pow(lp, 2.0 * temporal.hurst0);
    const double ratio = (rhs_env > 0.0) ? lhs / rhs_env : 0.0;
    out.names.push_back(fn.name);
    out.ratios.push_back(ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  return out;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    // advance both ECDFs through ties before comparing
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / sa.size() -
                             static_cast<double>(j) / sb.size()));
  }
  return d;
}

double ks_critical_value(std::size_t n, std::size_t m, double level) {
  const double c = std::sqrt(-0.5 * std::log(0.5 * level));
  return c * std::sqrt(static_cast<double>(n + m) /
                       (static_cast<double>(n) * static_cast<double>(m)));
}

LogLogFit fit_log_log(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw usage_error("fit_log_log: need matching samples, >= 2 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  LogLogFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace pamlab
