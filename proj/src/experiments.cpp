#include "pamlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "pamlab/chaos.hpp"
#include "pamlab/convergence.hpp"
#include "pamlab/csv.hpp"
#include "pamlab/initial_measure.hpp"
#include "pamlab/kernels.hpp"
#include "pamlab/oracles.hpp"
#include "pamlab/rng.hpp"
#include "pamlab/simplex.hpp"
#include "pamlab/tail_bounds.hpp"
#include "pamlab/variance.hpp"

namespace pamlab {

namespace {

namespace fs = std::filesystem;

TemporalParam make_temporal(const ExperimentConfig& cfg) {
  return TemporalParam{cfg.hurst0};
}

SpatialParam make_spatial(const ExperimentConfig& cfg) {
  if (cfg.family == "regular") return SpatialParam::regular(cfg.dim, cfg.alpha);
  return SpatialParam::rough(cfg.hurst);
}

ParamWindow make_window(const ExperimentConfig& cfg) {
  ParamWindow w;
  w.dim = cfg.dim;
  if (cfg.family == "regular") {
    w.family = NoiseFamily::Regular;
    w.a = cfg.window_a > 0.0 ? cfg.window_a : 0.4;
    w.b = cfg.window_b > 0.0 ? cfg.window_b : 0.6;
  } else {
    w.family = NoiseFamily::Rough;
    w.a = cfg.window_a > 0.0 ? cfg.window_a : 0.3;
    w.b = cfg.window_b > 0.0 ? cfg.window_b : 0.45;
  }
  return w;
}

void require_valid(const ExperimentConfig& cfg) {
  const AdmissibilityReport rep =
      validate_params(make_spatial(cfg), make_temporal(cfg));
  if (!rep.admissible)
    throw domain_error("inadmissible parameters: violated " + rep.failed);
}

InitialMeasure make_u0(const ExperimentConfig& cfg, int dim) {
  return InitialMeasure::from_text(cfg.u0_text, dim);
}

TensorConfig make_tensor_config(const ExperimentConfig& cfg) {
  TensorConfig tc;
  tc.k_max = cfg.k_max;
  tc.nodes_per_dim = cfg.tensor_nodes;
  return tc;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

void add_check(ExperimentOutcome& out, const std::string& name, bool pass,
               double value, double threshold) {
  out.checks.push_back({name, pass, value, threshold});
  if (!pass) out.exit_code = 1;
}

void write_summary(const ExperimentConfig& cfg, const ExperimentOutcome& out) {
  nlohmann::ordered_json j;
  j["command"] = cfg.command;
  j["exit_code"] = out.exit_code;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : out.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"value", c.value},
                      {"threshold", c.threshold}});
  }
  j["checks"] = checks;
  j["csv"] = out.csv_files;
  nlohmann::ordered_json vals = nlohmann::ordered_json::object();
  for (const auto& [k, v] : out.printed) vals[k] = v;
  j["values"] = vals;
  std::ofstream f(out_path(cfg, "summary.json"));
  f << j.dump(2) << "\n";
}

// ----- constants ----------------------------------------------------------

ExperimentOutcome run_constants(const ExperimentConfig& cfg) {
  require_valid(cfg);
  const TemporalParam temporal = make_temporal(cfg);
  ExperimentOutcome out;
  const TemporalConstants tc = temporal_constants(temporal, cfg.t);
  out.printed.emplace_back("c_H0", tc.c_h0);
  out.printed.emplace_back("alpha_H0", tc.alpha_h0);
  out.printed.emplace_back("Gamma_0t", tc.gamma_0t);
  if (cfg.family == "regular") {
    const RieszConstants rc = riesz_constants(cfg.dim, cfg.alpha, cfg.t);
    out.printed.emplace_back("K_bound", rc.k_bound);
    out.printed.emplace_back("K_numeric", rc.k_numeric);
    out.printed.emplace_back("C1", rc.c1);
    out.printed.emplace_back("k_alpha_t", rc.k_alpha_t);
    out.printed.emplace_back("ell", std::nan(""));
  } else {
    out.printed.emplace_back("c_H", fractional_spectral_constant(cfg.hurst));
    out.printed.emplace_back("ell", rough_lower_edge(temporal));
  }
  const std::string cols[] = {"name", "value"};
  CsvWriter csv(out_path(cfg, "constants.csv"), cols);
  for (const auto& [k, v] : out.printed) {
    const double row[] = {v};
    csv.row_prefixed(k, row);
  }
  out.csv_files.push_back(csv.path());
  return out;
}

// ----- kernel-check -------------------------------------------------------

ExperimentOutcome run_kernel_check(const ExperimentConfig& cfg) {
  require_valid(cfg);
  const InitialMeasure u0 = make_u0(cfg, 1);
  const int n_draws = std::min(cfg.draws, 500);
  NormalSampler rng(cfg.seed);
  ExperimentOutcome out;
  const std::string cols[] = {"draw", "order", "abs_error"};
  CsvWriter csv(out_path(cfg, "kernel_check.csv"), cols);
  double max_err = 0.0;
  for (int i = 0; i < n_draws; ++i) {
    const int n = 1 + (i % 2);
    double times[2], xis[2];
    times[0] = cfg.t * (0.1 + 0.8 * rng.uniform01());
    if (n == 2) {
      times[1] = times[0];
      while (std::abs(times[1] - times[0]) < 0.02 * cfg.t)
        times[1] = cfg.t * (0.1 + 0.8 * rng.uniform01());
      if (times[0] > times[1]) std::swap(times[0], times[1]);
    }
    for (int j = 0; j < n; ++j) xis[j] = 4.0 * rng.uniform01() - 2.0;
    const double x[1] = {2.0 * rng.uniform01() - 1.0};
    const std::complex<double> closed = fourier_chaos_kernel_value(
        cfg.t, x, std::span<const double>(times, n),
        std::span<const double>(xis, n), u0);
    const std::complex<double> brute = oracle::fourier_kernel_bruteforce(
        cfg.t, x[0], std::span<const double>(times, n),
        std::span<const double>(xis, n), u0);
    const double err = std::abs(closed - brute);
    max_err = std::max(max_err, err);
    const double row[] = {static_cast<double>(i), static_cast<double>(n), err};
    csv.row(row);
  }
  out.csv_files.push_back(csv.path());
  add_check(out, "fourier_kernel_identity_max_abs_error", max_err < 1e-6,
            max_err, 1e-6);
  return out;
}

// ----- simplex-check ------------------------------------------------------

ExperimentOutcome run_simplex_check(const ExperimentConfig& cfg) {
  const int n = cfg.order;
  const double h = cfg.h_exp;
  ExperimentOutcome out;
  const double closed = simplex_power_integral(n, h, cfg.t);
  const McEstimate mc = mc_simplex_oracle(
      n,
      [&](std::span<const double> ts) {
        double prod = ts[0];
        for (std::size_t i = 1; i < ts.size(); ++i)
          prod *= ts[i] - ts[i - 1];
        prod *= cfg.t - ts.back();
        return std::pow(prod, h);
      },
      cfg.t, cfg.samples, cfg.seed);
  const double z = std::abs(closed - mc.value) / mc.stderr_;
  const std::string cols[] = {"n", "h", "t", "closed", "mc", "stderr", "z"};
  CsvWriter csv(out_path(cfg, "simplex_check.csv"), cols);
  const double row[] = {static_cast<double>(n), h, cfg.t,
                        closed,                mc.value, mc.stderr_, z};
  csv.row(row);
  out.csv_files.push_back(csv.path());
  out.printed.emplace_back("closed", closed);
  out.printed.emplace_back("mc", mc.value);
  out.printed.emplace_back("z", z);
  add_check(out, "simplex_gamma_within_3_sigma", z <= 3.0, z, 3.0);
  if (mc.heavy_tail_warning)
    add_check(out, "mc_heavy_tail_warning_absent", false, 1.0, 0.0);
  return out;
}

// ----- variance -----------------------------------------------------------

ExperimentOutcome run_variance(const ExperimentConfig& cfg) {
  require_valid(cfg);
  const TemporalParam temporal = make_temporal(cfg);
  const SpatialParam param = make_spatial(cfg);
  const InitialMeasure u0 = make_u0(cfg, 1);
  const FrequencyTimeGrid grid = build_grid(cfg.grid);
  const double x[1] = {cfg.x};
  ChaosEvaluator ev(grid, temporal, cfg.t, x, u0, make_tensor_config(cfg));
  ExperimentOutcome out;
  const std::string cols[] = {"k",       "mc_variance", "mc_stderr",
                              "quad_variance", "grid_variance", "z"};
  CsvWriter csv(out_path(cfg, "variance.csv"), cols);
  const int k_hi = std::min(cfg.order, 2);
  for (int k = 1; k <= k_hi; ++k) {
    ev.tensor(k);
    ev.weights(param);
    std::vector<double> vals(cfg.draws);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < cfg.draws; ++i) {
      const NoiseDraw draw = sample_noise(grid, derive_seed(cfg.seed, i));
      vals[i] = ev.integral(k, param, draw);
    }
    double s2 = 0.0, s4 = 0.0;
    for (double v : vals) {
      s2 += v * v;
      s4 += v * v * v * v;
    }
    const double mc_var = s2 / cfg.draws;
    const double se =
        std::sqrt(std::max(0.0, s4 / cfg.draws - mc_var * mc_var) / cfg.draws);
    const double quad = chaos_variance(k, param, temporal, cfg.t, x, u0);
    const double gridv = ev.grid_variance(k, param);
    const double z = std::abs(mc_var - quad) / se;
    const double row[] = {static_cast<double>(k), mc_var, se, quad, gridv, z};
    csv.row(row);
    add_check(out, "variance_k" + std::to_string(k) + "_within_3_sigma",
              z <= 3.0, z, 3.0);
  }
  out.csv_files.push_back(csv.path());
  return out;
}

// ----- simulate -----------------------------------------------------------

ExperimentOutcome run_simulate(const ExperimentConfig& cfg) {
  require_valid(cfg);
  const TemporalParam temporal = make_temporal(cfg);
  const SpatialParam param = make_spatial(cfg);
  const InitialMeasure u0 = make_u0(cfg, 1);
  const FrequencyTimeGrid grid = build_grid(cfg.grid);
  const double x[1] = {cfg.x};
  ChaosEvaluator ev(grid, temporal, cfg.t, x, u0, make_tensor_config(cfg));
  for (int k = 1; k <= cfg.k_max; ++k) ev.tensor(k);
  ev.weights(param);

  const bool use_cache = !cfg.cache_path.empty();
  if (use_cache) fs::create_directories(cfg.cache_path);
  std::vector<double> vals(cfg.draws);
#pragma omp parallel for schedule(dynamic) if (!use_cache)
  for (int i = 0; i < cfg.draws; ++i) {
    const NoiseDraw draw =
        use_cache ? cached_noise(grid, derive_seed(cfg.seed, i), cfg.cache_path)
                  : sample_noise(grid, derive_seed(cfg.seed, i));
    vals[i] = ev.truncated_solution(cfg.k_max, param, draw);
  }
  ExperimentOutcome out;
  const std::string cols[] = {"draw", "value"};
  CsvWriter csv(out_path(cfg, "simulate.csv"), cols);
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < cfg.draws; ++i) {
    const double row[] = {static_cast<double>(i), vals[i]};
    csv.row(row);
    sum += vals[i];
    sumsq += vals[i] * vals[i];
  }
  out.csv_files.push_back(csv.path());
  const double mean = sum / cfg.draws;
  const double se = std::sqrt(
      std::max(0.0, sumsq / cfg.draws - mean * mean) / cfg.draws);
  const double w = ev.mean_field();
  out.printed.emplace_back("mean", mean);
  out.printed.emplace_back("stderr", se);
  out.printed.emplace_back("w", w);
  add_check(out, "sample_mean_matches_w_3_sigma",
            std::abs(mean - w) <= 3.0 * se, std::abs(mean - w), 3.0 * se);
  return out;
}

// ----- converge -----------------------------------------------------------

ExperimentOutcome run_converge(const ExperimentConfig& cfg) {
  require_valid(cfg);
  const TemporalParam temporal = make_temporal(cfg);
  const bool regular = cfg.family == "regular";
  const double pstar = cfg.pstar > 0.0 ? cfg.pstar : (regular ? 0.5 : 0.3);
  const double step0 = cfg.step0 > 0.0 ? cfg.step0 : (regular ? 0.2 : 0.1);
  const SpatialParam target = regular ? SpatialParam::regular(1, pstar)
                                      : SpatialParam::rough(pstar);
  std::vector<SpatialParam> seq;
  for (int n = 0; n < cfg.n_steps; ++n) {
    const double p = pstar + step0 * std::pow(2.0, -n);
    seq.push_back(regular ? SpatialParam::regular(1, p)
                          : SpatialParam::rough(p));
  }
  const InitialMeasure u0 = make_u0(cfg, 1);
  const double x[1] = {cfg.x};
  ExperimentOutcome out;

  const ContinuityCurve curve =
      l2_continuity_curve(1, cfg.t, x, u0, temporal, target, seq);
  {
    const std::string cols[] = {"n", "param", "Q"};
    CsvWriter csv(out_path(cfg, "continuity.csv"), cols);
    for (std::size_t n = 0; n < curve.q.size(); ++n) {
      const double p = regular ? curve.params[n].alpha : curve.params[n].hurst;
      const double row[] = {static_cast<double>(n), p, curve.q[n]};
      csv.row(row);
    }
    out.csv_files.push_back(csv.path());
  }
  bool decreasing = true;
  for (std::size_t n = 0; n + 1 < curve.q.size(); ++n)
    decreasing = decreasing && curve.q[n + 1] < curve.q[n];
  add_check(out, "continuity_Q_strictly_decreasing", decreasing,
            decreasing ? 1.0 : 0.0, 1.0);
  const double q_ratio = curve.q.back() / curve.q.front();
  add_check(out, "continuity_Q_last_over_Q0", q_ratio < 0.05, q_ratio, 0.05);

  const FrequencyTimeGrid grid = build_grid(cfg.grid);
  const CoupledDistanceResult coupled =
      coupled_distance(cfg.k_max, seq, target, temporal, grid, cfg.t, x, u0,
                       cfg.draws, cfg.seed, make_tensor_config(cfg));
  {
    const std::string cols[] = {"n",  "param",        "mean_sq_distance",
                                "stderr", "ks_statistic", "ks_critical"};
    CsvWriter csv(out_path(cfg, "coupled.csv"), cols);
    for (std::size_t n = 0; n < coupled.steps.size(); ++n) {
      const CoupledStep& s = coupled.steps[n];
      const double p = regular ? s.param.alpha : s.param.hurst;
      const double row[] = {static_cast<double>(n), p,
                            s.mean_sq_distance,     s.stderr_,
                            s.ks_statistic,         s.ks_critical};
      csv.row(row);
    }
    out.csv_files.push_back(csv.path());
  }
  bool halving = true;
  for (std::size_t n = 0; n + 1 < coupled.steps.size(); ++n)
    halving = halving && coupled.steps[n].mean_sq_distance >=
                             2.0 * coupled.steps[n + 1].mean_sq_distance;
  add_check(out, "coupled_distance_halves_at_factor_2", halving,
            halving ? 1.0 : 0.0, 1.0);
  const CoupledStep& last = coupled.steps.back();
  add_check(out, "coupled_final_ks_below_critical",
            last.ks_statistic < last.ks_critical, last.ks_statistic,
            last.ks_critical);
  return out;
}

// ----- holder -------------------------------------------------------------

ExperimentOutcome run_holder(const ExperimentConfig& cfg) {
  const TemporalParam temporal = make_temporal(cfg);
  const ParamWindow window = make_window(cfg);
  require_admissible(window, temporal);
  const InitialMeasure u0 = make_u0(cfg, 1);
  const FrequencyTimeGrid grid = build_grid(cfg.grid);

  HolderConfig hc;
  hc.n_params = cfg.n_params;
  hc.n_draws = cfg.draws;
  hc.base_seed = cfg.seed;
  hc.t_base = cfg.t;
  hc.x_base = cfg.x;
  hc.ladder = cfg.ladder;
  hc.tensor = make_tensor_config(cfg);

  double time_floor, space_floor;
  if (window.family == NoiseFamily::Regular) {
    time_floor = 0.5 * (1.0 - cfg.beta);
    space_floor = 1.0 - cfg.beta;
  } else {
    const double theta =
        0.5 * (2.0 * temporal.hurst0 * (1.0 - cfg.c0) + window.a - 1.0);
    time_floor = 0.5 * theta;
    space_floor = theta;
  }

  ExperimentOutcome out;
  const std::string sample_cols[] = {"direction", "param", "h", "moment",
                                     "stderr"};
  CsvWriter sample_csv(out_path(cfg, "holder_samples.csv"), sample_cols);
  const std::string fit_cols[] = {"direction", "param", "exponent",
                                  "constant", "inconclusive"};
  CsvWriter fit_csv(out_path(cfg, "holder_fits.csv"), fit_cols);

  for (const IncrementDirection dir :
       {IncrementDirection::Time, IncrementDirection::Space}) {
    const bool is_time = dir == IncrementDirection::Time;
    const HolderFit fit =
        holder_sweep(window, temporal, cfg.moment_p, u0, cfg.t0, cfg.t_max,
                     cfg.box, dir, grid, hc);
    for (const HolderSample& s : fit.samples) {
      const double row[] = {is_time ? 0.0 : 1.0, s.param, s.h, s.moment,
                            s.stderr_};
      sample_csv.row(row);
    }
    const double floor = is_time ? time_floor : space_floor;
    double min_exp = 0.0;
    bool any_inconclusive = false;
    for (std::size_t i = 0; i < fit.fits.size(); ++i) {
      const HolderParamFit& pf = fit.fits[i];
      const double row[] = {is_time ? 0.0 : 1.0, pf.param, pf.exponent,
                            pf.constant, pf.inconclusive ? 1.0 : 0.0};
      fit_csv.row(row);
      if (i == 0 || pf.exponent < min_exp) min_exp = pf.exponent;
      any_inconclusive = any_inconclusive || pf.inconclusive;
    }
    const std::string tag = is_time ? "time" : "space";
    add_check(out, "holder_" + tag + "_exponent_floor",
              min_exp >= 0.9 * floor, min_exp, 0.9 * floor);
    add_check(out, "holder_" + tag + "_constant_spread",
              fit.constant_spread < 10.0, fit.constant_spread, 10.0);
    add_check(out, "holder_" + tag + "_mc_budget_sufficient",
              !any_inconclusive, any_inconclusive ? 1.0 : 0.0, 0.0);
  }
  out.csv_files.push_back(sample_csv.path());
  out.csv_files.push_back(fit_csv.path());
  return out;
}

// ----- tail ---------------------------------------------------------------

ExperimentOutcome run_tail(const ExperimentConfig& cfg) {
  require_valid(cfg);
  const TemporalParam temporal = make_temporal(cfg);
  const ParamWindow window = make_window(cfg);
  require_admissible(window, temporal);
  ExperimentOutcome out;
  const int m0 = min_truncation_order(window, temporal);
  out.printed.emplace_back("m0", m0);
  const int lo = std::max(cfg.tail_m_lo, m0);

  std::vector<double> bounds, terms;
  {
    const std::string cols[] = {"m", "bound", "term", "term_ratio"};
    CsvWriter csv(out_path(cfg, "tail_bounds.csv"), cols);
    for (int m = lo; m <= cfg.tail_m_hi; ++m) {
      const double b = chaos_tail_bound(m, window, temporal, cfg.t);
      const double term = chaos_tail_term(m, window, temporal, cfg.t);
      const double ratio =
          term / chaos_tail_term(m + 1, window, temporal, cfg.t);
      bounds.push_back(b);
      terms.push_back(ratio);
      const double row[] = {static_cast<double>(m), b, term, ratio};
      csv.row(row);
    }
    out.csv_files.push_back(csv.path());
  }
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
    decreasing = decreasing && bounds[i + 1] <= bounds[i];
  add_check(out, "tail_bound_nonincreasing", decreasing,
            decreasing ? 1.0 : 0.0, 1.0);
  bool ratios_grow = true;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    ratios_grow = ratios_grow && terms[i + 1] > terms[i];
  add_check(out, "tail_term_ratios_increasing", ratios_grow,
            ratios_grow ? 1.0 : 0.0, 1.0);

  // Per-term majorants against the discrete model's E|I_k|^2.
  const SpatialParam param = make_spatial(cfg);
  const InitialMeasure u0 = make_u0(cfg, 1);
  const FrequencyTimeGrid grid = build_grid(cfg.grid);
  const double x[1] = {cfg.x};
  ChaosEvaluator ev(grid, temporal, cfg.t, x, u0, make_tensor_config(cfg));
  const std::string cols[] = {"k", "EIk2_mc", "EIk2_grid", "majorant"};
  CsvWriter csv(out_path(cfg, "tail_terms.csv"), cols);
  for (int k = 1; k <= std::min(3, cfg.k_max); ++k) {
    ev.tensor(k);
    ev.weights(param);
    std::vector<double> vals(cfg.draws);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < cfg.draws; ++i) {
      const NoiseDraw draw = sample_noise(grid, derive_seed(cfg.seed, i));
      vals[i] = ev.integral(k, param, draw);
    }
    double s2 = 0.0;
    for (double v : vals) s2 += v * v;
    const double mc = s2 / cfg.draws;
    const double gridv = ev.grid_variance(k, param);
    const double maj = chaos_term_majorant(k, param, temporal, cfg.t,
                                           ev.mean_field_plus());
    const double row[] = {static_cast<double>(k), mc, gridv, maj};
    csv.row(row);
    add_check(out, "term_k" + std::to_string(k) + "_below_majorant",
              mc <= maj && gridv <= maj, mc, maj);
  }
  out.csv_files.push_back(csv.path());
  return out;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  ExperimentOutcome out;
  if (cfg.command == "constants")
    out = run_constants(cfg);
  else if (cfg.command == "kernel-check")
    out = run_kernel_check(cfg);
  else if (cfg.command == "simplex-check")
    out = run_simplex_check(cfg);
  else if (cfg.command == "variance")
    out = run_variance(cfg);
  else if (cfg.command == "simulate")
    out = run_simulate(cfg);
  else if (cfg.command == "converge")
    out = run_converge(cfg);
  else if (cfg.command == "holder")
    out = run_holder(cfg);
  else if (cfg.command == "tail")
    out = run_tail(cfg);
  else
    throw config_error("unknown command '" + cfg.command + "'", 0,
                       "run.command");
  write_summary(cfg, out);
  return out;
}

}  // namespace pamlab
