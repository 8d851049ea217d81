#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pamlab/chaos.hpp"
#include "pamlab/initial_measure.hpp"
#include "pamlab/params.hpp"

namespace pamlab {

struct QuadConfig {
  int time_nodes = 42;   // tanh-sinh nodes per side (k=1 time direction)
  int freq_nodes = 36;   // tanh-sinh nodes per side (frequency direction)
  int time_nodes_k2 = 20;  // Gauss nodes per simplex dimension at k=2
  int freq_nodes_k2 = 14;  // tanh-sinh nodes per side per axis at k=2
};

struct ContinuityCurve {
  int order = 0;
  SpatialParam target;
  std::vector<SpatialParam> params;
  std::vector<double> q;  // squared L2 distance surrogate per parameter
};

// Deterministic quadrature of the squared kernel transform against the
// squared spectral-weight difference over T_k(t) x R^k; the quantity whose
// decay drives L2 continuity of the chaos terms in the parameter. k <= 2.
ContinuityCurve l2_continuity_curve(int order, double t,
                                    std::span<const double> x,
                                    const InitialMeasure& u0,
                                    const TemporalParam& temporal,
                                    const SpatialParam& target,
                                    std::span<const SpatialParam> sequence,
                                    const QuadConfig& config = {});

struct CoupledStep {
  SpatialParam param;
  double mean_sq_distance = 0.0;
  double stderr_ = 0.0;
  double ks_statistic = 0.0;
  double ks_critical = 0.0;  // 5% level for the two sample sizes
};

struct CoupledDistanceResult {
  int truncation = 0;
  std::vector<CoupledStep> steps;
};

// Shared-noise distances E|u_m^{p_n} - u_m^{p*}|^2 and the two-sample KS
// statistic between the coupled samples, one NoiseDraw per seed reused for
// every parameter.
CoupledDistanceResult coupled_distance(
    int truncation, std::span<const SpatialParam> sequence,
    const SpatialParam& target, const TemporalParam& temporal,
    const FrequencyTimeGrid& grid, double t, std::span<const double> x,
    const InitialMeasure& u0, int n_seeds, std::uint64_t base_seed,
    const TensorConfig& tensor_config = {});

enum class IncrementDirection { Time, Space };

struct HolderSample {
  double param = 0.0;
  double h = 0.0;
  double moment = 0.0;   // ||u_m(.+h) - u_m(.)||_p
  double stderr_ = 0.0;  // stderr of the p-th moment mean
};

struct HolderParamFit {
  double param = 0.0;
  double exponent = 0.0;  // fitted log-log slope
  double constant = 0.0;  // exp(intercept)
  bool inconclusive = false;
};

struct HolderFit {
  IncrementDirection direction = IncrementDirection::Time;
  int moment_order = 2;
  std::vector<HolderSample> samples;
  std::vector<HolderParamFit> fits;
  double sup_constant = 0.0;
  double constant_spread = 0.0;  // max/min fitted constant over the window
};

struct HolderConfig {
  int n_params = 5;
  int n_draws = 400;
  std::uint64_t base_seed = 2024;
  double t_base = 1.0;
  double x_base = 0.0;
  std::vector<double> ladder = {0.15, 0.2121, 0.3, 0.4243, 0.6};
  TensorConfig tensor;
};

// Coupled Monte Carlo estimate of increment moments over a ladder of
// increments, fitted per window parameter.
HolderFit holder_sweep(const ParamWindow& window,
                       const TemporalParam& temporal, int moment_order,
                       const InitialMeasure& u0, double t0, double t_max,
                       double box_half_width, IncrementDirection direction,
                       const FrequencyTimeGrid& grid,
                       const HolderConfig& config);

struct LhTestFunction {
  std::string name;
  std::function<double(std::span<const double>)> value;  // on T_k(t), >= 0
};

struct LhProbeResult {
  std::vector<std::string> names;
  std::vector<double> ratios;  // LHS / (int phi^{1/H0})^{2H0} per function
  double max_ratio = 0.0;
};

// Ratio probe of the fractional double-integral inequality: the reported
// ratios estimate the envelope b_{H0}^k from below.
LhProbeResult lh_ratio_probe(int order, const TemporalParam& temporal,
                             double t,
                             std::span<const LhTestFunction> family,
                             int cells_per_dim = 64);

// Two-sample Kolmogorov-Smirnov statistic and asymptotic critical value.
double ks_statistic(std::span<const double> a, std::span<const double> b);
double ks_critical_value(std::size_t n, std::size_t m, double level = 0.05);

// Least-squares slope/intercept of ln(y) against ln(x).
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LogLogFit fit_log_log(std::span<const double> x, std::span<const double> y);

}  // namespace pamlab
