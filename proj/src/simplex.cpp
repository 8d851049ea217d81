#include "pamlab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pamlab/rng.hpp"

namespace pamlab {

MixedExponents MixedExponents::make(std::span<const double> alphas,
                                    std::span<const double> betas, double t) {
  if (alphas.size() != betas.size() || alphas.empty())
    throw usage_error("MixedExponents: alphas and betas must match, n >= 1");
  if (!(t > 0.0)) throw domain_error("MixedExponents: t must be > 0");
  const int n = static_cast<int>(alphas.size());
  for (int i = 0; i < n; ++i) {
    if (!(alphas[i] > -1.0))
      throw domain_error("MixedExponents: alpha[" + std::to_string(i) +
                         "] <= -1");
    if (!(betas[i] > -1.0))
      throw domain_error("MixedExponents: beta[" + std::to_string(i) +
                         "] <= -1");
  }
  double partial = 0.0;
  for (int k = 1; k <= n - 1; ++k) {
    partial += alphas[k - 1] + betas[k - 1];
    if (!(partial + k + 1 + alphas[k] > 0.0))
      throw domain_error(
          "MixedExponents: partial-sum condition fails at k = " +
          std::to_string(k));
  }
  MixedExponents e;
  e.alphas.assign(alphas.begin(), alphas.end());
  e.betas.assign(betas.begin(), betas.end());
  e.t = t;
  return e;
}

double simplex_power_integral(int n, double h, double t) {
  if (n < 1) throw usage_error("simplex_power_integral: n must be >= 1");
  if (!(h > -1.0)) throw domain_error("simplex_power_integral: h must be > -1");
  if (!(t > 0.0)) throw domain_error("simplex_power_integral: t must be > 0");
  const double log_value = (n + 1) * std::lgamma(h + 1.0) -
                           std::lgamma((n + 1) * (h + 1.0)) +
                           (n * (h + 1.0) + h) * std::log(t);
  return std::exp(log_value);
}

double simplex_mixed_integral(const MixedExponents& e) {
  const int n = static_cast<int>(e.alphas.size());
  double total_a = 0.0, total_b = 0.0;
  for (int i = 0; i < n; ++i) {
    total_a += e.alphas[i];
    total_b += e.betas[i];
  }
  double log_value = std::lgamma(e.alphas[0] + 1.0);
  for (int i = 0; i < n; ++i) log_value += std::lgamma(e.betas[i] + 1.0);
  log_value -= std::lgamma(total_a + total_b + n + 1.0);
  double partial = 0.0;
  for (int k = 1; k <= n - 1; ++k) {
    partial += e.alphas[k - 1] + e.betas[k - 1];
    log_value += std::lgamma(partial + k + 1 + e.alphas[k]) -
                 std::lgamma(partial + k + 1);
  }
  log_value += (total_a + total_b + n) * std::log(e.t);
  return std::exp(log_value);
}

McEstimate mc_simplex_oracle(
    int n, const std::function<double(std::span<const double>)>& integrand,
    double t, std::uint64_t samples, std::uint64_t seed, bool parallel) {
  if (n < 1 || n > 16) throw usage_error("mc_simplex_oracle: bad order");
  if (samples < 1000)
    throw usage_error("mc_simplex_oracle: need at least 1e3 samples");
  if (!(t > 0.0)) throw domain_error("mc_simplex_oracle: t must be > 0");

  // Fixed batch layout independent of thread count.
  const std::uint64_t batch_size = 16384;
  const std::uint64_t n_batches = (samples + batch_size - 1) / batch_size;
  std::vector<double> batch_sum(n_batches, 0.0);
  std::vector<double> batch_sumsq(n_batches, 0.0);
  std::vector<double> batch_maxabs(n_batches, 0.0);

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_batches); ++b) {
    NormalSampler rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    const std::uint64_t lo = b * batch_size;
    const std::uint64_t hi = std::min(samples, lo + batch_size);
    double sum = 0.0, sumsq = 0.0, maxabs = 0.0;
    double u[16];
    for (std::uint64_t i = lo; i < hi; ++i) {
      for (int j = 0; j < n; ++j) u[j] = t * rng.uniform01();
      std::sort(u, u + n);
      const double f = integrand(std::span<const double>(u, n));
      sum += f;
      sumsq += f * f;
      maxabs = std::max(maxabs, std::abs(f));
    }
    batch_sum[b] = sum;
    batch_sumsq[b] = sumsq;
    batch_maxabs[b] = maxabs;
  }

  double sum = 0.0, sumsq = 0.0, maxabs = 0.0;
  for (std::uint64_t b = 0; b < n_batches; ++b) {
    sum += batch_sum[b];
    sumsq += batch_sumsq[b];
    maxabs = std::max(maxabs, batch_maxabs[b]);
  }
  const double ns = static_cast<double>(samples);
  const double mean = sum / ns;
  const double var = std::max(0.0, sumsq / ns - mean * mean);
  // Simplex volume factor: ordered sorted-uniform density is n!/t^n.
  double log_vol = -std::lgamma(n + 1.0) + n * std::log(t);
  const double vol = std::exp(log_vol);
  McEstimate out;
  out.value = mean * vol;
  out.stderr_ = std::sqrt(var / ns) * vol;
  out.samples = samples;
  // A single draw dominating the sum signals a (near-)non-integrable spike.
  out.heavy_tail_warning =
      !std::isfinite(out.value) || maxabs > 0.5 * std::abs(sum);
  return out;
}

}  // namespace pamlab
