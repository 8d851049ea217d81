#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pamlab/errors.hpp"

namespace pamlab {

// Exponent data for the mixed simplex integral
//   int_{0<t_1<...<t_n<t} prod_i t_i^{alpha_i} (t_{i+1}-t_i)^{beta_i} dt,
// t_{n+1} = t. Requires alpha_i > -1, beta_i > -1 and the partial-sum
// condition sum_{i<=k}(alpha_i+beta_i) + k + 1 + alpha_{k+1} > 0.
struct MixedExponents {
  std::vector<double> alphas;
  std::vector<double> betas;
  double t = 1.0;

  static MixedExponents make(std::span<const double> alphas,
                             std::span<const double> betas, double t);
};

// int_{T_n(t)} [t_1 (t_2-t_1) ... (t-t_n)]^h dt
//   = Gamma(h+1)^{n+1} / Gamma((n+1)(h+1)) * t^{n(h+1)+h}.
double simplex_power_integral(int n, double h, double t);

// Closed form of the mixed integral (log-Gamma arithmetic).
double simplex_mixed_integral(const MixedExponents& e);

struct McEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  bool heavy_tail_warning = false;
};

// Brute-force oracle: uniform ordered samples on the simplex via sorted
// uniforms; batches reduced in fixed order so results do not depend on the
// thread count. The integrand receives the ordered times.
McEstimate mc_simplex_oracle(
    int n, const std::function<double(std::span<const double>)>& integrand,
    double t, std::uint64_t samples, std::uint64_t seed, bool parallel = true);

}  // namespace pamlab
