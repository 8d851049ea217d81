#include "pamlab/tail_bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pamlab/simplex.hpp"

namespace pamlab {

namespace {

double gamma_max_over(const std::vector<double>& args) {
  double m = 0.0;
  for (double a : args) m = std::max(m, std::tgamma(a));
  return m;
}

// sup over H in [a,b] of C_{H,1} = c_H max(G(1/2), G(1-H), G((3-4H)/2)),
// by a dense sample (every factor is smooth on the window).
double rough_c1_sup(double a, double b) {
  double best = 0.0;
  const int n = 64;
  for (int i = 0; i <= n; ++i) {
    const double h = a + (b - a) * i / n;
    const double ch = fractional_spectral_constant(h);
    const double g = std::max({std::tgamma(0.5), std::tgamma(1.0 - h),
                               std::tgamma(0.5 * (3.0 - 4.0 * h))});
    best = std::max(best, ch * g);
  }
  return best;
}

struct RoughWindowConstants {
  double log_b;        // log b_{H0}
  double log_c1;       // log sup C_{H,1}
  double log_gnum_a;   // log of the Gamma(alpha~_1 + 1) cap
  double log_gnum_b;   // log of the per-factor Gamma(beta~ + 1) cap
};

RoughWindowConstants rough_window_constants(const ParamWindow& w,
                                            const TemporalParam& temporal) {
  const double h0 = temporal.hurst0;
  RoughWindowConstants rc;
  rc.log_b = std::log(littlewood_hardy_constant(h0));
  rc.log_c1 = std::log(rough_c1_sup(w.a, w.b));
  // Candidates for alpha~_1 + 1 over H in {a,b} and both first multi-index
  // letters; each argument is monotone in H so endpoints suffice.
  std::vector<double> a_args = {
      (2.0 * h0 + w.a - 1.0) / (2.0 * h0),
      (2.0 * h0 + w.b - 1.0) / (2.0 * h0),
      (4.0 * h0 - 1.0) / (4.0 * h0),
  };
  std::vector<double> b_args = {
      1.0 - 1.0 / (4.0 * h0),
      1.0 - (2.0 - 2.0 * w.a) / (4.0 * h0),
      1.0 - (2.0 - 2.0 * w.b) / (4.0 * h0),
      1.0 - (3.0 - 4.0 * w.a) / (4.0 * h0),
      1.0 - (3.0 - 4.0 * w.b) / (4.0 * h0),
  };
  rc.log_gnum_a = std::log(gamma_max_over(a_args));
  rc.log_gnum_b = std::log(gamma_max_over(b_args));
  return rc;
}

double regular_log_term(int k, const ParamWindow& w,
                        const TemporalParam& temporal, double t) {
  const double d = static_cast<double>(w.dim);
  const double e = 1.0 - 0.5 * (d - w.a);  // in (0,1)
  const double cd = sphere_area(w.dim);
  const double c_dab = cd * (1.0 / (d - w.b) + 2.0 / (2.0 - (d - w.a)));
  const double tv = std::max(t, 1.0);
  const double gamma_0t = 2.0 * temporal.hurst0 *
                          std::pow(tv, 2.0 * temporal.hurst0 - 1.0);
  return k * std::log(gamma_0t) + k * std::log(c_dab) +
         (k + 1) * std::lgamma(e) - std::lgamma((k + 1) * e) +
         k * (1.0 - 0.5 * (d - w.b)) * std::log(tv);
}

double rough_log_term(int k, const RoughWindowConstants& rc,
                      const ParamWindow& w, const TemporalParam& temporal,
                      double t) {
  const double h0 = temporal.hurst0;
  const double tv = std::max(t, 1.0);
  const double l_k =
      (k - 1) * (2.0 * h0 + w.a - 1.0) / (2.0 * h0) - (1.0 - w.a) / (2.0 * h0);
  const double inner = (k - 1) * std::log(2.0) + rc.log_gnum_a +
                       k * rc.log_gnum_b - std::lgamma(l_k + 1.0) +
                       k * (2.0 * h0 + w.b - 1.0) / (2.0 * h0) * std::log(tv);
  return k * (rc.log_b + rc.log_c1) +
         (2.0 * h0 - 1.0) * std::lgamma(k + 1.0) + 2.0 * h0 * inner;
}

// Multi-indices of the product expansion: a_1 in {1,2}, interior letters in
// {0,1,2}, a_k in {0,1}, sum = k; cardinality 2^{k-1}.
std::vector<std::vector<int>> multi_indices(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k, 0);
  auto rec = [&](auto&& self, int pos, int sum) -> void {
    if (pos == k) {
      if (sum == k) out.push_back(cur);
      return;
    }
    const int lo = (pos == 0) ? 1 : 0;
    const int hi = (pos == 0) ? 2 : (pos == k - 1 ? 1 : 2);
    for (int v = lo; v <= hi; ++v) {
      cur[pos] = v;
      if (sum + v <= k) self(self, pos + 1, sum + v);
    }
  };
  if (k == 1) {
    out.push_back({1});
    return out;
  }
  rec(rec, 0, 0);
  return out;
}

}  // namespace

double littlewood_hardy_constant(double hurst0) {
  if (!(hurst0 > 0.5 && hurst0 < 1.0))
    throw domain_error("littlewood_hardy_constant: H0 must be in (1/2,1)");
  const double alpha = hurst0 * (2.0 * hurst0 - 1.0);
  return alpha * std::pow(M_PI, 0.5 * (3.0 - 4.0 * hurst0)) *
         std::tgamma(hurst0 - 0.5) / std::tgamma(hurst0);
}

int min_truncation_order(const ParamWindow& window,
                         const TemporalParam& temporal) {
  require_admissible(window, temporal);
  if (window.family == NoiseFamily::Regular) {
    const double e = 1.0 - 0.5 * (window.dim - window.a);
    return static_cast<int>(std::floor(kGammaMinimum / e)) + 1;
  }
  const double h0 = temporal.hurst0;
  const double rate = (2.0 * h0 + window.a - 1.0) / (2.0 * h0);
  const double shift = (1.0 - window.a) / (2.0 * h0);
  // smallest m with (m-1) rate - shift > kGammaMinimum
  return static_cast<int>(std::floor((kGammaMinimum + shift) / rate)) + 2;
}

double chaos_tail_term(int k, const ParamWindow& window,
                       const TemporalParam& temporal, double t) {
  require_admissible(window, temporal);
  if (!(t > 0.0)) throw domain_error("chaos_tail_term: t must be > 0");
  if (k < 1) throw usage_error("chaos_tail_term: k must be >= 1");
  if (window.family == NoiseFamily::Regular)
    return std::exp(regular_log_term(k, window, temporal, t));
  const RoughWindowConstants rc = rough_window_constants(window, temporal);
  return std::exp(rough_log_term(k, rc, window, temporal, t));
}

double chaos_tail_bound(int m, const ParamWindow& window,
                        const TemporalParam& temporal, double t) {
  require_admissible(window, temporal);
  if (!(t > 0.0)) throw domain_error("chaos_tail_bound: t must be > 0");
  const int m0 = min_truncation_order(window, temporal);
  if (m < m0)
    throw domain_error("chaos_tail_bound: m = " + std::to_string(m) +
                       " below the monotonicity threshold m0 = " +
                       std::to_string(m0));
  const bool regular = window.family == NoiseFamily::Regular;
  RoughWindowConstants rc{};
  if (!regular) rc = rough_window_constants(window, temporal);
  // log-sum-exp accumulation; stop only after the terms have peaked.
  double log_sum = -std::numeric_limits<double>::infinity();
  double prev_lt = -std::numeric_limits<double>::infinity();
  bool past_peak = false;
  for (int k = m + 1; k < m + 20000; ++k) {
    const double lt = regular ? regular_log_term(k, window, temporal, t)
                              : rough_log_term(k, rc, window, temporal, t);
    past_peak = past_peak || lt < prev_lt;
    prev_lt = lt;
    if (lt > log_sum) {
      log_sum = lt + std::log1p(std::exp(log_sum - lt));
    } else {
      log_sum += std::log1p(std::exp(lt - log_sum));
    }
    if (past_peak && lt < log_sum - 41.5)  // ~1e-18 relative
      return std::exp(log_sum);
  }
  throw numerical_error("chaos_tail_bound: series did not converge");
}

double chaos_term_majorant(int order, const SpatialParam& param,
                           const TemporalParam& temporal, double t,
                           double w_plus) {
  require_admissible(param, temporal);
  if (order < 1) throw usage_error("chaos_term_majorant: order must be >= 1");
  if (!(t > 0.0)) throw domain_error("chaos_term_majorant: t must be > 0");
  const double h0 = temporal.hurst0;
  const double gamma_0t = 2.0 * h0 * std::pow(t, 2.0 * h0 - 1.0);
  const int k = order;

  if (param.family == NoiseFamily::Regular) {
    const double d = static_cast<double>(param.dim);
    const double e = 1.0 - 0.5 * (d - param.alpha);
    const double c1 = riesz_constants(param.dim, param.alpha, 1.0).c1;
    const double log_m =
        k * std::log(gamma_0t) + k * std::log(c1) -
        0.5 * (d - param.alpha) * k * std::log(2.0) + k * e * std::log(t) +
        (k + 1) * std::lgamma(e) - std::lgamma((k + 1) * e);
    return w_plus * w_plus * std::exp(log_m);
  }

  const double h = param.hurst;
  const double b = littlewood_hardy_constant(h0);
  const double ch = fractional_spectral_constant(h);
  const double c_h1 =
      ch * std::max({std::tgamma(0.5), std::tgamma(1.0 - h),
                     std::tgamma(0.5 * (3.0 - 4.0 * h))});
  double bracket = 0.0;
  for (const auto& a : multi_indices(k)) {
    std::vector<double> at(k), bt(k);
    std::array<double, 16> alpha{};
    for (int j = 0; j < k; ++j) alpha[j] = (1.0 - 2.0 * h) * a[j];
    at[0] = (4.0 * h - 3.0 + alpha[0]) / (4.0 * h0);
    for (int j = 1; j < k; ++j)
      at[j] = (4.0 * h - 2.0 + alpha[j - 1] + alpha[j]) / (4.0 * h0);
    for (int j = 0; j < k; ++j) bt[j] = -(1.0 + alpha[j]) / (4.0 * h0);
    const double ig = simplex_mixed_integral(MixedExponents::make(at, bt, t));
    bracket += std::pow(t, (1.0 + alpha[k - 1]) / (4.0 * h0)) * ig;
  }
  const double log_m = k * (std::log(b) + std::log(c_h1)) +
                       (2.0 * h0 - 1.0) * std::lgamma(k + 1.0) +
                       2.0 * h0 * std::log(bracket);
  return w_plus * w_plus * std::exp(log_m);
}

}  // namespace pamlab
