// Times the OpenMP kernels against their serial reference paths: chaos
// tensor builds, per-draw contractions, and the Monte Carlo simplex oracle.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>

#include "pamlab/chaos.hpp"
#include "pamlab/rng.hpp"
#include "pamlab/simplex.hpp"

using namespace pamlab;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double time_ms(F&& fn) {
  const double t0 = now_ms();
  fn();
  return now_ms() - t0;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %.2fx\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  GridConfig gc;
  gc.tau_max = 24.0;
  gc.xi_max = 8.0;
  gc.n_tau = 24;
  gc.n_xi = 8;
  const FrequencyTimeGrid grid(gc);
  const auto u0 = lebesgue_measure(1);
  const double x[1] = {0.0};
  const TemporalParam h0{0.75};
  const auto param = SpatialParam::regular(1, 0.5);

  for (int k : {2, 3}) {
    TensorConfig serial;
    serial.parallel = false;
    TensorConfig parallel;
    ChaosTensor ser, par;
    const double ts =
        time_ms([&] { ser = build_chaos_tensor(grid, k, 1.0, x, u0, serial); });
    const double tp = time_ms(
        [&] { par = build_chaos_tensor(grid, k, 1.0, x, u0, parallel); });
    char name[64];
    std::snprintf(name, sizeof(name), "tensor build k=%d", k);
    report(name, ts, tp);
    if (ser.values != par.values)
      std::printf("  WARNING: serial/parallel tensors differ\n");
  }

  {
    TensorConfig serial;
    serial.parallel = false;
    ChaosEvaluator ev_s(grid, h0, 1.0, x, u0, serial);
    ChaosEvaluator ev_p(grid, h0, 1.0, x, u0, TensorConfig{});
    ev_s.tensor(3);
    ev_p.tensor(3);
    ev_s.weights(param);
    ev_p.weights(param);
    const NoiseDraw draw = sample_noise(grid, 7);
    double vs = 0.0, vp = 0.0;
    const double ts = time_ms([&] {
      for (int i = 0; i < 16; ++i) vs = ev_s.integral(3, param, draw);
    });
    const double tp = time_ms([&] {
      for (int i = 0; i < 16; ++i) vp = ev_p.integral(3, param, draw);
    });
    report("contraction k=3 (16 draws)", ts, tp);
    if (vs != vp) std::printf("  WARNING: contraction values differ\n");
  }

  {
    auto integrand = [](std::span<const double> ts_) {
      double prod = ts_[0];
      for (std::size_t i = 1; i < ts_.size(); ++i) prod *= ts_[i] - ts_[i - 1];
      return std::pow(prod, -0.25);
    };
    McEstimate es, ep;
    const double ts = time_ms(
        [&] { es = mc_simplex_oracle(3, integrand, 1.0, 4000000, 5, false); });
    const double tp = time_ms(
        [&] { ep = mc_simplex_oracle(3, integrand, 1.0, 4000000, 5, true); });
    report("mc simplex oracle (4e6)", ts, tp);
    if (es.value != ep.value)
      std::printf("  WARNING: oracle estimates differ\n");
  }
  return 0;
}
