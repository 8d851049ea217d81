#pragma once

#include <span>

#include "pamlab/initial_measure.hpp"
#include "pamlab/params.hpp"

namespace pamlab {

struct VarianceConfig {
  int time_nodes = 42;     // tanh-sinh nodes per side, k=1 time integrals
  int freq_nodes = 36;     // tanh-sinh nodes per side, frequency quadrature
  int cells_k2 = 28;       // time cells per axis in the k=2 covariance form
  int freq_nodes_k2 = 24;  // tanh-sinh nodes per side at k=2
  bool parallel = true;
};

// E|I_k|^2 at (t,x) by deterministic quadrature of the time-covariance form
//   (1/k!) int_{[0,t]^{2k}} prod_j gamma_0(t_j - s_j)
//       int Sym(t;xi) conj(Sym(s;xi)) prod_j rho(xi_j) dxi dt ds,
// where Sym is the sorted chaos-kernel transform and rho the spectral
// density. Deliberately independent of the frequency-time grid used by the
// discrete integrals, so the two routes cross-check each other. k <= 2.
double chaos_variance(int order, const SpatialParam& param,
                      const TemporalParam& temporal, double t,
                      std::span<const double> x, const InitialMeasure& u0,
                      const VarianceConfig& config = {});

// Exact mass of gamma_0 over a cell pair [a1,a2] x [b1,b2] (fBm increment
// covariance identity); building block of the k=2 quadrature and of the
// Littlewood-Hardy probe.
double gamma0_cell_mass(double a1, double a2, double b1, double b2,
                        double hurst0);

}  // namespace pamlab
