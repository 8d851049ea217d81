#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pamlab/initial_measure.hpp"
#include "pamlab/params.hpp"

namespace pamlab {

// Heat kernel G_t(x) = (2 pi t)^{-d/2} exp(-|x|^2 / 2t); zero for t <= 0
// by the grid convention used throughout.
double heat_kernel(double t, std::span<const double> x);
double heat_kernel_1d(double t, double x);

// F G_t(xi) = exp(-t |xi|^2 / 2); zero for t < 0 by the same convention.
double fourier_heat_kernel(double t, std::span<const double> xi);
double fourier_heat_kernel_1d(double t, double xi);

// Strictly increasing times 0 < t_1 < ... < t_n < t.
struct OrderedTimes {
  double t = 0.0;
  std::vector<double> times;

  static OrderedTimes make(double t, std::span<const double> times);
};

struct KernelEval {
  std::complex<double> value;
  int order = 0;
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> xis;  // n*d, flattened per factor
};

// Spatial Fourier transform of the n-th chaos kernel f_{t,x,n} at ordered
// times: the product of the nested Gaussian factors
//   exp(-(1/2) (t_{k+1}-t_k)/(t_k t_{k+1}) |sum_{j<=k} t_j xi_j|^2),
// the phase exp(-(i/t)(sum_j t_j xi_j).x) and the oscillatory heat integral
// of u0 at frequency sum_j (1 - t_j/t) xi_j.
std::complex<double> fourier_chaos_kernel_value(double t,
                                                std::span<const double> x,
                                                std::span<const double> times,
                                                std::span<const double> xis,
                                                const InitialMeasure& u0);

KernelEval fourier_chaos_kernel(double t, std::span<const double> x,
                                const OrderedTimes& ord,
                                std::span<const double> xis,
                                const InitialMeasure& u0);

// Same value for arbitrary pairwise-distinct times in (0,t): sorts the
// times, permutes the frequencies alongside, and delegates. The sorted
// evaluation is the canonical symmetrized representative.
KernelEval symmetrized_fourier_chaos_kernel(double t,
                                            std::span<const double> x,
                                            std::span<const double> times,
                                            std::span<const double> xis,
                                            const InitialMeasure& u0);

// int |F G_t(xi)|^2 |xi - eta|^{-alpha} dxi by quadrature, with the
// Riesz-energy bound K_{d,alpha} t^{-(d-alpha)/2} enforced.
double weighted_kernel_energy(double t, std::span<const double> eta, int dim,
                              double alpha);

// Shifted spectral energy int |F G_t(xi)|^2 rho(xi - eta) dxi for either
// spectral family (no bound assertion; used for the sup-shift property).
double shifted_spectral_energy(double t, std::span<const double> eta,
                               const SpatialParam& param);

}  // namespace pamlab
