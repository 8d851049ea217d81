#pragma once

#include <complex>
#include <span>

#include "pamlab/initial_measure.hpp"

namespace pamlab::oracle {

// Physical-space chaos kernel f_{t,x,n}(times, ys) =
// G_{t-t_n}(x-y_n) ... G_{t_2-t_1}(y_2-y_1) w(t_1, y_1); d = 1, the
// brute-force counterpart used to validate the closed-form transform.
double chaos_kernel_physical(double t, double x, std::span<const double> times,
                             std::span<const double> ys,
                             const InitialMeasure& u0);

// n-dimensional numerical Fourier transform of the physical kernel over a
// truncated box, independent of the spectral-side implementation. d = 1 and
// n <= 2.
std::complex<double> fourier_kernel_bruteforce(double t, double x,
                                               std::span<const double> times,
                                               std::span<const double> xis,
                                               const InitialMeasure& u0,
                                               int nodes_per_panel = 16);

}  // namespace pamlab::oracle
