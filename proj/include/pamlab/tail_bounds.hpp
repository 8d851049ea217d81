#pragma once

#include "pamlab/params.hpp"

namespace pamlab {

// Sharp Littlewood-Hardy constant b_{H0} for the diagonal fractional
// double-integral inequality with temporal weight alpha_{H0}|t-s|^{2H0-2}:
//   b_{H0} = alpha_{H0} pi^{(3-4H0)/2} Gamma(H0-1/2) / Gamma(H0).
double littlewood_hardy_constant(double hurst0);

// Location of the Gamma function minimum on (0,inf).
inline constexpr double kGammaMinimum = 1.4616321449683623;

// Smallest truncation order from which the uniform-in-window tail majorant
// applies (Gamma monotonicity threshold).
int min_truncation_order(const ParamWindow& window,
                         const TemporalParam& temporal);

// Single term of the uniform-in-window majorant series for E|I_k|^2
// (modulo the w_+(t,x)^2 prefactor), in log-Gamma arithmetic.
double chaos_tail_term(int k, const ParamWindow& window,
                       const TemporalParam& temporal, double t);

// Explicit majorant of sup_{param in window} sum_{k >= m+1} E|I_k|^2,
// modulo the w_+(t,x)^2 prefactor. Requires m >= m0; the error message of
// the refusal carries m0. Accumulated in log space (the series can pass
// through an astronomically large interior maximum before the factorial
// decay wins) and truncated once past-peak terms drop below 1e-18 relative.
double chaos_tail_bound(int m, const ParamWindow& window,
                        const TemporalParam& temporal, double t);

// Single-order majorant of E|I_k|^2 at a fixed parameter (with the
// w_+(t,x)^2 prefactor included); valid for every k >= 1.
double chaos_term_majorant(int order, const SpatialParam& param,
                           const TemporalParam& temporal, double t,
                           double w_plus);

}  // namespace pamlab
