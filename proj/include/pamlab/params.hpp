#pragma once

#include <functional>
#include <string>

#include "pamlab/errors.hpp"

namespace pamlab {

// Temporal noise parameter: fractional covariance gamma_0(t) =
// alpha_{H0} |t|^{2 H0 - 2} with Hurst index H0 in (1/2, 1).
struct TemporalParam {
  double hurst0 = 0.75;
};

enum class NoiseFamily { Regular, Rough };

// Spatial spectral measure parameter. Regular: mu(dxi) = |xi|^{-alpha} dxi
// on R^d with alpha in (0, d). Rough: mu(dxi) = c_H |xi|^{1-2H} dxi on R,
// H in (0, 1/2).
struct SpatialParam {
  NoiseFamily family = NoiseFamily::Regular;
  int dim = 1;
  double alpha = 0.5;  // Regular only
  double hurst = 0.3;  // Rough only

  static SpatialParam regular(int d, double alpha) {
    SpatialParam p;
    p.family = NoiseFamily::Regular;
    p.dim = d;
    p.alpha = alpha;
    return p;
  }
  static SpatialParam rough(double hurst) {
    SpatialParam p;
    p.family = NoiseFamily::Rough;
    p.dim = 1;
    p.hurst = hurst;
    return p;
  }
};

// Compact parameter interval [a, b] for the uniform-in-parameter results.
struct ParamWindow {
  NoiseFamily family = NoiseFamily::Regular;
  int dim = 1;  // Regular only
  double a = 0.0;
  double b = 0.0;
};

struct AdmissibilityReport {
  bool admissible = false;
  bool temporal_ok = false;
  bool spatial_ok = false;
  double ell = 0.0;            // max(3/4 - H0, 0); meaningful for Rough
  double margin_lower = 0.0;   // distance to the lower admissibility bound
  double margin_upper = 0.0;   // distance to the upper admissibility bound
  std::string failed;          // first violated inequality, empty if none
};

// Lower admissibility edge for the rough family,
// ell = max(3/4 - H0, 0).
double rough_lower_edge(const TemporalParam& temporal);

// Checks every admissibility inequality and reports margins; never throws
// for inadmissible values (experiments sweep close to the boundaries).
AdmissibilityReport validate_params(const SpatialParam& spatial,
                                    const TemporalParam& temporal);

AdmissibilityReport validate_window(const ParamWindow& window,
                                    const TemporalParam& temporal);

// Throwing variants used by downstream constructors.
void require_admissible(const SpatialParam& spatial,
                        const TemporalParam& temporal);
void require_admissible(const ParamWindow& window,
                        const TemporalParam& temporal);

// c_H = Gamma(2H+1) sin(pi H) / (2 pi), H in (0,1).
double fractional_spectral_constant(double hurst);

// Surface area of the unit sphere in R^d, d <= 3.
double sphere_area(int dim);

struct TemporalConstants {
  double hurst0 = 0.0;
  double alpha_h0 = 0.0;   // H0 (2 H0 - 1)
  double c_h0 = 0.0;       // spectral constant of gamma_0
  double gamma_0t = 0.0;   // int_{-t}^{t} gamma_0(s) ds = 2 H0 t^{2H0-1}
  // Spectral density g_0(tau) = c_{H0} |tau|^{1-2H0}; returns +inf at 0.
  double g0(double tau) const;
  double gamma0(double lag) const;  // alpha_{H0} |lag|^{2H0-2}
};

TemporalConstants temporal_constants(const TemporalParam& temporal, double t);

struct RieszConstants {
  double k_bound = 0.0;    // c_d (1/(d-alpha) + 1/(2-(d-alpha)))
  double k_numeric = 0.0;  // int (1+|xi|^2)^{-1} |xi|^{-alpha} dxi
  double c1 = 0.0;         // int exp(-|xi|^2/2) |xi|^{-alpha} dxi
  double k_alpha_t = 0.0;  // c1 * t^{-(d-alpha)/2}
};

RieszConstants riesz_constants(int dim, double alpha, double t);

// k_alpha(t) = C^{(1)}_{d,alpha} t^{-(d-alpha)/2} without the slow constants.
double k_alpha(int dim, double alpha, double t);

}  // namespace pamlab
