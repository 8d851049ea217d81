#include "pamlab/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pamlab/quadrature.hpp"

namespace pamlab {

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

double rough_lower_edge(const TemporalParam& temporal) {
  return std::max(0.75 - temporal.hurst0, 0.0);
}

AdmissibilityReport validate_params(const SpatialParam& spatial,
                                    const TemporalParam& temporal) {
  AdmissibilityReport rep;
  if (!finite(temporal.hurst0) || !finite(spatial.alpha) ||
      !finite(spatial.hurst))
    throw usage_error("validate_params: parameters must be finite");

  rep.temporal_ok = temporal.hurst0 > 0.5 && temporal.hurst0 < 1.0;
  if (!rep.temporal_ok) rep.failed = "1/2 < H0 < 1";

  if (spatial.family == NoiseFamily::Regular) {
    const int d = spatial.dim;
    const double lower = std::max(static_cast<double>(d) - 2.0, 0.0);
    rep.margin_lower = spatial.alpha - lower;
    rep.margin_upper = static_cast<double>(d) - spatial.alpha;
    rep.spatial_ok = d >= 1 && rep.margin_lower > 0.0 && rep.margin_upper > 0.0;
    if (!rep.spatial_ok && rep.failed.empty()) {
      if (d < 1)
        rep.failed = "d >= 1";
      else if (rep.margin_upper <= 0.0)
        rep.failed = "alpha < d";
      else if (spatial.alpha <= 0.0)
        rep.failed = "alpha > 0";
      else
        rep.failed = "d - alpha < 2";
    }
  } else {
    rep.ell = rough_lower_edge(temporal);
    rep.margin_lower = spatial.hurst - rep.ell;
    rep.margin_upper = 0.5 - spatial.hurst;
    rep.spatial_ok = rep.margin_lower > 0.0 && rep.margin_upper > 0.0;
    if (!rep.spatial_ok && rep.failed.empty())
      rep.failed = (rep.margin_upper <= 0.0) ? "H < 1/2" : "H > max(3/4-H0,0)";
  }
  rep.admissible = rep.temporal_ok && rep.spatial_ok;
  return rep;
}

AdmissibilityReport validate_window(const ParamWindow& window,
                                    const TemporalParam& temporal) {
  SpatialParam lo, hi;
  if (window.family == NoiseFamily::Regular) {
    lo = SpatialParam::regular(window.dim, window.a);
    hi = SpatialParam::regular(window.dim, window.b);
  } else {
    lo = SpatialParam::rough(window.a);
    hi = SpatialParam::rough(window.b);
  }
  AdmissibilityReport rep = validate_params(lo, temporal);
  const AdmissibilityReport hi_rep = validate_params(hi, temporal);
  rep.spatial_ok = rep.spatial_ok && hi_rep.spatial_ok && window.a < window.b;
  rep.margin_upper = hi_rep.margin_upper;
  if (rep.failed.empty()) rep.failed = hi_rep.failed;
  if (rep.failed.empty() && !(window.a < window.b)) rep.failed = "a < b";
  rep.admissible = rep.temporal_ok && rep.spatial_ok;
  return rep;
}

void require_admissible(const SpatialParam& spatial,
                        const TemporalParam& temporal) {
  const AdmissibilityReport rep = validate_params(spatial, temporal);
  if (!rep.admissible)
    throw domain_error("inadmissible parameters: violated " + rep.failed);
}

void require_admissible(const ParamWindow& window,
                        const TemporalParam& temporal) {
  const AdmissibilityReport rep = validate_window(window, temporal);
  if (!rep.admissible)
    throw domain_error("inadmissible window: violated " + rep.failed);
}

double fractional_spectral_constant(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw domain_error("fractional_spectral_constant: H must be in (0,1)");
  return std::tgamma(2.0 * hurst + 1.0) * std::sin(M_PI * hurst) /
         (2.0 * M_PI);
}

double sphere_area(int dim) {
  if (dim < 1 || dim > 3)
    throw domain_error("sphere_area: only d <= 3 supported");
  return 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double TemporalConstants::g0(double tau) const {
  if (tau == 0.0) return std::numeric_limits<double>::infinity();
  return c_h0 * std::pow(std::abs(tau), 1.0 - 2.0 * hurst0);
}

double TemporalConstants::gamma0(double lag) const {
  if (lag == 0.0) return std::numeric_limits<double>::infinity();
  return alpha_h0 * std::pow(std::abs(lag), 2.0 * hurst0 - 2.0);
}

TemporalConstants temporal_constants(const TemporalParam& temporal, double t) {
  if (!(t > 0.0)) throw domain_error("temporal_constants: t must be > 0");
  if (!(temporal.hurst0 > 0.5 && temporal.hurst0 < 1.0))
    throw domain_error("temporal_constants: H0 must be in (1/2,1)");
  TemporalConstants c;
  c.hurst0 = temporal.hurst0;
  c.alpha_h0 = temporal.hurst0 * (2.0 * temporal.hurst0 - 1.0);
  c.c_h0 = fractional_spectral_constant(temporal.hurst0);
  c.gamma_0t = 2.0 * temporal.hurst0 *
               std::pow(t, 2.0 * temporal.hurst0 - 1.0);
  return c;
}

RieszConstants riesz_constants(int dim, double alpha, double t) {
  if (!(t > 0.0)) throw domain_error("riesz_constants: t must be > 0");
  // alpha = 0 admitted: every constant below stays finite there and the
  // Gaussian-integral corner case is a useful reference point.
  if (!(alpha >= 0.0 && alpha < static_cast<double>(dim) &&
        static_cast<double>(dim) - alpha < 2.0))
    throw domain_error("riesz_constants: need max(d-2,0) <= alpha < d");

  const double cd = sphere_area(dim);
  const double s = dim - alpha;  // in (0, 2)
  RieszConstants rc;
  rc.k_bound = cd * (1.0 / s + 1.0 / (2.0 - s));

  // Radial reductions; tanh-sinh absorbs the r^{s-1} endpoint behaviour.
  // da is the node's accurate distance to 0, i.e. the radius itself.
  const double inner = integrate_de(
      [&](double, double da, double) {
        return std::pow(da, s - 1.0) / (1.0 + da * da);
      },
      0.0, 1.0);
  // Tail via v = 1/r.
  const double tail = integrate_de(
      [&](double, double da, double) {
        return std::pow(da, 1.0 - s) / (1.0 + da * da);
      },
      0.0, 1.0);
  rc.k_numeric = cd * (inner + tail);

  const double g_inner = integrate_de(
      [&](double, double da, double) {
        return std::pow(da, s - 1.0) * std::exp(-0.5 * da * da);
      },
      0.0, 1.0);
  const double g_outer = integrate_gl_panels(
      [&](double r) { return std::pow(r, s - 1.0) * std::exp(-0.5 * r * r); },
      1.0, 10.0, 24, 6);
  rc.c1 = cd * (g_inner + g_outer);
  rc.k_alpha_t = rc.c1 * std::pow(t, -0.5 * s);

  if (!(rc.k_numeric <= rc.k_bound * (1.0 + 1e-9)))
    throw numerical_error("riesz_constants: K_numeric exceeded K_bound");
  return rc;
}

double k_alpha(int dim, double alpha, double t) {
  return riesz_constants(dim, alpha, 1.0).c1 *
         std::pow(t, -0.5 * (dim - alpha));
}

}  // namespace pamlab
