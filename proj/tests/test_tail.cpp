#include <doctest.h>

#include <cmath>
#include <string>

#include "pamlab/tail_bounds.hpp"
#include "pamlab/variance.hpp"
#include "support/test_oracles.hpp"

using namespace pamlab;

namespace {

const TemporalParam kH0{0.75};

ParamWindow regular_window() {
  ParamWindow w;
  w.family = NoiseFamily::Regular;
  w.dim = 1;
  w.a = 0.3;
  w.b = 0.7;
  return w;
}

ParamWindow rough_window() {
  ParamWindow w;
  w.family = NoiseFamily::Rough;
  w.a = 0.3;
  w.b = 0.45;
  return w;
}

}  // namespace

TEST_CASE("littlewood-hardy constant") {
  const double b = littlewood_hardy_constant(0.75);
  const double expect = 0.375 * testo::spouge_gamma(0.25) /
                        testo::spouge_gamma(0.75);
  CHECK(b == doctest::Approx(expect).epsilon(1e-12));
  CHECK(b > 1.0);  // consistent with the indicator example attaining 1
  CHECK_THROWS_AS(littlewood_hardy_constant(0.4), domain_error);
}

TEST_CASE("minimum truncation order and refusal") {
  CHECK(min_truncation_order(regular_window(), kH0) == 3);
  const int m0r = min_truncation_order(rough_window(), kH0);
  CHECK(m0r >= 2);
  CHECK(m0r <= 5);
  try {
    chaos_tail_bound(1, regular_window(), kH0, 1.0);
    CHECK(false);
  } catch (const domain_error& e) {
    CHECK(std::string(e.what()).find("m0 = 3") != std::string::npos);
  }
}

TEST_CASE("tail bound decay, regular window") {
  const ParamWindow w = regular_window();
  // The positive-term tail never increases; before the interior peak of
  // the majorant terms the decrease sits below double resolution, past the
  // peak it is strict and visible.
  double prev = chaos_tail_bound(5, w, kH0, 1.0);
  CHECK(std::isfinite(prev));
  for (int m = 6; m <= 15; ++m) {
    const double b = chaos_tail_bound(m, w, kH0, 1.0);
    CHECK(b <= prev);
    prev = b;
  }
  // find the term peak, then check strict decay beyond it
  int peak = 5;
  double best = 0.0;
  for (int k = 5; k < 2000; ++k) {
    const double term = chaos_tail_term(k, w, kH0, 1.0);
    if (term > best) {
      best = term;
      peak = k;
    } else {
      break;
    }
  }
  prev = chaos_tail_bound(peak + 5, w, kH0, 1.0);
  for (int m = peak + 6; m <= peak + 12; ++m) {
    const double b = chaos_tail_bound(m, w, kH0, 1.0);
    CHECK(b < prev);
    prev = b;
  }
  // term ratios increase without bound across the probe range
  double prev_ratio = 0.0;
  for (int m = 5; m <= 15; ++m) {
    const double ratio = chaos_tail_term(m, w, kH0, 1.0) /
                         chaos_tail_term(m + 1, w, kH0, 1.0);
    CHECK(ratio > prev_ratio);
    prev_ratio = ratio;
  }
}

TEST_CASE("tail bound decay, rough window") {
  const ParamWindow w = rough_window();
  const int m0 = min_truncation_order(w, kH0);
  double prev = chaos_tail_bound(m0, w, kH0, 1.0);
  double prev_ratio = 0.0;
  for (int m = m0 + 1; m <= m0 + 10; ++m) {
    const double b = chaos_tail_bound(m, w, kH0, 1.0);
    CHECK(std::isfinite(b));
    CHECK(b > 0.0);
    CHECK(b <= prev);
    const double ratio = chaos_tail_term(m, w, kH0, 1.0) /
                         chaos_tail_term(m + 1, w, kH0, 1.0);
    if (prev_ratio > 0.0) CHECK(ratio > prev_ratio);
    prev_ratio = ratio;
    prev = b;
  }
}

TEST_CASE("per-term majorant dominates the true second moment") {
  const auto leb = lebesgue_measure(1);
  const double x[1] = {0.0};
  for (const SpatialParam param :
       {SpatialParam::regular(1, 0.5), SpatialParam::rough(0.3)}) {
    for (int k : {1, 2}) {
      const double exact = chaos_variance(k, param, kH0, 1.0, x, leb);
      const double maj = chaos_term_majorant(k, param, kH0, 1.0, 1.0);
      CHECK(exact <= maj);
    }
  }
  // and for a measure with nontrivial w_plus
  const auto d0 = dirac_measure_1d(0.0);
  const double w_plus = heat_evolve(d0, 1.0, x).w_plus;
  for (int k : {1, 2}) {
    const double exact =
        chaos_variance(k, SpatialParam::regular(1, 0.5), kH0, 1.0, x, d0);
    const double maj = chaos_term_majorant(k, SpatialParam::regular(1, 0.5),
                                           kH0, 1.0, w_plus);
    CHECK(exact <= maj);
  }
}

TEST_CASE("majorant argument validation") {
  CHECK_THROWS_AS(
      chaos_term_majorant(0, SpatialParam::regular(1, 0.5), kH0, 1.0, 1.0),
      usage_error);
  CHECK_THROWS_AS(
      chaos_term_majorant(1, SpatialParam::regular(1, 1.5), kH0, 1.0, 1.0),
      domain_error);
}
