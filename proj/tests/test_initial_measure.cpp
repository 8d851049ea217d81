#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>

#include "pamlab/initial_measure.hpp"
#include "pamlab/kernels.hpp"
#include "pamlab/rng.hpp"
#include "support/test_oracles.hpp"

using namespace pamlab;

namespace {

InitialMeasure two_atoms() {
  InitialMeasure m(1);
  const double p1[1] = {1.0}, m1[1] = {-1.0};
  m.add_atom(p1, 1.0);
  m.add_atom(m1, -1.0);
  return m;
}

}  // namespace

TEST_CASE("integrability witness") {
  auto w = check_integrability(dirac_measure_1d(0.0));
  CHECK(w.integrable);
  CHECK(w.witness == doctest::Approx(1.0));

  w = check_integrability(lebesgue_measure(1));
  CHECK(w.witness == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));

  w = check_integrability(two_atoms());
  CHECK(w.witness == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("heat evolution closed forms") {
  const double x0[1] = {0.0};
  CHECK(heat_evolve(lebesgue_measure(1), 0.3, x0).w == doctest::Approx(1.0));

  const double x[1] = {0.7};
  const auto he = heat_evolve(dirac_measure_1d(0.0), 2.0, x);
  CHECK(he.w == doctest::Approx(heat_kernel_1d(2.0, 0.7)).epsilon(1e-15));

  const auto odd = heat_evolve(two_atoms(), 0.5, x0);
  CHECK(odd.w == doctest::Approx(0.0));
  CHECK(odd.w_plus == doctest::Approx(2.0 * heat_kernel_1d(0.5, 1.0)));

  InitialMeasure g(1);
  g.add_gaussian(x0, 1.0, 1.0);
  const auto gv = heat_evolve(g, 1.0, x0);
  CHECK(gv.w == doctest::Approx(std::pow(4.0 * M_PI, -0.5)).epsilon(1e-14));
  // numerical convolution oracle
  const double conv = testo::adaptive_simpson(
      [](double y) {
        return heat_kernel_1d(1.0, -y) * heat_kernel_1d(1.0, y);
      },
      -12.0, 12.0);
  CHECK(gv.w == doctest::Approx(conv).epsilon(1e-9));

  CHECK_THROWS_AS(heat_evolve(g, 0.0, x0), domain_error);
}

TEST_CASE("oscillatory heat integral") {
  const double x[1] = {0.4};
  const double zero[1] = {0.0};
  const double c2[1] = {2.0};

  // c = 0 reduces to w
  const auto m = two_atoms();
  const auto w = heat_evolve(m, 0.8, x);
  CHECK(oscillatory_heat_integral(m, 0.8, x, zero).real() ==
        doctest::Approx(w.w).epsilon(1e-14));

  // atom at origin: modulus independent of c
  const auto d0 = dirac_measure_1d(0.0);
  CHECK(std::abs(oscillatory_heat_integral(d0, 0.8, x, c2)) ==
        doctest::Approx(heat_kernel_1d(0.8, 0.4)).epsilon(1e-14));

  // Lebesgue, t=1, c=2, x=0 -> exp(-2)
  const auto leb = lebesgue_measure(1);
  const auto v = oscillatory_heat_integral(leb, 1.0, zero, c2);
  CHECK(v.real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
  // oscillatory quadrature oracle
  const double re = testo::adaptive_simpson(
      [](double y) { return std::cos(2.0 * y) * heat_kernel_1d(1.0, y); },
      -10.0, 10.0);
  CHECK(v.real() == doctest::Approx(re).epsilon(1e-9));

  // Gaussian component vs quadrature oracle. Panelled so the recursion
  // never sees only near-zero probes of the oscillatory integrand.
  auto panelled = [](const std::function<double(double)>& f) {
    double acc = 0.0;
    for (int p = -6; p < 6; ++p)
      acc += testo::adaptive_simpson(f, 2.0 * p, 2.0 * (p + 1));
    return acc;
  };
  InitialMeasure g(1);
  const double mu[1] = {0.3};
  g.add_gaussian(mu, 0.7, 1.3);
  const auto gv = oscillatory_heat_integral(g, 0.9, x, c2);
  const double gre = panelled([&](double y) {
    return 1.3 * std::cos(2.0 * y) * heat_kernel_1d(0.9, 0.4 - y) *
           heat_kernel_1d(0.7, y - 0.3);
  });
  const double gim = panelled([&](double y) {
    return -1.3 * std::sin(2.0 * y) * heat_kernel_1d(0.9, 0.4 - y) *
           heat_kernel_1d(0.7, y - 0.3);
  });
  CHECK(gv.real() == doctest::Approx(gre).epsilon(1e-9));
  CHECK(gv.imag() == doctest::Approx(gim).epsilon(1e-9));
}

TEST_CASE("modulus bounded by w_plus") {
  NormalSampler rng(99);
  InitialMeasure m(1);
  const double a1[1] = {0.5}, a2[1] = {-1.5}, mu[1] = {0.2};
  m.add_atom(a1, 0.8);
  m.add_atom(a2, -1.1);
  m.add_gaussian(mu, 0.5, -0.4);
  m.add_lebesgue(0.3);
  for (int i = 0; i < 1000; ++i) {
    const double t = 0.05 + 2.0 * rng.uniform01();
    const double x[1] = {4.0 * rng.uniform01() - 2.0};
    const double c[1] = {20.0 * rng.uniform01() - 10.0};
    const auto he = heat_evolve(m, t, x);
    CHECK(std::abs(oscillatory_heat_integral(m, t, x, c)) <=
          he.w_plus * (1.0 + 1e-12));
  }
}

TEST_CASE("semigroup property on the closed class") {
  InitialMeasure m(1);
  const double a1[1] = {0.5}, mu[1] = {-0.4};
  m.add_atom(a1, 2.0);
  m.add_gaussian(mu, 0.3, -0.7);
  m.add_lebesgue(0.25);

  const double t = 0.6, s = 0.9;
  // evolve components by t into a Gaussian mixture
  InitialMeasure evolved(1);
  for (const auto& a : m.atoms()) evolved.add_gaussian(a.location, t, a.weight);
  for (const auto& g : m.gaussians())
    evolved.add_gaussian(g.mean, g.sigma2 + t, g.weight);
  evolved.add_lebesgue(m.lebesgue_weight());

  for (double xv : {-1.0, 0.0, 0.7}) {
    const double x[1] = {xv};
    CHECK(heat_evolve(evolved, s, x).w ==
          doctest::Approx(heat_evolve(m, t + s, x).w).epsilon(1e-12));
  }
}

TEST_CASE("linearity of heat evolution") {
  InitialMeasure u(1), v(1), sum(1);
  const double a[1] = {0.3}, b[1] = {-0.9};
  u.add_atom(a, 1.5);
  v.add_gaussian(b, 0.4, -0.8);
  sum.add_atom(a, 1.5);
  sum.add_gaussian(b, 0.4, -0.8);
  const double x[1] = {0.1};
  CHECK(heat_evolve(sum, 0.7, x).w ==
        heat_evolve(u, 0.7, x).w + heat_evolve(v, 0.7, x).w);
}

TEST_CASE("text serialization") {
  InitialMeasure m(1);
  const double a[1] = {1.0};
  m.add_atom(a, -2.5);
  m.add_gaussian(a, 0.75, 0.5);
  m.add_lebesgue(1.0);
  const InitialMeasure back = InitialMeasure::from_text(m.to_text(), 1);
  CHECK(back.atoms().size() == 1);
  CHECK(back.gaussians().size() == 1);
  CHECK(back.has_lebesgue());
  CHECK(back.content_hash() == m.content_hash());

  const InitialMeasure semi =
      InitialMeasure::from_text("atom 1 1; atom -1 -1", 1);
  CHECK(semi.atoms().size() == 2);

  CHECK_THROWS_AS(InitialMeasure::from_text("", 1), usage_error);
  CHECK_THROWS_AS(InitialMeasure::from_text("blob 1 2", 1), usage_error);
  CHECK_THROWS_AS(InitialMeasure::from_text("atom 1", 1), usage_error);
  CHECK_THROWS_AS(InitialMeasure::from_text("gauss 0 -1 1", 1), domain_error);
}
