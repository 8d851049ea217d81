#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "pamlab/errors.hpp"

namespace pamlab {

// Signed initial measure u0 on R^d, restricted to a class that is closed
// under heat evolution and Fourier integrals: point masses, isotropic
// Gaussian density components and a Lebesgue component. Every member
// satisfies the Gaussian integrability condition
//   int exp(-a|x|^2) |u0|(dx) < infinity  for all a > 0.
class InitialMeasure {
 public:
  struct Atom {
    std::vector<double> location;
    double weight = 0.0;
  };
  struct GaussianComponent {
    std::vector<double> mean;
    double sigma2 = 0.0;  // > 0
    double weight = 0.0;
  };

  explicit InitialMeasure(int dim);

  int dim() const { return dim_; }
  void add_atom(std::span<const double> location, double weight);
  void add_gaussian(std::span<const double> mean, double sigma2,
                    double weight);
  void add_lebesgue(double weight);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<GaussianComponent>& gaussians() const {
    return gaussians_;
  }
  bool has_lebesgue() const { return has_lebesgue_; }
  double lebesgue_weight() const { return lebesgue_weight_; }
  bool empty() const {
    return atoms_.empty() && gaussians_.empty() && !has_lebesgue_;
  }

  // Componentwise absolute weights (the Jordan variation |u0|).
  InitialMeasure total_variation() const;

  // Text form: one component per line or ';'-separated,
  //   atom <x1..xd> <weight> | gauss <m1..md> <sigma2> <weight>
  //   | lebesgue <weight>
  std::string to_text() const;
  static InitialMeasure from_text(const std::string& text, int dim);

  // Stable identity for caching (hash of the component list).
  std::uint64_t content_hash() const;

 private:
  int dim_;
  std::vector<Atom> atoms_;
  std::vector<GaussianComponent> gaussians_;
  bool has_lebesgue_ = false;
  double lebesgue_weight_ = 0.0;
};

// Canonical single-component measures.
InitialMeasure dirac_measure(std::span<const double> location,
                             double weight = 1.0);
InitialMeasure dirac_measure_1d(double location, double weight = 1.0);
InitialMeasure lebesgue_measure(int dim, double weight = 1.0);

struct IntegrabilityWitness {
  bool integrable = true;  // always true on this class
  double witness = 0.0;    // int exp(-|x|^2) |u0|(dx)
};

IntegrabilityWitness check_integrability(const InitialMeasure& u0);

struct HeatEvolution {
  double w = 0.0;       // int G_t(x-y) u0(dy)
  double w_plus = 0.0;  // same with |u0|
  double t = 0.0;
  std::vector<double> x;
};

// Solution of the homogeneous heat equation started from u0.
HeatEvolution heat_evolve(const InitialMeasure& u0, double t,
                          std::span<const double> x);

// int exp(-i c.x0) G_t(x - x0) u0(dx0); the measure-dependent factor of the
// chaos-kernel Fourier transform. Closed form per component.
std::complex<double> oscillatory_heat_integral(const InitialMeasure& u0,
                                               double t,
                                               std::span<const double> x,
                                               std::span<const double> c);

}  // namespace pamlab
