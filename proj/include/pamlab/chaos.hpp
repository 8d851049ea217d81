#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pamlab/grid.hpp"
#include "pamlab/initial_measure.hpp"
#include "pamlab/kernels.hpp"
#include "pamlab/noise.hpp"
#include "pamlab/params.hpp"

namespace pamlab {

// Pointwise spectral weight attached to one (tau, xi) noise factor:
//   sqrt(g_0(tau)) * |xi|^{-alpha/2}                      (regular)
//   sqrt(c_{H0}) |tau|^{(1-2H0)/2} sqrt(c_H) |xi|^{(1-2H)/2}   (rough)
double spectral_weight(const SpatialParam& param, const TemporalParam& temporal,
                       double tau, std::span<const double> xi);

// Cell-averaged weights: w[c] = sqrt(m_spec(cell)/leb(cell)) where m_spec is
// the exact spectral mass of the cell. Exact power-law antiderivatives keep
// the singular cells next to the origin unbiased. Lattice dimension 1 only;
// the simulation lane runs the d=1 noise families only.
std::vector<double> cell_weights(const FrequencyTimeGrid& grid,
                                 const SpatialParam& param,
                                 const TemporalParam& temporal);

struct TensorConfig {
  int k_max = 3;
  // Simplex quadrature nodes per time dimension; 0 means auto from the
  // tau-cutoff (enough to resolve exp(-i tau t) across the cell range).
  int nodes_per_dim = 0;
  bool tau_cell_average = true;  // average the tau phase over each cell
  bool parallel = true;
};

// Dense tensor of F_t[F_x f_{t,x,k}] evaluated on the grid's cell centers
// (tau direction optionally cell-averaged), Hermitian by construction:
// T(neg c_1,...,neg c_k) = conj(T(c_1,...,c_k)).
struct ChaosTensor {
  int order = 0;
  int n_cells = 0;
  double t = 0.0;
  double rms = 0.0;  // root-mean-square entry, scale for residue checks
  std::vector<std::complex<double>> values;  // n_cells^order, last index fastest

  const std::complex<double>& at(std::span<const int> cells) const;
};

ChaosTensor build_chaos_tensor(const FrequencyTimeGrid& grid, int order,
                               double t, std::span<const double> x,
                               const InitialMeasure& u0,
                               const TensorConfig& config);

// Pointwise k-dimensional simplex quadrature of
//   int_{T_k(t)} exp(-i taus . s) F_x f_{t,x,k}(s,.)(xis) ds.
std::complex<double> time_fourier_of_kernel(double t, std::span<const double> x,
                                            std::span<const double> taus,
                                            std::span<const double> xis,
                                            const InitialMeasure& u0,
                                            const TensorConfig& config = {});

struct ChaosEvaluation {
  int order = 0;
  double t = 0.0;
  std::vector<double> x;
  double value = 0.0;
  std::optional<double> variance;  // E|I_k|^2 when computed alongside
  SpatialParam param;
  std::uint64_t grid_hash = 0;  // lattice the draw lived on
};

// Evaluates chaos integrals of orders 1..k_max at one space-time point on a
// fixed grid. Tensors are built lazily per order and reused across noise
// draws and across spatial parameters (the parameter enters only through
// the weights, which is exactly the coupling).
class ChaosEvaluator {
 public:
  ChaosEvaluator(const FrequencyTimeGrid& grid, const TemporalParam& temporal,
                 double t, std::span<const double> x, const InitialMeasure& u0,
                 const TensorConfig& config = {});

  double t() const { return t_; }
  const FrequencyTimeGrid& grid() const { return grid_; }
  double mean_field() const { return w_; }  // w(t,x)
  double mean_field_plus() const { return w_plus_; }

  // Discrete multiple integral of order k against the draw; the raw sum is
  // real up to roundoff by Hermitian symmetry, checked and discarded.
  double integral(int order, const SpatialParam& param, const NoiseDraw& draw);

  // w(t,x) + sum_{k<=m} I_k.
  double truncated_solution(int m, const SpatialParam& param,
                            const NoiseDraw& draw);

  // Deterministic E|I_k|^2 of the discrete model (pair-distinct sum of the
  // symmetrized tensor against the cell spectral masses).
  double grid_variance(int order, const SpatialParam& param);

  const ChaosTensor& tensor(int order);
  const std::vector<double>& weights(const SpatialParam& param);

 private:
  FrequencyTimeGrid grid_;
  TemporalParam temporal_;
  double t_;
  std::vector<double> x_;
  InitialMeasure u0_;
  TensorConfig config_;
  double w_ = 0.0;
  double w_plus_ = 0.0;
  std::map<int, ChaosTensor> tensors_;
  std::map<std::pair<int, double>, std::vector<double>> weight_cache_;
};

// One-shot convenience wrappers over ChaosEvaluator.
ChaosEvaluation chaos_integral(int order, const SpatialParam& param,
                               const TemporalParam& temporal,
                               const FrequencyTimeGrid& grid,
                               const NoiseDraw& draw, double t,
                               std::span<const double> x,
                               const InitialMeasure& u0,
                               const TensorConfig& config = {});

double truncated_solution(int m, const SpatialParam& param,
                          const TemporalParam& temporal,
                          const FrequencyTimeGrid& grid, const NoiseDraw& draw,
                          double t, std::span<const double> x,
                          const InitialMeasure& u0,
                          const TensorConfig& config = {});

}  // namespace pamlab
