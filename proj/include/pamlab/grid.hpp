#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pamlab/errors.hpp"
#include "pamlab/params.hpp"

namespace pamlab {

// Defaults sized so that order-3 tensors fit the memory budget; push the
// resolution up (and k_max down) for fine order-1/2 work.
struct GridConfig {
  double tau_max = 24.0;  // truncation of the temporal frequency axis
  double xi_max = 8.0;    // truncation of each spatial frequency axis
  int n_tau = 24;         // cells on the tau axis (even, >= 8)
  int n_xi = 8;           // cells per spatial axis (even, >= 8)
  int dim = 1;            // spatial dimension of the lattice
  std::uint64_t max_tensor_bytes = 1ULL << 31;  // tensor memory budget
};

// Truncated symmetric lattice over [-T_tau, T_tau] x [-R, R]^d. Both axes
// are half-cell offset so no cell is centered at zero, and every cell pairs
// with its negation (Hermitian pairing of the driving noise).
class FrequencyTimeGrid {
 public:
  explicit FrequencyTimeGrid(const GridConfig& config);

  const GridConfig& config() const { return config_; }
  int dim() const { return config_.dim; }
  int n_cells() const { return n_cells_; }
  double tau_width() const { return tau_width_; }
  double xi_width() const { return xi_width_; }
  double cell_measure() const { return cell_measure_; }

  double tau_center(int cell) const { return tau_centers_[cell / xi_block_]; }
  // i-th spatial coordinate of the cell center.
  double xi_center(int cell, int axis) const;
  int negated(int cell) const { return negated_[cell]; }
  int pair_id(int cell) const { return std::min(cell, negated_[cell]); }
  int hermitian_pairs() const { return n_cells_ / 2; }

  // Axis decomposition: cell = tau_index * (n_xi^d) + xi_flat.
  int tau_index(int cell) const { return cell / xi_block_; }
  int xi_flat(int cell) const { return cell % xi_block_; }

  std::uint64_t config_hash() const;

 private:
  GridConfig config_;
  int n_cells_ = 0;
  int xi_block_ = 0;
  double tau_width_ = 0.0;
  double xi_width_ = 0.0;
  double cell_measure_ = 0.0;
  std::vector<double> tau_centers_;
  std::vector<double> xi_centers_;
  std::vector<int> negated_;
};

FrequencyTimeGrid build_grid(const GridConfig& config);

}  // namespace pamlab
