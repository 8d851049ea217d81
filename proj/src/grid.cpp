#include "pamlab/grid.hpp"

#include <cmath>
#include <cstring>

namespace pamlab {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

void check_axis(int n, double cutoff, const char* name) {
  if (!(cutoff > 0.0))
    throw domain_error(std::string("build_grid: ") + name +
                       " cutoff must be positive (symmetric lattice)");
  if (n < 8)
    throw domain_error(std::string("build_grid: ") + name +
                       " resolution must be >= 8 cells");
  if (n % 2 != 0)
    throw domain_error(std::string("build_grid: ") + name +
                       " resolution must be even (no cell centered at 0)");
}

}  // namespace

FrequencyTimeGrid::FrequencyTimeGrid(const GridConfig& config)
    : config_(config) {
  check_axis(config.n_tau, config.tau_max, "tau");
  check_axis(config.n_xi, config.xi_max, "xi");
  if (config.dim < 1 || config.dim > 2)
    throw domain_error("build_grid: lattice dimension must be 1 or 2");

  tau_width_ = 2.0 * config.tau_max / config.n_tau;
  xi_width_ = 2.0 * config.xi_max / config.n_xi;
  xi_block_ = 1;
  for (int i = 0; i < config.dim; ++i) xi_block_ *= config.n_xi;
  n_cells_ = config.n_tau * xi_block_;

  tau_centers_.resize(config.n_tau);
  for (int i = 0; i < config.n_tau; ++i)
    tau_centers_[i] = -config.tau_max + (i + 0.5) * tau_width_;
  xi_centers_.resize(config.n_xi);
  for (int i = 0; i < config.n_xi; ++i)
    xi_centers_[i] = -config.xi_max + (i + 0.5) * xi_width_;

  cell_measure_ = tau_width_;
  for (int i = 0; i < config.dim; ++i) cell_measure_ *= xi_width_;

  negated_.resize(n_cells_);
  for (int c = 0; c < n_cells_; ++c) {
    const int it = c / xi_block_;
    int rest = c % xi_block_;
    int neg_rest = 0;
    int stride = 1;
    for (int axis = 0; axis < config.dim; ++axis) {
      const int idx = rest % config.n_xi;
      neg_rest += (config.n_xi - 1 - idx) * stride;
      rest /= config.n_xi;
      stride *= config.n_xi;
    }
    negated_[c] = (config.n_tau - 1 - it) * xi_block_ + neg_rest;
  }
}

double FrequencyTimeGrid::xi_center(int cell, int axis) const {
  int rest = cell % xi_block_;
  for (int i = 0; i < axis; ++i) rest /= config_.n_xi;
  return xi_centers_[rest % config_.n_xi];
}

std::uint64_t FrequencyTimeGrid::config_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(&config_.tau_max, sizeof(double), h);
  h = fnv1a(&config_.xi_max, sizeof(double), h);
  h = fnv1a(&config_.n_tau, sizeof(int), h);
  h = fnv1a(&config_.n_xi, sizeof(int), h);
  h = fnv1a(&config_.dim, sizeof(int), h);
  return h;
}

FrequencyTimeGrid build_grid(const GridConfig& config) {
  return FrequencyTimeGrid(config);
}

}  // namespace pamlab
