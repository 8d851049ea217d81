#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pamlab/grid.hpp"

namespace pamlab {

// One realization of the complex Gaussian white noise on a grid. One draw is
// reused for every spatial parameter value; this is the coupling that the
// convergence-in-law experiments rely on.
//
// Conventions: value(-tau,-xi) = conj(value(tau,xi)); on each canonical
// half-lattice cell the real and imaginary parts are independent centered
// Gaussians of variance cell_measure/2, so E|value|^2 = cell_measure.
struct NoiseDraw {
  std::vector<std::complex<double>> values;
  std::uint64_t seed = 0;
  std::uint64_t grid_hash = 0;

  static NoiseDraw zero(const FrequencyTimeGrid& grid);
  NoiseDraw& operator+=(const NoiseDraw& other);
};

NoiseDraw sample_noise(const FrequencyTimeGrid& grid, std::uint64_t seed);

// Binary cache keyed by (grid hash, seed). Loading onto a mismatched grid
// fails.
void save_noise(const NoiseDraw& draw, const std::string& path);
NoiseDraw load_noise(const std::string& path, const FrequencyTimeGrid& grid);

// Cache-through sampling: reuses <dir>/noise_<gridhash>_<seed>.bin when
// present, otherwise samples and persists.
NoiseDraw cached_noise(const FrequencyTimeGrid& grid, std::uint64_t seed,
                       const std::string& cache_dir);

}  // namespace pamlab
