#include "pamlab/noise.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "pamlab/rng.hpp"

namespace pamlab {

NoiseDraw NoiseDraw::zero(const FrequencyTimeGrid& grid) {
  NoiseDraw d;
  d.values.assign(grid.n_cells(), {0.0, 0.0});
  d.grid_hash = grid.config_hash();
  return d;
}

NoiseDraw& NoiseDraw::operator+=(const NoiseDraw& other) {
  if (values.size() != other.values.size() || grid_hash != other.grid_hash)
    throw usage_error("NoiseDraw: cannot combine draws from different grids");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
  return *this;
}

NoiseDraw sample_noise(const FrequencyTimeGrid& grid, std::uint64_t seed) {
  NoiseDraw draw;
  draw.seed = seed;
  draw.grid_hash = grid.config_hash();
  draw.values.assign(grid.n_cells(), {0.0, 0.0});
  NormalSampler rng(seed);
  const double sigma = std::sqrt(0.5 * grid.cell_measure());
  // Canonical half: cells with index below their negation, visited in
  // ascending order so the stream layout is stable.
  for (int c = 0; c < grid.n_cells(); ++c) {
    const int nc = grid.negated(c);
    if (c > nc) continue;
    const double re = sigma * rng.normal();
    const double im = sigma * rng.normal();
    draw.values[c] = {re, im};
    draw.values[nc] = {re, -im};
  }
  return draw;
}

namespace {
constexpr std::uint64_t kMagic = 0x50414d4c41423031ULL;  // "PAMLAB01"
}

void save_noise(const NoiseDraw& draw, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw usage_error("save_noise: cannot open " + path);
  const std::uint64_t count = draw.values.size();
  bool ok = std::fwrite(&kMagic, sizeof(kMagic), 1, f) == 1 &&
            std::fwrite(&draw.grid_hash, sizeof(draw.grid_hash), 1, f) == 1 &&
            std::fwrite(&draw.seed, sizeof(draw.seed), 1, f) == 1 &&
            std::fwrite(&count, sizeof(count), 1, f) == 1 &&
            std::fwrite(draw.values.data(), sizeof(std::complex<double>),
                        count, f) == count;
  ok = (std::fclose(f) == 0) && ok;
  if (!ok) throw numerical_error("save_noise: write failed for " + path);
}

NoiseDraw cached_noise(const FrequencyTimeGrid& grid, std::uint64_t seed,
                       const std::string& cache_dir) {
  char name[64];
  std::snprintf(name, sizeof(name), "noise_%016llx_%llu.bin",
                static_cast<unsigned long long>(grid.config_hash()),
                static_cast<unsigned long long>(seed));
  const std::string path = cache_dir + "/" + name;
  if (std::FILE* probe = std::fopen(path.c_str(), "rb")) {
    std::fclose(probe);
    return load_noise(path, grid);
  }
  NoiseDraw draw = sample_noise(grid, seed);
  save_noise(draw, path);
  return draw;
}

NoiseDraw load_noise(const std::string& path, const FrequencyTimeGrid& grid) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw usage_error("load_noise: cannot open " + path);
  NoiseDraw draw;
  std::uint64_t magic = 0, count = 0;
  bool ok = std::fread(&magic, sizeof(magic), 1, f) == 1 &&
            std::fread(&draw.grid_hash, sizeof(draw.grid_hash), 1, f) == 1 &&
            std::fread(&draw.seed, sizeof(draw.seed), 1, f) == 1 &&
            std::fread(&count, sizeof(count), 1, f) == 1;
  if (ok && magic == kMagic &&
      count == static_cast<std::uint64_t>(grid.n_cells())) {
    draw.values.resize(count);
    ok = std::fread(draw.values.data(), sizeof(std::complex<double>), count,
                    f) == count;
  } else {
    ok = false;
  }
  std::fclose(f);
  if (!ok || draw.grid_hash != grid.config_hash())
    throw usage_error("load_noise: cache does not match grid: " + path);
  return draw;
}

}  // namespace pamlab
