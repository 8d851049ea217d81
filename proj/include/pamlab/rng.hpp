#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pamlab {

// SplitMix64 step; used to derive independent child seeds from a base seed
// so that parallel Monte Carlo loops stay reproducible regardless of
// scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t s = base + 0x632be59bd9b4e019ULL * (index + 1);
  return splitmix64(s);
}

// Normal sampler on top of mt19937_64 (fully specified by the standard).
// Box-Muller is spelled out here instead of std::normal_distribution so the
// produced streams are identical across standard libraries.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    // 53-bit mantissa uniform in (0,1]; never returns 0 so log() is safe.
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = uniform01();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * M_PI * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace pamlab
