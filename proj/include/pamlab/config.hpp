#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pamlab/errors.hpp"
#include "pamlab/grid.hpp"

namespace pamlab {

// Config file problem with position diagnostics (CLI exit status 2).
class config_error : public std::runtime_error {
 public:
  config_error(const std::string& what, int line, const std::string& field)
      : std::runtime_error(what), line_(line), field_(field) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

// Flat key = value sections; see README for the schema.
struct ExperimentConfig {
  std::string command;

  // [params]
  std::string family = "regular";
  int dim = 1;
  double alpha = 0.5;
  double hurst = 0.3;
  double hurst0 = 0.75;
  double window_a = 0.0;
  double window_b = 0.0;

  // [grid]
  GridConfig grid;
  int k_max = 3;
  int tensor_nodes = 0;  // 0 = auto

  // [mc]
  int draws = 500;
  std::uint64_t samples = 10000000;
  std::uint64_t seed = 12345;

  // [experiment]
  double t = 1.0;
  double x = 0.0;
  std::string u0_text = "lebesgue 1";
  int order = 1;        // chaos order (variance) or simplex order n
  double h_exp = -0.5;  // simplex-check exponent
  int n_steps = 6;      // converge sequence length
  double step0 = 0.0;   // converge initial gap (0 = family default)
  double pstar = 0.0;   // converge target (0 = family default)
  int tail_m_lo = 5;
  int tail_m_hi = 15;
  double t0 = 0.5;
  double t_max = 2.0;
  double box = 1.0;
  double beta = 0.45;  // regular Holder exponent parameter
  double c0 = 0.1;     // rough Holder slack parameter
  int moment_p = 2;
  int n_params = 5;
  std::vector<double> ladder = {0.15, 0.2121320343559643, 0.3,
                                0.4242640687119285, 0.6};

  // [io]
  std::string out_dir = "out";
  std::string cache_path;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace pamlab
