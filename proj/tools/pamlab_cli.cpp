// Batch front-end: parses an experiment config, dispatches to the library,
// writes CSV/JSON artifacts and prints a short human-readable report.
//
// Exit status: 0 ok, 1 checks failed, 2 config parse error, 3 inadmissible
// parameters, 4 numerical/capacity failure.

#include <omp.h>

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "pamlab/errors.hpp"
#include "pamlab/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pamlab: parabolic Anderson model chaos laboratory"};
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int threads = 0;
  app.add_option("--config", config_path, "experiment config file")
      ->required();
  app.add_option("--seed", seed, "override mc.seed")->envname("PAMLAB_SEED");
  app.add_option("--threads", threads, "cap worker threads")
      ->envname("PAMLAB_THREADS");
  app.add_option("--out", out_dir, "override io.out directory")
      ->envname("PAMLAB_OUT");
  CLI11_PARSE(app, argc, argv);

  if (threads > 0) omp_set_num_threads(threads);

  try {
    pamlab::ExperimentConfig cfg = pamlab::parse_config_file(config_path);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    const pamlab::ExperimentOutcome outcome = pamlab::run_experiment(cfg);
    for (const auto& [key, value] : outcome.printed)
      std::printf("%s = %.17g\n", key.c_str(), value);
    for (const auto& check : outcome.checks)
      std::printf("[%s] %s (value %.6g, threshold %.6g)\n",
                  check.pass ? "PASS" : "FAIL", check.name.c_str(),
                  check.value, check.threshold);
    for (const auto& file : outcome.csv_files)
      std::printf("wrote %s\n", file.c_str());
    return outcome.exit_code;
  } catch (const pamlab::config_error& e) {
    std::fprintf(stderr, "config error (line %d, field %s): %s\n", e.line(),
                 e.field().c_str(), e.what());
    return 2;
  } catch (const pamlab::domain_error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 4;
  }
}
