#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tophom/errors.hpp"
#include "tophom/experiment.hpp"
#include "tophom/threshold.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitSolver = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random d-complex laboratory: collapse statistics, top homology and threshold constants"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores); results do not depend on it");

  int d = 2, d_min = 2, d_max = 3, r_max = 5;
  double c = 1.0, tol = tophom::kDefaultTol, c_min = 0.0, c_max = 0.0, step = 0.1;
  std::uint32_t n = 50, field = 2, complex_n = 500;
  std::uint64_t seed = 0, trials = 1, samples = 100000, complex_samples = 1000;
  std::string out_path;
  bool no_homology = false;

  auto* constants = app.add_subcommand("constants", "beta_d, c*_d, c_collapse and the large-d forms, as CSV");
  constants->add_option("--d-min", d_min)->required()->check(CLI::Range(1, 64));
  constants->add_option("--d-max", d_max)->required()->check(CLI::Range(1, 64));
  constants->add_option("--tol", tol)->check(CLI::PositiveNumber);

  auto* gamma = app.add_subcommand("gamma", "gamma_0..gamma_R and beta_0..beta_{R-1}, as CSV");
  gamma->add_option("--d", d)->required()->check(CLI::Range(1, 64));
  gamma->add_option("--c", c)->required()->check(CLI::NonNegativeNumber);
  gamma->add_option("--r-max", r_max)->required()->check(CLI::NonNegativeNumber);

  auto* sample = app.add_subcommand("sample", "collapse and homology summary of one X_d(n, c/n), as JSON");
  sample->add_option("--n", n)->required();
  sample->add_option("--d", d)->required()->check(CLI::Range(1, 64));
  sample->add_option("--c", c)->required()->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", seed)->required();
  sample->add_option("--field", field, "prime field size");
  sample->add_flag("--no-homology", no_homology, "skip the h_d computation");

  auto* process = app.add_subcommand("process", "first emerging cycle of the random face process");
  process->add_option("--n", n)->required();
  process->add_option("--d", d)->required()->check(CLI::Range(1, 64));
  process->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  process->add_option("--seed", seed)->required();
  process->add_option("--out", out_path, "JSON-lines file for per-trial records");
  process->add_option("--field", field, "prime field size");

  auto* scan = app.add_subcommand("threshold-scan", "fraction of s_* > 0 and h_d > 0 across a c grid, as CSV");
  scan->add_option("--n", n)->required();
  scan->add_option("--d", d)->required()->check(CLI::Range(1, 64));
  scan->add_option("--c-min", c_min)->required()->check(CLI::NonNegativeNumber);
  scan->add_option("--c-max", c_max)->required()->check(CLI::NonNegativeNumber);
  scan->add_option("--step", step)->required()->check(CLI::PositiveNumber);
  scan->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  scan->add_option("--seed", seed)->required();
  scan->add_option("--field", field, "prime field size");
  scan->add_flag("--no-homology", no_homology, "skip the h_d computation");

  auto* gw = app.add_subcommand("gw", "tree Monte Carlo and complex measurement of gamma_r vs the recurrence");
  gw->add_option("--d", d)->required()->check(CLI::Range(1, 64));
  gw->add_option("--c", c)->required()->check(CLI::NonNegativeNumber);
  gw->add_option("--r-max", r_max)->required()->check(CLI::NonNegativeNumber);
  gw->add_option("--samples", samples)->required();
  gw->add_option("--seed", seed)->required();
  gw->add_option("--n", complex_n, "vertices of the sampled complex")->capture_default_str();
  gw->add_option("--complex-samples", complex_samples, "(d-1)-faces probed in the complex, 0 to skip")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*constants) {
      if (d_max < d_min) throw tophom::InvalidInput("--d-max must not be below --d-min");
      std::vector<tophom::ThresholdConstants> rows;
      for (int k = d_min; k <= d_max; ++k) rows.push_back(tophom::threshold_constants(k, tol));
      tophom::write_constants_csv(std::cout, rows);
    } else if (*gamma) {
      tophom::write_gamma_csv(std::cout, d, c, tophom::gamma_recurrence(d, c, r_max));
    } else if (*sample) {
      std::cout << tophom::to_json(tophom::sample_summary(n, d, c, seed, field, !no_homology)) << '\n';
    } else if (*process) {
      const auto batch = tophom::process_experiment(n, d, trials, seed, threads, field);
      if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw tophom::InvalidInput("cannot open " + out_path);
        for (const auto& r : batch.records) out << tophom::to_jsonl(r) << '\n';
      }
      std::cout << tophom::to_json(batch) << '\n';
    } else if (*scan) {
      const auto grid = tophom::make_grid(c_min, c_max, step);
      tophom::write_scan_csv(std::cout, n, d,
                             tophom::threshold_scan(n, d, grid, trials, seed, field, !no_homology, threads));
    } else if (*gw) {
      tophom::GwOptions options;
      options.complex_n = complex_n;
      options.complex_ridges = complex_samples;
      tophom::write_gw_csv(std::cout, tophom::gw_validation(d, {c}, r_max, samples, seed, threads, options));
    }
  } catch (const tophom::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const tophom::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (last iterate " << tophom::format_double(e.last_iterate()) << ")\n";
    return kExitSolver;
  } catch (const tophom::SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
