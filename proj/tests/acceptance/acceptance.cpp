// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "tophom/branching_tree.hpp"
#include "tophom/collapse.hpp"
#include "tophom/complex.hpp"
#include "tophom/experiment.hpp"
#include "tophom/homology.hpp"
#include "tophom/rng.hpp"
#include "tophom/threshold.hpp"

using namespace tophom;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(const std::string& name, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!v.pass) ++failures;
  std::printf("%s %s (%.2fs) %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), secs, v.detail.c_str());
  std::fflush(stdout);
}

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

Verdict constants_reproduction() {
  const auto k2 = threshold_constants(2);
  const auto k3 = threshold_constants(3);
  const bool ok = within(k2.c_star, 2.75381, 5e-5) && within(k3.c_star, 3.90708, 5e-5) &&
                  within(k2.beta_d, 0.883414, 5e-6) && within(k3.beta_d, 0.972498, 5e-6);
  return {ok, fmt::format("c*_2={:.7f} c*_3={:.7f} beta_2={:.8f} beta_3={:.8f}", k2.c_star, k3.c_star, k2.beta_d,
                          k3.beta_d)};
}

Verdict asymptotics() {
  const double c8 = solve_c_star(8);
  const double b12 = solve_beta(12);
  const double c8_form = 9.0 - 73.0 * std::exp(-9.0);
  const double b12_form = 1.0 - std::exp(-13.0) - 169.0 * std::exp(-26.0);
  const bool ok_c = within(c8, c8_form, 1e-4);
  const bool ok_b = within(b12, b12_form, 1e-8);
  return {ok_c && ok_b, fmt::format("|c*_8 - (9-73e^-9)|={:.3g} [{}] |beta_12 - form|={:.3g} [{}]",
                                    std::abs(c8 - c8_form), ok_c ? "ok" : "over 1e-4", std::abs(b12 - b12_form),
                                    ok_b ? "ok" : "over 1e-8")};
}

Verdict criticality() {
  bool ok = true;
  std::string detail;
  for (int d = 2; d <= 6; ++d) {
    const double cs = solve_c_star(d);
    const double at = expected_s_density(d, cs, 200);
    const double below = expected_s_density(d, cs - 0.05, 200);
    const double above = expected_s_density(d, cs + 0.05, 200);
    const bool row = std::abs(at) < 1e-8 && below < 0.0 && above > 0.0 && cs - 0.05 > solve_c_collapse(d);
    ok = ok && row;
    detail += fmt::format("d={}:{:.1e} ", d, at);
  }
  return {ok, detail};
}

Verdict invariance() {
  Rng pick(20240601);
  std::size_t checked = 0, positive_s = 0, batch_checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::uint32_t>(6 + pick.below(3));
    const double c = 6.0 * pick.uniform();
    const Complex x = sample_complex(n, 2, c, derive_seed(4, static_cast<std::uint64_t>(trial)));
    const CollapseTrace t = run_phases(x);
    const auto h = h_d(x);
    for (int i = 0; i <= t.k_stop(); ++i)
      if (h_d(Complex::from_ranks(n, 2, t.remaining_faces(i))) != h)
        return {false, fmt::format("h_2 changed at trial {} phase {}", trial, i)};
    if (t.s_star() > 0) {
      ++positive_s;
      if (h == 0) return {false, fmt::format("s_*>0 with h_2=0 at trial {}", trial)};
    }
    if (trial < 100) {
      Reducer red(n, 2, 2, CycleRecords::none);
      for (auto r : x.face_ranks()) red.push(r);
      if (red.rank() != batch_rank(boundary_matrix(x, 2)))
        return {false, fmt::format("incremental/batch rank differ at trial {}", trial)};
      ++batch_checked;
    }
    ++checked;
  }
  return {true, fmt::format("{} complexes, {} with s_*>0, {} rank cross-checks", checked, positive_s, batch_checked)};
}

Verdict sphere_oracle() {
  const auto h = h_d(Complex::full(4, 2));
  const auto t = run_phases(Complex::from_faces(4, 2, std::vector<Face>{Face{0, 1, 2}}));
  const bool ok = h == 1 && t.zeta_star() == 5 && t.s_star() == 0;
  return {ok, fmt::format("h_2(sphere)={} zeta_*={} s_*={}", h, t.zeta_star(), t.s_star())};
}

Verdict tree_vs_recurrence() {
  bool ok = true;
  std::string detail;
  double worst = 0.0;
  for (double c : {1.0, 2.0, 3.0, 4.0}) {
    const auto est = estimate_gamma_series(2, c, 4, 100000, derive_seed(6, static_cast<std::uint64_t>(c)), 0);
    const auto theory = gamma_recurrence(2, c, 4).gamma;
    for (int r = 0; r <= 4; ++r) {
      const auto& e = est[static_cast<std::size_t>(r)];
      const double diff = std::abs(e.value - theory[static_cast<std::size_t>(r)]);
      if (e.std_error > 0) worst = std::max(worst, diff / e.std_error);
      if (diff > 4.0 * e.std_error) ok = false;
    }
    if (c == 3.0) {
      const double b1 = 1.0 - est[2].value;
      const double sigma = est[2].std_error;
      const bool in_band = std::abs(b1 - 0.933417) <= 4.0 * sigma;
      ok = ok && in_band;
      detail += fmt::format("beta_1(2,3)={:.6f}+-{:.6f} (recurrence {:.6f}) ", b1, sigma, 1.0 - theory[2]);
    }
  }
  detail += fmt::format("max |z|={:.2f}", worst);
  return {ok, detail};
}

Verdict process_first_cycle() {
  const auto batch = process_experiment(50, 2, 200, 7, 0);
  const auto& a = batch.summary;
  const bool ok = a.giant > 0 && a.mean_c_hat >= 2.64 && a.mean_c_hat <= 2.77 && a.fraction_full_vertex_support >= 0.95;
  // diagnostic only: giant-kind trials whose support spans at least n/2 vertices
  double large_sum = 0.0;
  std::size_t large = 0;
  for (const auto& r : batch.records)
    if (r.kind == CycleKind::giant && 2 * r.vertex_support >= r.n) {
      large_sum += r.c_hat;
      ++large;
    }
  return {ok, fmt::format("giant={}/{} mean c_hat={:.5f} sd={:.5f} sem={:.5f} full support={:.3f}; "
                          "supports on >= n/2 vertices: {} trials, mean c_hat={:.5f}",
                          a.giant, a.trials, a.mean_c_hat, a.sd_c_hat, a.sem_c_hat, a.fraction_full_vertex_support,
                          large, large ? large_sum / static_cast<double>(large) : 0.0)};
}

Verdict density_mc() {
  const auto rows = threshold_scan(300, 2, {3.0}, 20, 8, 2, false, 0);
  const auto& r = rows.front();
  const bool ok = r.mean_s_density >= 0.03 && r.mean_s_density <= 0.09;
  return {ok, fmt::format("mean s_*/C(n,2)={:.5f} sd={:.5f} theory={:.5f} k*={}", r.mean_s_density, r.sd_s_density,
                          r.theory_density, r.k_star)};
}

Verdict lipschitz() {
  Rng pick(9);
  std::uint64_t worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const double c = 6.0 * pick.uniform();
    const Complex x = sample_complex(10, 2, c, derive_seed(9, static_cast<std::uint64_t>(trial)));
    if (x.num_faces() == x.num_possible_faces()) continue;
    FaceRank s;
    do s = pick.below(x.num_possible_faces());
    while (x.contains(s));
    const auto z = zeta_perturbation(x, unrank_face(s, 2, 10), 3);
    worst = std::max(worst, z.difference);
    if (z.bound != 24 || !z.bound_ok) return {false, fmt::format("trial {} difference {}", trial, z.difference)};
  }
  return {true, fmt::format("max |dzeta_*|={} <= 24", worst)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / fmt::format("tophom_accept_{}", std::chrono::steady_clock::now().time_since_epoch().count());
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"constants", "constants --d-min 2 --d-max 6"},
      {"gamma", "gamma --d 2 --c 3 --r-max 6"},
      {"sample", "sample --n 20 --d 2 --c 3 --seed 5"},
      {"process", "process --n 14 --d 2 --trials 12 --seed 5 --out {out}"},
      {"scan", "threshold-scan --n 20 --d 2 --c-min 1 --c-max 4 --step 1 --trials 4 --seed 5"},
      {"gw", "gw --d 2 --c 2 --r-max 3 --samples 2000 --seed 5 --n 60 --complex-samples 100"},
  };
  std::string detail;
  bool ok = true;
  for (const auto& [name, args] : commands) {
    std::string outputs[2];
    for (int k = 0; k < 2; ++k) {
      const unsigned threads = k == 0 ? 1 : 3;
      const fs::path stdout_file = dir / fmt::format("{}_{}.out", name, threads);
      const fs::path record_file = dir / fmt::format("{}_{}.jsonl", name, threads);
      std::string a = args;
      if (auto pos = a.find("{out}"); pos != std::string::npos) a.replace(pos, 5, record_file.string());
      const std::string cmd = fmt::format("\"{}\" --threads {} {} > \"{}\"", cli, threads, a, stdout_file.string());
      if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + cmd};
      outputs[k] = slurp(stdout_file) + (fs::exists(record_file) ? slurp(record_file) : "");
    }
    const bool same = outputs[0] == outputs[1] && !outputs[0].empty();
    ok = ok && same;
    detail += name + (same ? ":same " : ":DIFFERENT ");
  }
  fs::remove_all(dir);
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  run("1 constants reproduction", constants_reproduction);
  run("2 asymptotic forms", asymptotics);
  run("3 criticality identity", criticality);
  run("4 collapse/homology invariance", invariance);
  run("5 sphere and single-face oracle", sphere_oracle);
  run("6 branching tree vs recurrence", tree_vs_recurrence);
  run("7 process experiment n=50", process_first_cycle);
  run("8 density Monte Carlo n=300", density_mc);
  run("9 Lipschitz bound", lipschitz);
  if (cli.empty())
    run("10 determinism", [] { return Verdict{false, "CLI path not given"}; });
  else
    run("10 determinism", [&] { return determinism(cli); });
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
