#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tophom/branching_tree.hpp"
#include "tophom/threshold.hpp"

namespace tophom {

// ---- growing process: first emerging cycle ---------------------------------

enum class CycleKind { simplex_boundary, giant };

std::string to_string(CycleKind kind);

struct FirstCycleRecord {
  std::uint64_t trial = 0;
  std::uint32_t n = 0;
  int d = 0;
  std::uint64_t seed = 0;
  std::uint64_t m_first = 0;  // d-faces present when the first cycle appears
  CycleKind kind = CycleKind::giant;
  std::uint64_t support_size = 0;
  std::uint64_t vertex_support = 0;
  double c_hat = 0.0;  // m_first * n / C(n, d+1)
};

/// Adds the d-faces of the full complex in a seeded uniform order until the
/// boundary matrix gains a kernel, and classifies the first cycle.
FirstCycleRecord run_process(std::uint32_t n, int d, std::uint64_t seed, std::uint32_t p = 2);

struct ProcessAggregate {
  std::uint64_t trials = 0;
  std::uint64_t simplex_boundary = 0;
  std::uint64_t giant = 0;
  double fraction_simplex_boundary = 0.0;
  /// over giant-kind trials only
  double mean_c_hat = 0.0;
  double sd_c_hat = 0.0;       // sample standard deviation
  double sem_c_hat = 0.0;      // standard error of the mean
  double fraction_full_vertex_support = 0.0;
  std::map<std::uint64_t, std::uint64_t> vertex_support_histogram;
};

ProcessAggregate aggregate(const std::vector<FirstCycleRecord>& records);

struct ProcessBatch {
  std::uint32_t n = 0;
  int d = 0;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  std::uint32_t p = 2;
  std::vector<FirstCycleRecord> records;  // by trial index
  ProcessAggregate summary;
};

/// Trial t uses seed derive_seed(master_seed, t).
ProcessBatch process_experiment(std::uint32_t n, int d, std::uint64_t trials, std::uint64_t master_seed,
                                unsigned threads = 1, std::uint32_t p = 2);

// ---- single complex ----------------------------------------------------------

struct SampleSummary {
  std::uint64_t f_d = 0;
  std::uint64_t zeta_star = 0;
  std::int64_t s_star = 0;
  std::optional<std::uint64_t> h_d;
  int phases = 0;
};

SampleSummary sample_summary(std::uint32_t n, int d, double c, std::uint64_t seed, std::uint32_t p = 2,
                             bool with_homology = true);

// ---- threshold scan ----------------------------------------------------------

/// a, a+h, ..., up to b (inclusive, with a small tolerance on the last step).
std::vector<double> make_grid(double a, double b, double h);

struct ScanRow {
  double c = 0.0;
  std::uint64_t trials = 0;
  int k_star = 0;
  double frac_s_positive = 0.0;
  std::optional<double> frac_h_positive;
  double mean_s_density = 0.0;  // s_* / C(n, d)
  double sd_s_density = 0.0;
  double theory_density = 0.0;  // expected_s_density at k_star
  /// trials with s_* > 0 but h_d = 0; must stay 0
  std::uint64_t criterion_violations = 0;
};

/// Trial t at grid point g uses derive_seed(derive_seed(seed, g), t). Trials
/// collapse for min(select_k_star(d, c), 50) phases or until stable.
std::vector<ScanRow> threshold_scan(std::uint32_t n, int d, const std::vector<double>& c_grid,
                                    std::uint64_t trials, std::uint64_t seed, std::uint32_t p = 2,
                                    bool with_homology = true, unsigned threads = 1);

// ---- tree model vs recurrence vs complex ---------------------------------------

struct GwRow {
  int d = 0;
  double c = 0.0;
  int r = 0;
  Estimate tree;
  double theory = 0.0;
  std::optional<Estimate> complex;  // sampled (d-1)-faces of one X_d(n, c/n)
};

struct GwOptions {
  std::uint32_t complex_n = 500;
  std::uint64_t complex_ridges = 1000;  // 0 skips the complex measurement
};

/// For each c and r <= r_max: tree Monte Carlo gamma_r, the recurrence value,
/// and the fraction of (d-1)-faces of a sampled complex whose face-collapse
/// isolates them before phase r.
std::vector<GwRow> gw_validation(int d, const std::vector<double>& c_grid, int r_max, std::uint64_t samples,
                                 std::uint64_t seed, unsigned threads = 1, const GwOptions& options = {});

// ---- output ------------------------------------------------------------------

/// %.17g
std::string format_double(double x);

std::string to_jsonl(const FirstCycleRecord& record);
std::string to_json(const ProcessBatch& batch);  // config + aggregate, one line
std::string to_json(const SampleSummary& summary);

void write_constants_csv(std::ostream& out, const std::vector<ThresholdConstants>& rows);
void write_gamma_csv(std::ostream& out, int d, double c, const GammaSeries& series);
void write_scan_csv(std::ostream& out, std::uint32_t n, int d, const std::vector<ScanRow>& rows);
void write_gw_csv(std::ostream& out, const std::vector<GwRow>& rows);

}  // namespace tophom
