#include "tophom/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "tophom/collapse.hpp"
#include "tophom/complex.hpp"
#include "tophom/errors.hpp"
#include "tophom/homology.hpp"
#include "tophom/parallel.hpp"
#include "tophom/rng.hpp"

namespace tophom {

std::string to_string(CycleKind kind) {
  return kind == CycleKind::simplex_boundary ? "simplex-boundary" : "giant";
}

FirstCycleRecord run_process(std::uint32_t n, int d, std::uint64_t seed, std::uint32_t p) {
  if (d < 1 || n <= static_cast<std::uint32_t>(d) + 1) throw InvalidInput("need n > d + 1 and d >= 1");
  const std::uint64_t total = binomial(n, static_cast<std::uint64_t>(d) + 1);
  std::vector<FaceRank> order(total);
  std::iota(order.begin(), order.end(), FaceRank{0});
  Rng rng(seed);
  rng.shuffle(std::span<FaceRank>(order));

  Reducer reducer(n, d, p, CycleRecords::until_first_cycle);
  FirstCycleRecord rec;
  rec.n = n;
  rec.d = d;
  rec.seed = seed;
  for (std::uint64_t m = 0; m < total; ++m) {
    PushResult res = reducer.push(order[m]);
    if (res.independent) continue;
    std::vector<Face> support;
    support.reserve(res.support.size());
    for (FaceRank r : res.support) support.push_back(unrank_face(r, d, n));
    rec.m_first = m + 1;
    rec.support_size = support.size();
    rec.vertex_support = vertex_support(support);
    rec.kind = is_simplex_boundary(support) ? CycleKind::simplex_boundary : CycleKind::giant;
    rec.c_hat = static_cast<double>(rec.m_first) * n / static_cast<double>(total);
    return rec;
  }
  // the full complex on n >= d+2 vertices always has top homology
  throw std::logic_error("process ended without a cycle");
}

ProcessAggregate aggregate(const std::vector<FirstCycleRecord>& records) {
  ProcessAggregate a;
  a.trials = records.size();
  std::vector<double> c_hats;
  std::uint64_t full = 0;
  for (const auto& r : records) {
    if (r.kind == CycleKind::simplex_boundary) {
      ++a.simplex_boundary;
      continue;
    }
    ++a.giant;
    c_hats.push_back(r.c_hat);
    ++a.vertex_support_histogram[r.vertex_support];
    if (r.vertex_support == r.n) ++full;
  }
  if (a.trials > 0) a.fraction_simplex_boundary = static_cast<double>(a.simplex_boundary) / static_cast<double>(a.trials);
  if (!c_hats.empty()) {
    const double k = static_cast<double>(c_hats.size());
    a.mean_c_hat = std::accumulate(c_hats.begin(), c_hats.end(), 0.0) / k;
    if (c_hats.size() > 1) {
      double ss = 0.0;
      for (double x : c_hats) ss += (x - a.mean_c_hat) * (x - a.mean_c_hat);
      a.sd_c_hat = std::sqrt(ss / (k - 1));
      a.sem_c_hat = a.sd_c_hat / std::sqrt(k);
    }
    a.fraction_full_vertex_support = static_cast<double>(full) / k;
  }
  return a;
}

ProcessBatch process_experiment(std::uint32_t n, int d, std::uint64_t trials, std::uint64_t master_seed,
                                unsigned threads, std::uint32_t p) {
  if (trials < 1) throw InvalidInput("need at least one trial");
  ProcessBatch batch;
  batch.n = n;
  batch.d = d;
  batch.trials = trials;
  batch.master_seed = master_seed;
  batch.p = p;
  batch.records.resize(trials);
  parallel_for(trials, threads, [&](std::uint64_t t) {
    batch.records[t] = run_process(n, d, derive_seed(master_seed, t), p);
    batch.records[t].trial = t;
  });
  batch.summary = aggregate(batch.records);
  return batch;
}

SampleSummary sample_summary(std::uint32_t n, int d, double c, std::uint64_t seed, std::uint32_t p,
                             bool with_homology) {
  const Complex x = sample_complex(n, d, c, seed);
  const CollapseTrace trace = run_phases(x);
  SampleSummary s;
  s.f_d = x.num_faces();
  s.zeta_star = trace.zeta_star();
  s.s_star = trace.s_star();
  s.phases = trace.k_stop();
  if (with_homology) s.h_d = h_d(x, p);
  return s;
}

std::vector<double> make_grid(double a, double b, double h) {
  if (!(h > 0.0)) throw InvalidInput("grid step must be positive");
  if (b < a) throw InvalidInput("grid end must not precede its start");
  std::vector<double> grid;
  const auto steps = static_cast<std::uint64_t>(std::floor((b - a) / h + 1e-9));
  for (std::uint64_t i = 0; i <= steps; ++i) grid.push_back(a + static_cast<double>(i) * h);
  return grid;
}

std::vector<ScanRow> threshold_scan(std::uint32_t n, int d, const std::vector<double>& c_grid,
                                    std::uint64_t trials, std::uint64_t seed, std::uint32_t p,
                                    bool with_homology, unsigned threads) {
  if (trials < 1) throw InvalidInput("need at least one trial");
  for (double c : c_grid)
    if (!(c >= 0.0) || c / n > 1.0) throw InvalidInput("grid value " + format_double(c) + " outside [0, n]");
  const double ridges = static_cast<double>(binomial(n, static_cast<std::uint64_t>(d)));

  std::vector<ScanRow> rows;
  for (std::size_t g = 0; g < c_grid.size(); ++g) {
    const double c = c_grid[g];
    ScanRow row;
    row.c = c;
    row.trials = trials;
    row.k_star = std::min(select_k_star(d, c), 50);
    row.theory_density = expected_s_density(d, c, row.k_star);

    struct Outcome {
      std::int64_t s;
      std::uint64_t h;
    };
    std::vector<Outcome> out(trials);
    const std::uint64_t grid_seed = derive_seed(seed, g);
    parallel_for(trials, threads, [&](std::uint64_t t) {
      const Complex x = sample_complex(n, d, c, derive_seed(grid_seed, t));
      out[t].s = run_phases(x, row.k_star).s_star();
      out[t].h = with_homology ? h_d(x, p) : 0;
    });

    std::uint64_t s_pos = 0, h_pos = 0;
    double sum = 0.0;
    for (const auto& o : out) {
      s_pos += o.s > 0;
      h_pos += o.h > 0;
      if (with_homology && o.s > 0 && o.h == 0) ++row.criterion_violations;
      sum += static_cast<double>(o.s) / ridges;
    }
    const double k = static_cast<double>(trials);
    row.frac_s_positive = static_cast<double>(s_pos) / k;
    if (with_homology) row.frac_h_positive = static_cast<double>(h_pos) / k;
    row.mean_s_density = sum / k;
    if (trials > 1) {
      double ss = 0.0;
      for (const auto& o : out) {
        const double dev = static_cast<double>(o.s) / ridges - row.mean_s_density;
        ss += dev * dev;
      }
      row.sd_s_density = std::sqrt(ss / (k - 1));
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

Estimate frequency(std::uint64_t hits, std::uint64_t samples) {
  Estimate e;
  e.samples = samples;
  e.value = static_cast<double>(hits) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.value * (1 - e.value) / static_cast<double>(samples));
  return e;
}

}  // namespace

std::vector<GwRow> gw_validation(int d, const std::vector<double>& c_grid, int r_max, std::uint64_t samples,
                                 std::uint64_t seed, unsigned threads, const GwOptions& options) {
  if (samples < 1000) throw InvalidInput("gw validation needs at least 1000 samples");
  if (r_max < 0) throw InvalidInput("r_max must be non-negative");
  std::vector<GwRow> rows;
  for (std::size_t g = 0; g < c_grid.size(); ++g) {
    const double c = c_grid[g];
    const std::uint64_t c_seed = derive_seed(seed, g);
    const auto tree = estimate_gamma_series(d, c, r_max, samples, derive_seed(c_seed, 0), threads);
    const GammaSeries theory = gamma_recurrence(d, c, r_max);

    std::vector<Estimate> direct;
    if (options.complex_ridges > 0) {
      const Complex x = sample_complex(options.complex_n, d, c, derive_seed(c_seed, 1));
      const Incidence inc = make_incidence(x);
      Rng pick(derive_seed(c_seed, 2));
      std::vector<FaceRank> ridges(options.complex_ridges);
      for (auto& r : ridges) r = pick.below(x.num_ridges());
      std::vector<int> phase(ridges.size());
      parallel_for(ridges.size(), threads, [&](std::uint64_t i) {
        CollapseOptions o;
        o.max_phases = std::max(r_max - 1, 0);
        o.theta = ridges[i];
        const auto trace = collapse(inc, o);
        phase[i] = trace.theta_isolated_phase.value_or(-1);
      });
      for (int r = 0; r <= r_max; ++r) {
        const auto hits = static_cast<std::uint64_t>(
            std::count_if(phase.begin(), phase.end(), [r](int p) { return p >= 0 && p < r; }));
        direct.push_back(frequency(hits, ridges.size()));
      }
    }

    for (int r = 0; r <= r_max; ++r) {
      GwRow row;
      row.d = d;
      row.c = c;
      row.r = r;
      row.tree = tree[static_cast<std::size_t>(r)];
      row.theory = theory.gamma[static_cast<std::size_t>(r)];
      if (!direct.empty()) row.complex = direct[static_cast<std::size_t>(r)];
      rows.push_back(row);
    }
  }
  return rows;
}

// ---- output --------------------------------------------------------------------

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::string to_jsonl(const FirstCycleRecord& r) {
  return fmt::format(
      R"({{"trial":{},"n":{},"d":{},"seed":{},"m_first":{},"kind":"{}","support_size":{},"vertex_support":{},"c_hat":{}}})",
      r.trial, r.n, r.d, r.seed, r.m_first, to_string(r.kind), r.support_size, r.vertex_support,
      format_double(r.c_hat));
}

std::string to_json(const ProcessBatch& b) {
  const auto& a = b.summary;
  std::string hist;
  for (const auto& [support, count] : a.vertex_support_histogram)
    hist += fmt::format("{}\"{}\":{}", hist.empty() ? "" : ",", support, count);
  return fmt::format(
      R"x({{"n":{},"d":{},"trials":{},"master_seed":{},"field":{},"c_hat_estimator":"m_first * n / C(n, d+1)",)x"
      R"("simplex_boundary":{},"giant":{},"fraction_simplex_boundary":{},"giant_mean_c_hat":{},)"
      R"("giant_sd_c_hat":{},"giant_sem_c_hat":{},"giant_fraction_full_vertex_support":{},)"
      R"("giant_vertex_support_histogram":{{{}}}}})",
      b.n, b.d, b.trials, b.master_seed, b.p, a.simplex_boundary, a.giant, format_double(a.fraction_simplex_boundary),
      format_double(a.mean_c_hat), format_double(a.sd_c_hat), format_double(a.sem_c_hat),
      format_double(a.fraction_full_vertex_support), hist);
}

std::string to_json(const SampleSummary& s) {
  return fmt::format(R"({{"f_d":{},"zeta_star":{},"s_star":{},"h_d":{},"phases":{}}})", s.f_d, s.zeta_star,
                     s.s_star, s.h_d ? std::to_string(*s.h_d) : "null", s.phases);
}

void write_constants_csv(std::ostream& out, const std::vector<ThresholdConstants>& rows) {
  out << "d,beta_d,c_star,c_collapse,beta_asym,c_star_asym\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{},{}\n", r.d, format_double(r.beta_d), format_double(r.c_star),
                       format_double(r.c_collapse), format_double(r.beta_asym), format_double(r.c_star_asym));
}

void write_gamma_csv(std::ostream& out, int d, double c, const GammaSeries& series) {
  out << "d,c,r,gamma,beta\n";
  for (std::size_t r = 0; r < series.gamma.size(); ++r) {
    const std::string beta = r < series.beta.size() ? format_double(series.beta[r]) : "";
    out << fmt::format("{},{},{},{},{}\n", d, format_double(c), r, format_double(series.gamma[r]), beta);
  }
}

void write_scan_csv(std::ostream& out, std::uint32_t n, int d, const std::vector<ScanRow>& rows) {
  out << "n,d,c,trials,k_star,frac_s_positive,frac_h_positive,mean_s_density,sd_s_density,theory_density,"
         "criterion_violations\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", n, d, format_double(r.c), r.trials, r.k_star,
                       format_double(r.frac_s_positive),
                       r.frac_h_positive ? format_double(*r.frac_h_positive) : "", format_double(r.mean_s_density),
                       format_double(r.sd_s_density), format_double(r.theory_density), r.criterion_violations);
}

void write_gw_csv(std::ostream& out, const std::vector<GwRow>& rows) {
  out << "d,c,r,samples,estimate,std_error,theory_value,complex_samples,complex_estimate,complex_std_error\n";
  for (const auto& r : rows) {
    std::string tail = ",,";
    if (r.complex)
      tail = fmt::format("{},{},{}", r.complex->samples, format_double(r.complex->value),
                         format_double(r.complex->std_error));
    out << fmt::format("{},{},{},{},{},{},{},{}\n", r.d, format_double(r.c), r.r, r.tree.samples,
                       format_double(r.tree.value), format_double(r.tree.std_error), format_double(r.theory), tail);
  }
}

}  // namespace tophom
