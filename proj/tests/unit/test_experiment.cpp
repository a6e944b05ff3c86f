#include <doctest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tophom/combinatorics.hpp"
#include "tophom/errors.hpp"
#include "tophom/experiment.hpp"

using namespace tophom;

TEST_CASE("process on d+2 vertices ends with the simplex boundary") {
  for (int d = 1; d <= 3; ++d) {
    const auto n = static_cast<std::uint32_t>(d + 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto r = run_process(n, d, seed);
      CHECK(r.m_first == n);
      CHECK(r.kind == CycleKind::simplex_boundary);
      CHECK(r.support_size == n);
      CHECK(r.vertex_support == n);
      CHECK(r.c_hat == doctest::Approx(static_cast<double>(n) * n / binomial(n, d + 1)));
    }
  }
}

TEST_CASE("process records are deterministic and aggregate consistently") {
  const auto a = process_experiment(12, 2, 30, 77, 1);
  const auto b = process_experiment(12, 2, 30, 77, 3);
  REQUIRE(a.records.size() == 30);
  CHECK(to_json(a) == to_json(b));
  for (std::size_t t = 0; t < a.records.size(); ++t) {
    CHECK(to_jsonl(a.records[t]) == to_jsonl(b.records[t]));
    CHECK(a.records[t].trial == t);
    CHECK(a.records[t].seed == derive_seed(77, t));
    const auto again = run_process(12, 2, a.records[t].seed);
    CHECK(again.m_first == a.records[t].m_first);
    CHECK(again.support_size >= 4);
  }
  const auto agg = aggregate(a.records);
  CHECK(agg.trials == 30);
  CHECK(agg.simplex_boundary + agg.giant == 30);
  double sum = 0;
  std::uint64_t giants = 0;
  for (const auto& r : a.records)
    if (r.kind == CycleKind::giant) {
      sum += r.c_hat;
      ++giants;
    }
  if (giants > 0) CHECK(agg.mean_c_hat == doctest::Approx(sum / static_cast<double>(giants)));
  if (giants > 1) CHECK(agg.sem_c_hat == doctest::Approx(agg.sd_c_hat / std::sqrt(static_cast<double>(giants))));
  CHECK(std::isfinite(agg.mean_c_hat));
}

TEST_CASE("process output formats") {
  const auto batch = process_experiment(6, 2, 3, 5);
  const auto j = nlohmann::json::parse(to_json(batch));
  CHECK(j["n"] == 6);
  CHECK(j["trials"] == 3);
  CHECK(j.contains("c_hat_estimator"));
  const auto line = nlohmann::json::parse(to_jsonl(batch.records[0]));
  CHECK(line["trial"] == 0);
  CHECK((line["kind"] == "simplex-boundary" || line["kind"] == "giant"));
  CHECK(to_string(CycleKind::giant) == "giant");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("sample summary") {
  const auto s = sample_summary(10, 2, 3.0, 4);
  REQUIRE(s.h_d.has_value());
  CHECK(s.s_star <= static_cast<std::int64_t>(*s.h_d));
  CHECK_FALSE(sample_summary(10, 2, 3.0, 4, 2, false).h_d.has_value());
  const auto j = nlohmann::json::parse(to_json(s));
  CHECK(j["f_d"] == s.f_d);
  CHECK(sample_summary(10, 2, 0.0, 4).f_d == 0);
  CHECK_THROWS_AS(sample_summary(10, 2, 11.0, 4), InvalidInput);
}

TEST_CASE("grid") {
  CHECK(make_grid(0.0, 1.0, 0.25) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(make_grid(2.0, 2.3, 0.1).size() == 4);
  CHECK(make_grid(1.0, 1.0, 0.5).size() == 1);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), InvalidInput);
}

TEST_CASE("small threshold scan") {
  const auto rows = threshold_scan(12, 2, {0.0, 2.0, 5.0}, 6, 3, 2, true, 1);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].frac_s_positive == 0.0);
  CHECK(rows[0].mean_s_density == 0.0);
  CHECK(*rows[0].frac_h_positive == 0.0);
  for (const auto& r : rows) {
    CHECK(r.trials == 6);
    CHECK(r.criterion_violations == 0);
    CHECK(*r.frac_h_positive >= r.frac_s_positive);
    CHECK(r.k_star >= 1);
    CHECK(r.k_star <= 50);
  }
  const auto again = threshold_scan(12, 2, {0.0, 2.0, 5.0}, 6, 3, 2, true, 3);
  std::ostringstream a, b;
  write_scan_csv(a, 12, 2, rows);
  write_scan_csv(b, 12, 2, again);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("n,d,c,trials,k_star,", 0) == 0);
}

TEST_CASE("gw rows") {
  GwOptions opt;
  opt.complex_n = 60;
  opt.complex_ridges = 200;
  const auto rows = gw_validation(2, {1.0}, 2, 1000, 9, 1, opt);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.tree.samples == 1000);
    REQUIRE(r.complex.has_value());
    CHECK(r.complex->samples == 200);
  }
  CHECK(rows[0].tree.value == 0.0);
  CHECK(rows[0].complex->value == 0.0);
  opt.complex_ridges = 0;
  CHECK_FALSE(gw_validation(2, {1.0}, 1, 1000, 9, 1, opt)[0].complex.has_value());
  CHECK_THROWS_AS(gw_validation(2, {1.0}, 1, 10, 9), InvalidInput);
  std::ostringstream csv;
  write_gw_csv(csv, rows);
  CHECK(csv.str().rfind("d,c,r,samples,", 0) == 0);
}

TEST_CASE("constants and gamma csv") {
  std::ostringstream out;
  write_constants_csv(out, {threshold_constants(2)});
  CHECK(out.str().rfind("d,beta_d,c_star,", 0) == 0);
  std::ostringstream g;
  write_gamma_csv(g, 2, 1.0, gamma_recurrence(2, 1.0, 2));
  CHECK(g.str() == "d,c,r,gamma,beta\n2,1,0,0,0.63212055882855767\n2,1,1,0.36787944117144233,0.32939594684360929\n"
                   "2,1,2,0.67060405315639071,\n");
}
