#include <doctest.h>

#include <cmath>

#include "tophom/branching_tree.hpp"
#include "tophom/collapse.hpp"
#include "tophom/errors.hpp"
#include "tophom/rng.hpp"
#include "tophom/threshold.hpp"

using namespace tophom;

TEST_CASE("degenerate trees are a bare root") {
  Rng rng(1);
  for (int d : {1, 2, 3}) {
    const auto a = sample_tree(d, 0, 3.0, rng);
    const auto b = sample_tree(d, 5, 0.0, rng);
    for (const auto* t : {&a, &b}) {
      CHECK(t->num_faces() == 0);
      CHECK(t->num_ridges() == 1);
      CHECK(t->num_vertices() == static_cast<std::uint32_t>(d));
      CHECK(t->radius() == 0);
      CHECK(root_generation(*t, 3).isolated_phase == 0);
    }
  }
  CHECK_THROWS_AS(sample_tree(2, -1, 1.0, rng), InvalidInput);
  CHECK_THROWS_AS(sample_tree(2, 2, -1.0, rng), InvalidInput);
  CHECK_THROWS_AS(BranchingTree(0), InvalidInput);
}

TEST_CASE("tree shape") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const int d = 1 + i % 3;
    const auto t = sample_tree(d, 4, 1.2, rng);
    CHECK(t.num_faces() == t.num_vertices() - static_cast<std::uint32_t>(d));
    CHECK(t.num_ridges() == 1 + t.num_faces() * static_cast<std::size_t>(d));
    CHECK(t.radius() <= 4);
    for (std::size_t f = 0; f < t.num_faces(); ++f) {
      const int depth = t.ridge_depth(t.faces()[f].parent);
      CHECK(depth < 4);
      CHECK(t.face(f).max_vertex() == t.faces()[f].apex);
    }
  }
}

TEST_CASE("direct incidence matches the generic one") {
  Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    const int d = 1 + i % 3;
    const auto t = sample_tree(d, 3, 1.5, rng);
    const Incidence inc = t.incidence();
    CHECK(inc == make_incidence(t.to_complex()));
    CHECK(std::is_sorted(inc.face_keys.begin(), inc.face_keys.end()));
  }
}

TEST_CASE("root-collapse empties a tree down to its root") {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    const auto t = sample_tree(2, 4, 1.0 + 0.05 * i, rng);
    const auto trace = theta_collapse(t.to_complex(), t.root());
    CHECK(trace.face_keys.size() == t.num_faces());
    CHECK(trace.remaining_faces(trace.k_stop()).empty());
    CHECK(trace.k_stop() <= t.radius() + 1);
    REQUIRE(trace.theta_isolated_phase.has_value());
    CHECK(root_generation(t, 100).isolated_phase == *trace.theta_isolated_phase);
  }
}

TEST_CASE("root generation of hand-built trees") {
  BranchingTree t(2);
  t.grow(0);  // face {0,1,2}; ridges 1={0,2}, 2={1,2}
  CHECK(root_generation(t, 0).isolated_phase == -1);
  CHECK(root_generation(t, 1).isolated_phase == 1);
  CHECK(root_generation(t, 1).isolated_before(2));
  CHECK_FALSE(root_generation(t, 1).isolated_before(1));

  // both new ridges carry a child: the first phase strips the children, the
  // second frees the root's face
  t.grow(1);
  t.grow(2);
  CHECK(root_generation(t, 1).survives());
  CHECK(root_generation(t, 2).isolated_phase == 2);

  // only one blocked side: the other new ridge is free in phase 1
  BranchingTree u(2);
  u.grow(0);
  u.grow(1);
  CHECK(root_generation(u, 1).isolated_phase == 1);
}

TEST_CASE("the verdict before phase r depends only on the radius-r ball") {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto t = sample_tree(2, 6, 1.0 + 0.01 * i, rng);
    for (int r = 1; r <= 5; ++r) {
      const bool full = root_generation(t, r - 1).isolated_before(r);
      const bool ball = root_generation(t.truncated(r), r - 1).isolated_before(r);
      CHECK(full == ball);
    }
  }
}

TEST_CASE("first layer size is Poisson(c)") {
  Rng rng(99);
  const double c = 2.5;
  const int samples = 100000;
  double sum = 0;
  for (int i = 0; i < samples; ++i) sum += static_cast<double>(sample_tree(2, 1, c, rng).num_faces());
  const double mean = sum / samples;
  CHECK(std::abs(mean - c) < 3.0 * std::sqrt(c / samples));
}

TEST_CASE("Monte Carlo gamma agrees with the recurrence") {
  const auto series = estimate_gamma_series(2, 1.0, 3, 20000, 42);
  const auto theory = gamma_recurrence(2, 1.0, 3).gamma;
  REQUIRE(series.size() == 4);
  CHECK(series[0].value == 0.0);
  CHECK(series[0].std_error == 0.0);
  for (int r = 1; r <= 3; ++r) {
    const auto& e = series[static_cast<std::size_t>(r)];
    CHECK(std::abs(e.value - theory[static_cast<std::size_t>(r)]) < 4.0 * e.std_error);
  }
  CHECK(std::abs(series[1].value - 0.367879441171) < 4.0 * series[1].std_error);
  CHECK(std::abs(series[2].value - 0.670604053156) < 4.0 * series[2].std_error);
  CHECK(estimate_gamma(2, 1.0, 0, 100, 1).value == 0.0);
}

TEST_CASE("gamma estimates do not depend on the thread count") {
  const auto one = estimate_gamma_series(2, 2.0, 3, 3000, 8, 1);
  const auto three = estimate_gamma_series(2, 2.0, 3, 3000, 8, 3);
  for (std::size_t r = 0; r < one.size(); ++r) CHECK(one[r].value == three[r].value);
  CHECK(estimate_gamma(2, 2.0, 3, 3000, 8).value == one.back().value);
}
