#include "tophom/branching_tree.hpp"

#include <algorithm>
#include <cmath>

#include "tophom/errors.hpp"
#include "tophom/parallel.hpp"

namespace tophom {

BranchingTree::BranchingTree(int d) : d_(d), next_vertex_(static_cast<Vertex>(d)) {
  if (d < 1) throw InvalidInput("dimension must be at least 1");
  for (int i = 0; i < d; ++i) ridge_vertices_.push_back(static_cast<Vertex>(i));
  ridge_depth_.push_back(0);
  layers_.push_back({0});
}

std::span<const Vertex> BranchingTree::ridge(std::uint32_t id) const {
  return {ridge_vertices_.data() + static_cast<std::size_t>(id) * static_cast<std::size_t>(d_),
          static_cast<std::size_t>(d_)};
}

Face BranchingTree::root() const {
  auto r = ridge(0);
  return Face(std::vector<Vertex>(r.begin(), r.end()));
}

Face BranchingTree::face(std::size_t i) const {
  auto r = ridge(faces_[i].parent);
  std::vector<Vertex> v(r.begin(), r.end());
  v.push_back(faces_[i].apex);
  return Face(std::move(v));
}

std::size_t BranchingTree::grow(std::uint32_t parent) {
  if (parent >= ridge_depth_.size()) throw InvalidInput("unknown ridge");
  const Vertex apex = next_vertex_++;
  const int depth = ridge_depth_[parent] + 1;
  if (static_cast<std::size_t>(depth) >= layers_.size()) layers_.resize(static_cast<std::size_t>(depth) + 1);
  const std::size_t du = static_cast<std::size_t>(d_);
  // drop the largest parent vertex first: keeps new ridges in colex order
  for (std::size_t skip = du; skip-- > 0;) {
    for (std::size_t j = 0; j < du; ++j)
      if (j != skip) ridge_vertices_.push_back(ridge_vertices_[parent * du + j]);
    ridge_vertices_.push_back(apex);
    const auto id = static_cast<std::uint32_t>(ridge_depth_.size());
    ridge_depth_.push_back(depth);
    layers_[static_cast<std::size_t>(depth)].push_back(id);
  }
  faces_.push_back({parent, apex});
  return faces_.size() - 1;
}

BranchingTree BranchingTree::truncated(int depth) const {
  BranchingTree out(d_);
  // faces are stored layer by layer, so the kept faces form a prefix and
  // replaying them reproduces the same ridge ids and vertex labels
  for (const TreeFace& f : faces_) {
    if (ridge_depth_[f.parent] >= depth) break;
    out.grow(f.parent);
  }
  return out;
}

Complex BranchingTree::to_complex() const {
  std::vector<Face> list;
  list.reserve(faces_.size());
  for (std::size_t i = 0; i < faces_.size(); ++i) list.push_back(face(i));
  return Complex::from_faces(std::max<std::uint32_t>(next_vertex_, static_cast<std::uint32_t>(d_) + 1), d_, list);
}

Incidence BranchingTree::incidence() const {
  Incidence inc;
  inc.d = d_;
  const std::uint32_t n = std::max<std::uint32_t>(next_vertex_, static_cast<std::uint32_t>(d_) + 1);
  inc.total_ridges = binomial(n, static_cast<std::uint64_t>(d_));
  const std::size_t du = static_cast<std::size_t>(d_);

  // a bare root has degree zero and is not listed
  const std::uint32_t first = faces_.empty() ? 1u : 0u;
  inc.ridge_keys.reserve(ridge_depth_.size());
  for (std::uint32_t id = first; id < ridge_depth_.size(); ++id) inc.ridge_keys.push_back(colex_rank(ridge(id)));

  inc.face_keys.reserve(faces_.size());
  inc.face_ridges.reserve(faces_.size() * (du + 1));
  std::vector<Vertex> v(du + 1);
  std::vector<std::uint32_t> sub(du + 1);
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    const TreeFace& f = faces_[i];
    auto r = ridge(f.parent);
    std::copy(r.begin(), r.end(), v.begin());
    v[du] = f.apex;
    inc.face_keys.push_back(colex_rank(v));
    // same slot order as make_incidence: slot i omits vertex i; the apex is
    // last, so slot d is the parent and slot j < d is the new ridge that
    // omits parent vertex j (created in reverse)
    const auto first_new = static_cast<std::uint32_t>(1 + i * du);
    for (std::size_t j = 0; j < du; ++j) sub[j] = first_new + static_cast<std::uint32_t>(du - 1 - j);
    sub[du] = f.parent;
    for (std::uint32_t id : sub) inc.face_ridges.push_back(id - first);
  }
  inc.build_csr();
  return inc;
}

BranchingTree sample_tree(int d, int k, double c, Rng& rng) {
  if (k < 0) throw InvalidInput("radius must be non-negative");
  if (!(c >= 0.0)) throw InvalidInput("c must be non-negative");
  BranchingTree tree(d);
  for (int r = 1; r <= k; ++r) {
    if (static_cast<std::size_t>(r - 1) >= static_cast<std::size_t>(tree.radius() + 1)) break;
    const std::vector<std::uint32_t> frontier = tree.layer(r - 1);
    for (std::uint32_t theta : frontier) {
      const std::uint32_t j = rng.poisson(c);
      for (std::uint32_t t = 0; t < j; ++t) tree.grow(theta);
    }
  }
  return tree;
}

RootFate root_generation(const BranchingTree& tree, int k) {
  CollapseOptions options;
  options.max_phases = k;
  options.theta = colex_rank(tree.ridge(0));
  const CollapseTrace trace = collapse(tree.incidence(), options);
  RootFate fate;
  if (trace.theta_isolated_phase) fate.isolated_phase = *trace.theta_isolated_phase;
  return fate;
}

namespace {

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t samples) {
  Estimate e;
  e.samples = samples;
  e.value = static_cast<double>(hits) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(samples));
  return e;
}

}  // namespace

std::vector<Estimate> estimate_gamma_series(int d, double c, int r_max, std::uint64_t samples, std::uint64_t seed,
                                            unsigned threads) {
  if (samples < 1) throw InvalidInput("need at least one sample");
  if (r_max < 0) throw InvalidInput("r_max must be non-negative");
  // isolated phase per sample, -1 when the root survives r_max - 1 phases
  std::vector<int> phase(samples);
  parallel_for(samples, threads, [&](std::uint64_t i) {
    Rng rng(derive_seed(seed, i));
    const BranchingTree tree = sample_tree(d, r_max, c, rng);
    phase[i] = root_generation(tree, std::max(r_max - 1, 0)).isolated_phase;
  });
  std::vector<Estimate> out;
  for (int r = 0; r <= r_max; ++r) {
    const auto hits = static_cast<std::uint64_t>(
        std::count_if(phase.begin(), phase.end(), [r](int g) { return g >= 0 && g < r; }));
    out.push_back(binomial_estimate(hits, samples));
  }
  return out;
}

Estimate estimate_gamma(int d, double c, int r, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (r < 0) throw InvalidInput("r must be non-negative");
  return estimate_gamma_series(d, c, r, samples, seed, threads).back();
}

}  // namespace tophom
