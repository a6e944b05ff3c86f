#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tophom/collapse.hpp"
#include "tophom/combinatorics.hpp"
#include "tophom/complex.hpp"
#include "tophom/rng.hpp"

namespace tophom {

/// A rooted d-tree grown layer by layer. The root is the (d-1)-face
/// {0, ..., d-1}; every d-face is a frontier (d-1)-face joined to a fresh
/// vertex, so vertex labels increase in creation order.
class BranchingTree {
 public:
  struct TreeFace {
    std::uint32_t parent;  // ridge id the face was grown from
    Vertex apex;           // the new vertex
  };

  explicit BranchingTree(int d);

  int d() const noexcept { return d_; }
  std::uint32_t num_vertices() const noexcept { return next_vertex_; }
  std::size_t num_faces() const noexcept { return faces_.size(); }
  std::size_t num_ridges() const noexcept { return ridge_depth_.size(); }
  /// Largest ridge distance from the root.
  int radius() const noexcept { return static_cast<int>(layers_.size()) - 1; }

  std::span<const Vertex> ridge(std::uint32_t id) const;
  int ridge_depth(std::uint32_t id) const { return ridge_depth_[id]; }
  const std::vector<std::uint32_t>& layer(int r) const { return layers_[static_cast<std::size_t>(r)]; }
  const std::vector<TreeFace>& faces() const noexcept { return faces_; }
  Face face(std::size_t i) const;
  Face root() const;

  /// Adds a d-face on ridge `parent` with a new vertex; returns the face index.
  std::size_t grow(std::uint32_t parent);

  /// The sub-tree made of faces grown from ridges at depth < depth.
  BranchingTree truncated(int depth) const;

  Complex to_complex() const;
  /// Same incidence as make_incidence(to_complex()), built without ranking
  /// against the whole vertex set.
  Incidence incidence() const;

 private:
  int d_;
  Vertex next_vertex_;
  std::vector<Vertex> ridge_vertices_;  // d per ridge
  std::vector<int> ridge_depth_;
  std::vector<std::vector<std::uint32_t>> layers_;
  std::vector<TreeFace> faces_;
};

/// A draw from the Poisson(c) Galton-Watson d-tree model of radius <= k.
BranchingTree sample_tree(int d, int k, double c, Rng& rng);

/// How the root fared under root-collapse.
struct RootFate {
  /// phase after which the root had degree 0; 0 = bare root; -1 = still
  /// attached after the phases examined
  int isolated_phase = -1;
  bool survives() const noexcept { return isolated_phase < 0; }
  /// The root belongs to a generation earlier than r.
  bool isolated_before(int r) const noexcept { return !survives() && isolated_phase < r; }
};

/// Root-collapses the tree for up to k phases.
RootFate root_generation(const BranchingTree& tree, int k);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Monte Carlo gamma_r: fraction of radius-r trees whose root is isolated
/// before phase r. Sample i uses derive_seed(seed, i), so the result does not
/// depend on `threads`.
Estimate estimate_gamma(int d, double c, int r, std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

/// gamma_0..gamma_{r_max} from one batch of radius-r_max trees.
std::vector<Estimate> estimate_gamma_series(int d, double c, int r_max, std::uint64_t samples, std::uint64_t seed,
                                            unsigned threads = 1);

}  // namespace tophom
