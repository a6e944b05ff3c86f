#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tophom/combinatorics.hpp"
#include "tophom/complex.hpp"

namespace tophom {

// Terminology: "faces" are d-faces, "ridges" are (d-1)-faces.

/// Face/ridge incidence of a complex, the input of the collapse engine.
/// Only ridges of positive degree are listed; the remaining
/// total_ridges - ridge_keys.size() ridges are isolated from the start.
struct Incidence {
  int d = 0;
  std::uint64_t total_ridges = 0;
  std::vector<FaceRank> face_keys;      // colex ranks, ascending
  std::vector<FaceRank> ridge_keys;     // colex ranks, ascending
  std::vector<std::uint32_t> face_ridges;  // d+1 compact ridge ids per face
  std::vector<std::uint32_t> ridge_offsets;  // CSR ridge -> faces
  std::vector<std::uint32_t> ridge_faces;

  std::size_t num_faces() const noexcept { return face_keys.size(); }
  std::size_t num_ridges() const noexcept { return ridge_keys.size(); }
  std::span<const std::uint32_t> ridges_of(std::size_t face) const {
    const std::size_t k = static_cast<std::size_t>(d) + 1;
    return {face_ridges.data() + face * k, k};
  }
  std::span<const std::uint32_t> faces_of(std::size_t ridge) const {
    return {ridge_faces.data() + ridge_offsets[ridge], ridge_offsets[ridge + 1] - ridge_offsets[ridge]};
  }

  /// Fills ridge_offsets/ridge_faces from face_ridges.
  void build_csr();

  friend bool operator==(const Incidence&, const Incidence&) = default;
};

Incidence make_incidence(const Complex& x);

/// Phase label of a face or ridge.
struct Generation {
  enum class Kind { phase, isolated_at_start, alive };
  Kind kind = Kind::alive;
  int phase = 0;  // meaningful for Kind::phase

  static Generation at(int phase) { return {Kind::phase, phase}; }
  static Generation isolated() { return {Kind::isolated_at_start, 0}; }
  static Generation survived() { return {Kind::alive, 0}; }

  friend bool operator==(const Generation&, const Generation&) = default;
};

struct CollapsePair {
  FaceRank ridge;  // the free (d-1)-face
  FaceRank face;   // its unique d-face
  friend bool operator==(const CollapsePair&, const CollapsePair&) = default;
};

/// Record of a phased collapse run. Index i of the *_by_phase vectors refers
/// to R_i, the complex after phase i (i = 0 is the input).
struct CollapseTrace {
  int d = 0;
  std::uint64_t total_ridges = 0;
  std::vector<FaceRank> face_keys;
  std::vector<FaceRank> ridge_keys;
  /// 0 = alive at k_stop, otherwise the phase that removed the face / emptied the ridge
  std::vector<std::uint32_t> face_generation;
  std::vector<std::uint32_t> ridge_generation;
  /// true when the ridge left through an elementary collapse rather than isolation
  std::vector<bool> ridge_collapsed;

  std::vector<std::vector<CollapsePair>> phases;
  std::vector<std::uint64_t> f_d_by_phase;
  std::vector<std::uint64_t> f_dm1_by_phase;
  /// zero rows of M_i: ridges still in R_i with degree 0 (C0 plus C1 so far)
  std::vector<std::uint64_t> zeta_by_phase;
  std::vector<std::int64_t> s_by_phase;

  /// theta-collapse only: phase after which theta had degree 0 (0 = isolated at start)
  std::optional<FaceRank> theta;
  std::optional<int> theta_isolated_phase;

  int k_stop() const noexcept { return static_cast<int>(phases.size()); }
  std::uint64_t isolated_at_start() const { return zeta_by_phase.front(); }
  std::uint64_t zeta_star() const { return zeta_by_phase.back(); }
  std::int64_t s_star() const { return s_by_phase.back(); }
  /// Zero rows plus rows removed by collapse, after phase i.
  std::uint64_t zeta_with_removed(int i) const;

  /// Ranks of the d-faces of R_i.
  std::vector<FaceRank> remaining_faces(int i) const;
};

struct CollapseOptions {
  int max_phases = 1 << 20;
  std::optional<FaceRank> theta;  // never collapsed
  /// scan each phase's list in a seeded random order instead of ascending rank
  std::optional<std::uint64_t> shuffle_seed;
};

CollapseTrace collapse(const Incidence& inc, const CollapseOptions& options = {});

/// Phased collapsing until a phase collapses nothing, or max_phases phases.
CollapseTrace run_phases(const Complex& x, int max_phases = 1 << 20);

/// Phased collapsing in which theta is never collapsed.
CollapseTrace theta_collapse(const Complex& x, const Face& theta, int max_phases = 1 << 20);

/// s_i = f_d(R_i) - f_{d-1}(R_i) + zeta_i. Throws InvalidInput when i > k_stop.
std::int64_t s_statistic(const CollapseTrace& trace, int phase);

/// Generation of a d-face or (d-1)-face. Throws InvalidInput for a d-face
/// that is not in the complex or a face of the wrong dimension.
Generation generation_of(const CollapseTrace& trace, const Face& face);

struct ZetaPerturbation {
  std::uint64_t difference;
  std::uint64_t bound;  // (d+1) * d^k_star
  bool bound_ok;
};

/// Compares zeta_* of X and X with sigma added, k_star phases each.
ZetaPerturbation zeta_perturbation(const Complex& x, const Face& sigma, int k_star);

/// {f_d, f_{d-1}, zeta_star, s_star, phases_run, generation_histogram, ...}
nlohmann::json trace_summary(const CollapseTrace& trace);

}  // namespace tophom
