#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tophom/combinatorics.hpp"

namespace tophom {

/// A d-dimensional complex on n vertices with full (d-1)-skeleton. Only the
/// d-faces are stored, as a sorted list of colex ranks. Immutable once built.
class Complex {
 public:
  /// The empty complex (no d-faces).
  Complex(std::uint32_t n, int d);

  /// From d-face ranks in any order; duplicates and out-of-range ranks are rejected.
  static Complex from_ranks(std::uint32_t n, int d, std::vector<FaceRank> ranks);
  static Complex from_faces(std::uint32_t n, int d, std::span<const Face> faces);

  /// Every d-face on n vertices.
  static Complex full(std::uint32_t n, int d);

  std::uint32_t n() const noexcept { return n_; }
  int d() const noexcept { return d_; }

  /// f_d: number of present d-faces.
  std::uint64_t num_faces() const noexcept { return ranks_.size(); }
  /// f_{d-1} = C(n, d), the full skeleton.
  std::uint64_t num_ridges() const noexcept { return num_ridges_; }
  /// C(n, d+1), the number of possible d-faces.
  std::uint64_t num_possible_faces() const noexcept { return num_possible_; }

  std::span<const FaceRank> face_ranks() const noexcept { return ranks_; }
  std::vector<Face> faces() const;

  bool contains(FaceRank rank) const;
  bool contains(const Face& face) const;

  Complex with_face(FaceRank rank) const;
  Complex without_face(FaceRank rank) const;

  friend bool operator==(const Complex&, const Complex&) = default;

 private:
  std::uint32_t n_;
  int d_;
  std::uint64_t num_ridges_;
  std::uint64_t num_possible_;
  std::vector<FaceRank> ranks_;
};

/// X_d(n, c/n): each d-face present independently with probability c/n.
Complex sample_complex(std::uint32_t n, int d, double c, std::uint64_t seed);

/// Number of present d-faces containing the (d-1)-face tau.
std::uint32_t degree(const Complex& x, const Face& tau);

/// The present d-faces containing tau, in ascending rank order.
std::vector<Face> cofaces(const Complex& x, const Face& tau);

/// Sorted list of d-faces as an array of vertex arrays.
nlohmann::json to_json(const Complex& x);
Complex complex_from_json(std::uint32_t n, int d, const nlohmann::json& faces);

}  // namespace tophom
