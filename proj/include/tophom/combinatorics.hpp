#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace tophom {

using Vertex = std::uint32_t;
using FaceRank = std::uint64_t;

/// Exact binomial coefficient. Throws InvalidInput on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// A k-face: a strictly increasing list of k+1 vertex indices.
class Face {
 public:
  Face() = default;
  explicit Face(std::vector<Vertex> vertices);
  Face(std::initializer_list<Vertex> vertices) : Face(std::vector<Vertex>(vertices)) {}

  std::size_t size() const noexcept { return vertices_.size(); }
  int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }
  Vertex max_vertex() const { return vertices_.back(); }

  auto begin() const noexcept { return vertices_.begin(); }
  auto end() const noexcept { return vertices_.end(); }

  /// The face with vertex `i` (by position) removed.
  Face without(std::size_t position) const;

  bool contains(const Face& other) const;

  friend bool operator==(const Face&, const Face&) = default;
  friend auto operator<=>(const Face&, const Face&) = default;

 private:
  std::vector<Vertex> vertices_;
};

/// Colexicographic rank of a face among all (face.size())-subsets of [0, n).
FaceRank rank_face(const Face& face, std::uint32_t n);

/// Rank of a strictly increasing vertex list, no validation.
inline FaceRank colex_rank(std::span<const Vertex> vertices) {
  FaceRank r = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::uint64_t v = vertices[i];
    if (i == 0)
      r += v;
    else if (i == 1)
      r += v * (v - 1) / 2;
    else if (i == 2 && v < (1u << 21))
      r += v * (v - 1) * (v - 2) / 6;
    else
      r += binomial(v, i + 1);
  }
  return r;
}

/// Inverse of rank_face for faces of dimension `k` on n vertices.
Face unrank_face(FaceRank index, int k, std::uint32_t n);

/// Writes the colex-unranked vertices of a (size)-subset into `out`, no validation.
void colex_unrank(FaceRank index, std::span<Vertex> out);

/// Binomial lookup table for C(m, j), m < rows, j <= max_k. Used on hot paths.
class BinomialTable {
 public:
  BinomialTable(std::uint32_t rows, int max_k);

  std::uint64_t operator()(std::uint32_t m, int j) const {
    return m < rows_ ? table_[static_cast<std::size_t>(m) * stride_ + static_cast<std::size_t>(j)]
                     : binomial(m, static_cast<std::uint64_t>(j));
  }

  FaceRank rank(std::span<const Vertex> vertices) const {
    FaceRank r = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) r += (*this)(vertices[i], static_cast<int>(i) + 1);
    return r;
  }

 private:
  std::uint32_t rows_;
  std::size_t stride_;
  std::vector<std::uint64_t> table_;
};

}  // namespace tophom
