#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "tophom/combinatorics.hpp"
#include "tophom/complex.hpp"

namespace tophom {

bool is_prime(std::uint32_t p);

/// Sparse boundary matrix of the top dimension over GF(p). Rows are
/// (d-1)-faces by colex rank, columns follow the given d-face order. For
/// sigma = [v_0, ..., v_d] the entry at (sigma \ v_i, sigma) is (-1)^i mod p.
struct BoundaryMatrix {
  struct Entry {
    std::uint64_t row;
    std::uint32_t value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  std::uint32_t p = 2;
  std::uint64_t rows = 0;
  std::vector<FaceRank> column_faces;
  std::vector<std::vector<Entry>> columns;  // entries sorted by row

  std::size_t num_columns() const noexcept { return columns.size(); }
};

/// Boundary of the given k-faces (by rank) on n vertices.
BoundaryMatrix boundary_matrix(std::uint32_t n, int k, std::span<const FaceRank> faces, std::uint32_t p);
BoundaryMatrix boundary_matrix(const Complex& x, std::uint32_t p = 2);

/// Rank by dense Gaussian elimination over GF(p). Quadratic memory; meant
/// for small matrices and as a cross-check of Reducer.
std::size_t batch_rank(const BoundaryMatrix& m);

/// Writes "row col value" lines, one per nonzero.
void write_triplets(std::ostream& out, const BoundaryMatrix& m);

/// When to keep the column combinations needed to report cycle supports.
enum class CycleRecords { none, until_first_cycle, always };

struct PushResult {
  bool independent = true;
  /// For a dependent column with records available: d-face ranks of a nonzero
  /// kernel vector (including the pushed face) and its coefficients.
  std::vector<FaceRank> support;
  std::vector<std::uint32_t> coefficients;
  bool has_support() const noexcept { return !support.empty(); }
};

/// Incremental column reduction over GF(p). GF(2) columns are bit-packed;
/// odd primes use one byte per entry. Pivot = lowest nonzero row.
class Reducer {
 public:
  Reducer(std::uint32_t n, int d, std::uint32_t p = 2, CycleRecords records = CycleRecords::until_first_cycle);
  ~Reducer();
  Reducer(Reducer&&) noexcept;
  Reducer& operator=(Reducer&&) noexcept;

  PushResult push(FaceRank face);
  PushResult push(const Face& face);

  std::size_t rank() const noexcept;
  std::size_t pushed() const noexcept;
  std::uint32_t field() const noexcept { return p_; }

  struct Impl;  // field-specific reduction state

 private:
  std::uint32_t n_;
  int d_;
  std::uint32_t p_;
  std::unique_ptr<Impl> impl_;
};

/// h_d(X; GF(p)) = f_d - rank of the boundary matrix.
std::uint64_t h_d(const Complex& x, std::uint32_t p = 2);

/// True iff the faces are exactly the d+2 facets of one (d+1)-simplex.
bool is_simplex_boundary(std::span<const Face> support);

/// Number of distinct vertices used by the faces.
std::size_t vertex_support(std::span<const Face> faces);

}  // namespace tophom
