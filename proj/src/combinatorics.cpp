#include "tophom/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "tophom/errors.hpp"

namespace tophom {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  if (k == 0) return 1;
  if (k == 1) return n;
  std::uint64_t small = n;
  std::uint64_t i = 1;
  for (; i < k && small <= std::numeric_limits<std::uint64_t>::max() / (n - i); ++i) small = small * (n - i) / (i + 1);
  unsigned __int128 r = small;
  for (; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw InvalidInput("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                         ") overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

Face::Face(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InvalidInput("face must have at least one vertex");
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i - 1] >= vertices_[i])
      throw InvalidInput("face vertices must be strictly increasing");
  }
}

Face Face::without(std::size_t position) const {
  std::vector<Vertex> v;
  v.reserve(vertices_.size() - 1);
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (i != position) v.push_back(vertices_[i]);
  return Face(std::move(v));
}

bool Face::contains(const Face& other) const {
  return std::includes(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                       other.vertices_.end());
}

FaceRank rank_face(const Face& face, std::uint32_t n) {
  if (face.size() == 0) throw InvalidInput("empty face");
  if (face.max_vertex() >= n)
    throw InvalidInput("vertex " + std::to_string(face.max_vertex()) + " out of range [0, " +
                       std::to_string(n) + ")");
  return colex_rank(face.vertices());
}

void colex_unrank(FaceRank index, std::span<Vertex> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    const std::uint64_t j = i + 1;
    // largest v with C(v, j) <= index; C(v, j) grows fast so a galloping
    // search from v = i is cheap
    Vertex lo = static_cast<Vertex>(i);
    Vertex step = 1;
    while (binomial(lo + step, j) <= index) {
      lo += step;
      step *= 2;
    }
    Vertex hi = lo + step;  // C(hi, j) > index
    while (hi - lo > 1) {
      Vertex mid = lo + (hi - lo) / 2;
      if (binomial(mid, j) <= index)
        lo = mid;
      else
        hi = mid;
    }
    out[i] = lo;
    index -= binomial(lo, j);
  }
}

Face unrank_face(FaceRank index, int k, std::uint32_t n) {
  if (k < 0) throw InvalidInput("negative face dimension");
  const std::uint64_t total = binomial(n, static_cast<std::uint64_t>(k) + 1);
  if (index >= total)
    throw InvalidInput("rank " + std::to_string(index) + " out of range [0, " +
                       std::to_string(total) + ")");
  std::vector<Vertex> v(static_cast<std::size_t>(k) + 1);
  colex_unrank(index, v);
  return Face(std::move(v));
}

BinomialTable::BinomialTable(std::uint32_t rows, int max_k)
    : rows_(rows), stride_(static_cast<std::size_t>(max_k) + 1), table_(rows * stride_, 0) {
  // Pascal's rule, saturating; saturated entries only matter for ranks that
  // would not fit in 64 bits anyway.
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::uint32_t m = 0; m < rows; ++m) {
    std::uint64_t* row = &table_[m * stride_];
    row[0] = 1;
    if (m == 0) continue;
    const std::uint64_t* prev = row - stride_;
    for (std::size_t j = 1; j < stride_; ++j) {
      row[j] = prev[j] > kMax - prev[j - 1] ? kMax : prev[j] + prev[j - 1];
    }
  }
}

}  // namespace tophom
