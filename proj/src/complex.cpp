#include "tophom/complex.hpp"

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include "tophom/errors.hpp"
#include "tophom/rng.hpp"

namespace tophom {

namespace {

void check_dims(std::uint32_t n, int d) {
  if (d < 1) throw InvalidInput("dimension must be at least 1");
  if (n <= static_cast<std::uint32_t>(d))
    throw InvalidInput("need n > d (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
}

}  // namespace

Complex::Complex(std::uint32_t n, int d) : n_(n), d_(d) {
  check_dims(n, d);
  num_ridges_ = binomial(n, static_cast<std::uint64_t>(d));
  num_possible_ = binomial(n, static_cast<std::uint64_t>(d) + 1);
}

Complex Complex::from_ranks(std::uint32_t n, int d, std::vector<FaceRank> ranks) {
  Complex x(n, d);
  std::sort(ranks.begin(), ranks.end());
  if (std::adjacent_find(ranks.begin(), ranks.end()) != ranks.end())
    throw InvalidInput("duplicate d-face");
  if (!ranks.empty() && ranks.back() >= x.num_possible_)
    throw InvalidInput("d-face rank out of range");
  x.ranks_ = std::move(ranks);
  return x;
}

Complex Complex::from_faces(std::uint32_t n, int d, std::span<const Face> faces) {
  std::vector<FaceRank> ranks;
  ranks.reserve(faces.size());
  for (const Face& f : faces) {
    if (f.dimension() != d)
      throw InvalidInput("expected a " + std::to_string(d) + "-face, got dimension " +
                         std::to_string(f.dimension()));
    ranks.push_back(rank_face(f, n));
  }
  return from_ranks(n, d, std::move(ranks));
}

Complex Complex::full(std::uint32_t n, int d) {
  Complex x(n, d);
  x.ranks_.resize(x.num_possible_);
  for (FaceRank r = 0; r < x.num_possible_; ++r) x.ranks_[r] = r;
  return x;
}

std::vector<Face> Complex::faces() const {
  std::vector<Face> out;
  out.reserve(ranks_.size());
  for (FaceRank r : ranks_) out.push_back(unrank_face(r, d_, n_));
  return out;
}

bool Complex::contains(FaceRank rank) const {
  return std::binary_search(ranks_.begin(), ranks_.end(), rank);
}

bool Complex::contains(const Face& face) const {
  if (face.dimension() != d_) return false;
  return contains(rank_face(face, n_));
}

Complex Complex::with_face(FaceRank rank) const {
  if (rank >= num_possible_) throw InvalidInput("d-face rank out of range");
  auto it = std::lower_bound(ranks_.begin(), ranks_.end(), rank);
  if (it != ranks_.end() && *it == rank) throw InvalidInput("d-face already present");
  Complex x = *this;
  x.ranks_.insert(x.ranks_.begin() + (it - ranks_.begin()), rank);
  return x;
}

Complex Complex::without_face(FaceRank rank) const {
  auto it = std::lower_bound(ranks_.begin(), ranks_.end(), rank);
  if (it == ranks_.end() || *it != rank) throw InvalidInput("d-face not present");
  Complex x = *this;
  x.ranks_.erase(x.ranks_.begin() + (it - ranks_.begin()));
  return x;
}

Complex sample_complex(std::uint32_t n, int d, double c, std::uint64_t seed) {
  Complex empty(n, d);
  if (!(c >= 0.0)) throw InvalidInput("density c must be non-negative");
  const double p = c / n;
  if (p > 1.0) throw InvalidInput("c/n must not exceed 1");
  std::vector<FaceRank> ranks;
  ranks.reserve(static_cast<std::size_t>(static_cast<double>(empty.num_possible_faces()) * p * 1.1) + 16);
  Rng rng(seed);
  for (FaceRank r = 0; r < empty.num_possible_faces(); ++r)
    if (rng.bernoulli(p)) ranks.push_back(r);
  return Complex::from_ranks(n, d, std::move(ranks));
}

std::vector<Face> cofaces(const Complex& x, const Face& tau) {
  if (tau.dimension() != x.d() - 1)
    throw InvalidInput("expected a " + std::to_string(x.d() - 1) + "-face");
  if (tau.max_vertex() >= x.n()) throw InvalidInput("vertex out of range");
  std::vector<Face> out;
  std::vector<Vertex> v(tau.size() + 1);
  for (Vertex w = 0; w < x.n(); ++w) {
    if (std::binary_search(tau.begin(), tau.end(), w)) continue;
    auto pos = std::lower_bound(tau.begin(), tau.end(), w) - tau.begin();
    std::copy(tau.begin(), tau.begin() + pos, v.begin());
    v[static_cast<std::size_t>(pos)] = w;
    std::copy(tau.begin() + pos, tau.end(), v.begin() + pos + 1);
    if (x.contains(colex_rank(v))) out.emplace_back(v);
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return colex_rank(a.vertices()) < colex_rank(b.vertices());
  });
  return out;
}

std::uint32_t degree(const Complex& x, const Face& tau) {
  // counts subfaces directly rather than going through cofaces()
  if (tau.dimension() != x.d() - 1)
    throw InvalidInput("expected a " + std::to_string(x.d() - 1) + "-face");
  if (tau.max_vertex() >= x.n()) throw InvalidInput("vertex out of range");
  std::uint32_t count = 0;
  std::vector<Vertex> v(static_cast<std::size_t>(x.d()) + 1);
  for (FaceRank r : x.face_ranks()) {
    colex_unrank(r, v);
    if (std::includes(v.begin(), v.end(), tau.begin(), tau.end())) ++count;
  }
  return count;
}

nlohmann::json to_json(const Complex& x) {
  auto faces = x.faces();
  std::sort(faces.begin(), faces.end());
  nlohmann::json out = nlohmann::json::array();
  for (const Face& f : faces) out.push_back(std::vector<Vertex>(f.begin(), f.end()));
  return out;
}

Complex complex_from_json(std::uint32_t n, int d, const nlohmann::json& faces) {
  if (!faces.is_array()) throw InvalidInput("expected an array of faces");
  std::vector<Face> list;
  for (const auto& f : faces) list.emplace_back(f.get<std::vector<Vertex>>());
  return Complex::from_faces(n, d, list);
}

}  // namespace tophom
