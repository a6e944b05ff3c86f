#include "tophom/homology.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <set>
#include <string>

#include "tophom/errors.hpp"

namespace tophom {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t q = 2; static_cast<std::uint64_t>(q) * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

namespace {

void check_field(std::uint32_t p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  if (p > 251) throw InvalidInput("field size must be at most 251");
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

/// Boundary entries of one face: (row, sign index) with row ascending in i.
std::vector<BoundaryMatrix::Entry> boundary_column(std::span<const Vertex> v, std::uint32_t p) {
  std::vector<BoundaryMatrix::Entry> col;
  col.reserve(v.size());
  std::vector<Vertex> sub(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i), sub.begin());
    std::copy(v.begin() + static_cast<std::ptrdiff_t>(i) + 1, v.end(), sub.begin() + static_cast<std::ptrdiff_t>(i));
    const std::uint32_t value = (i % 2 == 0) ? 1 % p : p - 1;
    col.push_back({colex_rank(sub), value});
  }
  std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
  return col;
}

}  // namespace

BoundaryMatrix boundary_matrix(std::uint32_t n, int k, std::span<const FaceRank> faces, std::uint32_t p) {
  check_field(p);
  if (k < 1) throw InvalidInput("boundary needs faces of dimension >= 1");
  BoundaryMatrix m;
  m.p = p;
  m.rows = binomial(n, static_cast<std::uint64_t>(k));
  const std::uint64_t cols_total = binomial(n, static_cast<std::uint64_t>(k) + 1);
  std::vector<Vertex> v(static_cast<std::size_t>(k) + 1);
  for (FaceRank r : faces) {
    if (r >= cols_total) throw InvalidInput("face rank out of range");
    colex_unrank(r, v);
    m.column_faces.push_back(r);
    m.columns.push_back(boundary_column(v, p));
  }
  return m;
}

BoundaryMatrix boundary_matrix(const Complex& x, std::uint32_t p) {
  return boundary_matrix(x.n(), x.d(), x.face_ranks(), p);
}

std::size_t batch_rank(const BoundaryMatrix& m) {
  const std::uint32_t p = m.p;
  const std::size_t rows = m.rows, cols = m.num_columns();
  std::vector<std::vector<std::uint8_t>> a(rows, std::vector<std::uint8_t>(cols, 0));
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& e : m.columns[c]) a[e.row][c] = static_cast<std::uint8_t>(e.value);

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    const std::uint32_t inv = inverse_mod(a[rank][c], p);
    for (std::size_t j = c; j < cols; ++j) a[rank][j] = static_cast<std::uint8_t>(a[rank][j] * inv % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const std::uint32_t factor = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        a[i][j] = static_cast<std::uint8_t>((a[i][j] + (p - factor) * a[rank][j]) % p);
    }
    ++rank;
  }
  return rank;
}

void write_triplets(std::ostream& out, const BoundaryMatrix& m) {
  for (std::size_t c = 0; c < m.num_columns(); ++c)
    for (const auto& e : m.columns[c]) out << e.row << ' ' << c << ' ' << e.value << '\n';
}

// ---------------------------------------------------------------------------

struct Reducer::Impl {
  virtual ~Impl() = default;
  virtual PushResult push(std::span<const BoundaryMatrix::Entry> column, FaceRank face) = 0;
  std::size_t rank = 0;
  std::vector<FaceRank> pushed;
  std::set<FaceRank> seen;
  CycleRecords records = CycleRecords::none;
  bool tracking = false;
};

namespace {

class Gf2Reducer final : public Reducer::Impl {
 public:
  explicit Gf2Reducer(std::uint64_t rows) : rows_(rows), words_((rows + 63) / 64), pivot_of_row_(rows, -1) {}

  PushResult push(std::span<const BoundaryMatrix::Entry> column, FaceRank face) override {
    const std::size_t index = pushed.size();
    pushed.push_back(face);
    std::vector<std::uint64_t> col(words_, 0);
    for (const auto& e : column) col[e.row / 64] ^= std::uint64_t{1} << (e.row % 64);
    std::vector<std::uint64_t> rec;
    if (tracking) {
      rec.assign(index / 64 + 1, 0);
      rec[index / 64] |= std::uint64_t{1} << (index % 64);
    }

    std::size_t w = 0;
    while (true) {
      while (w < words_ && col[w] == 0) ++w;
      if (w == words_) break;
      const std::uint64_t low = w * 64 + static_cast<std::uint64_t>(std::countr_zero(col[w]));
      const std::int64_t piv = pivot_of_row_[low];
      if (piv < 0) {
        pivot_of_row_[low] = static_cast<std::int64_t>(rank);
        pivot_cols_.insert(pivot_cols_.end(), col.begin(), col.end());
        if (tracking) pivot_recs_.push_back(std::move(rec));
        ++rank;
        return {};
      }
      const std::uint64_t* src = pivot_cols_.data() + static_cast<std::size_t>(piv) * words_;
      for (std::size_t j = w; j < words_; ++j) col[j] ^= src[j];
      if (tracking) {
        const auto& prec = pivot_recs_[static_cast<std::size_t>(piv)];
        if (prec.size() > rec.size()) rec.resize(prec.size(), 0);
        for (std::size_t j = 0; j < prec.size(); ++j) rec[j] ^= prec[j];
      }
    }

    PushResult result;
    result.independent = false;
    if (tracking) {
      for (std::size_t j = 0; j < rec.size(); ++j)
        for (std::uint64_t bits = rec[j]; bits; bits &= bits - 1) {
          result.support.push_back(pushed[j * 64 + static_cast<std::size_t>(std::countr_zero(bits))]);
          result.coefficients.push_back(1);
        }
      if (records == CycleRecords::until_first_cycle) {
        tracking = false;
        pivot_recs_.clear();
        pivot_recs_.shrink_to_fit();
      }
    }
    return result;
  }

 private:
  std::uint64_t rows_;
  std::size_t words_;
  std::vector<std::int64_t> pivot_of_row_;
  std::vector<std::uint64_t> pivot_cols_;
  std::vector<std::vector<std::uint64_t>> pivot_recs_;
};

class GfpReducer final : public Reducer::Impl {
 public:
  GfpReducer(std::uint64_t rows, std::uint32_t p) : rows_(rows), p_(p), pivot_of_row_(rows, -1) {}

  PushResult push(std::span<const BoundaryMatrix::Entry> column, FaceRank face) override {
    const std::size_t index = pushed.size();
    pushed.push_back(face);
    std::vector<std::uint8_t> col(rows_, 0);
    for (const auto& e : column) col[e.row] = static_cast<std::uint8_t>(e.value);
    std::vector<std::uint8_t> rec;
    if (tracking) {
      rec.assign(index + 1, 0);
      rec[index] = 1;
    }

    std::size_t low = 0;
    while (true) {
      while (low < rows_ && col[low] == 0) ++low;
      if (low == rows_) break;
      const std::int64_t piv = pivot_of_row_[low];
      if (piv < 0) {
        const std::uint32_t inv = inverse_mod(col[low], p_);
        for (std::size_t j = low; j < rows_; ++j) col[j] = static_cast<std::uint8_t>(col[j] * inv % p_);
        for (auto& x : rec) x = static_cast<std::uint8_t>(x * inv % p_);
        pivot_of_row_[low] = static_cast<std::int64_t>(rank);
        pivot_cols_.insert(pivot_cols_.end(), col.begin(), col.end());
        if (tracking) pivot_recs_.push_back(std::move(rec));
        ++rank;
        return {};
      }
      // pivot column has a 1 at `low`
      const std::uint32_t factor = p_ - col[low];
      const std::uint8_t* src = pivot_cols_.data() + static_cast<std::size_t>(piv) * rows_;
      for (std::size_t j = low; j < rows_; ++j)
        col[j] = static_cast<std::uint8_t>((col[j] + factor * src[j]) % p_);
      if (tracking) {
        const auto& prec = pivot_recs_[static_cast<std::size_t>(piv)];
        if (prec.size() > rec.size()) rec.resize(prec.size(), 0);
        for (std::size_t j = 0; j < prec.size(); ++j)
          rec[j] = static_cast<std::uint8_t>((rec[j] + factor * prec[j]) % p_);
      }
    }

    PushResult result;
    result.independent = false;
    if (tracking) {
      for (std::size_t j = 0; j < rec.size(); ++j)
        if (rec[j] != 0) {
          result.support.push_back(pushed[j]);
          result.coefficients.push_back(rec[j]);
        }
      if (records == CycleRecords::until_first_cycle) {
        tracking = false;
        pivot_recs_.clear();
        pivot_recs_.shrink_to_fit();
      }
    }
    return result;
  }

 private:
  std::uint64_t rows_;
  std::uint32_t p_;
  std::vector<std::int64_t> pivot_of_row_;
  std::vector<std::uint8_t> pivot_cols_;
  std::vector<std::vector<std::uint8_t>> pivot_recs_;
};

}  // namespace

Reducer::Reducer(std::uint32_t n, int d, std::uint32_t p, CycleRecords records) : n_(n), d_(d), p_(p) {
  check_field(p);
  if (d < 1 || n <= static_cast<std::uint32_t>(d)) throw InvalidInput("need n > d >= 1");
  const std::uint64_t rows = binomial(n, static_cast<std::uint64_t>(d));
  if (p == 2)
    impl_ = std::make_unique<Gf2Reducer>(rows);
  else
    impl_ = std::make_unique<GfpReducer>(rows, p);
  impl_->records = records;
  impl_->tracking = records != CycleRecords::none;
}

Reducer::~Reducer() = default;
Reducer::Reducer(Reducer&&) noexcept = default;
Reducer& Reducer::operator=(Reducer&&) noexcept = default;

PushResult Reducer::push(FaceRank face) {
  if (face >= binomial(n_, static_cast<std::uint64_t>(d_) + 1)) throw InvalidInput("d-face rank out of range");
  if (!impl_->seen.insert(face).second) throw InvalidInput("d-face pushed twice");
  std::vector<Vertex> v(static_cast<std::size_t>(d_) + 1);
  colex_unrank(face, v);
  const auto column = boundary_column(v, p_);
  return impl_->push(column, face);
}

PushResult Reducer::push(const Face& face) {
  if (face.dimension() != d_) throw InvalidInput("expected a " + std::to_string(d_) + "-face");
  return push(rank_face(face, n_));
}

std::size_t Reducer::rank() const noexcept { return impl_->rank; }
std::size_t Reducer::pushed() const noexcept { return impl_->pushed.size(); }

std::uint64_t h_d(const Complex& x, std::uint32_t p) {
  Reducer reducer(x.n(), x.d(), p, CycleRecords::none);
  for (FaceRank r : x.face_ranks()) reducer.push(r);
  return x.num_faces() - reducer.rank();
}

bool is_simplex_boundary(std::span<const Face> support) {
  if (support.empty()) return false;
  const std::size_t k = support.front().size();  // d+1
  if (support.size() != k + 1) return false;
  std::set<Face> distinct(support.begin(), support.end());
  if (distinct.size() != support.size()) return false;
  for (const Face& f : support)
    if (f.size() != k) return false;
  // d+2 distinct (d+1)-subsets of a (d+2)-set are all of them
  return vertex_support(support) == k + 1;
}

std::size_t vertex_support(std::span<const Face> faces) {
  std::set<Vertex> vertices;
  for (const Face& f : faces) vertices.insert(f.begin(), f.end());
  return vertices.size();
}

}  // namespace tophom
