#include "tophom/collapse.hpp"

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include "tophom/errors.hpp"
#include "tophom/rng.hpp"

namespace tophom {

void Incidence::build_csr() {
  const std::size_t nr = ridge_keys.size();
  ridge_offsets.assign(nr + 1, 0);
  for (std::uint32_t r : face_ridges) ++ridge_offsets[r + 1];
  for (std::size_t i = 0; i < nr; ++i) ridge_offsets[i + 1] += ridge_offsets[i];
  ridge_faces.assign(face_ridges.size(), 0);
  std::vector<std::uint32_t> fill(ridge_offsets.begin(), ridge_offsets.end() - 1);
  const std::size_t k = static_cast<std::size_t>(d) + 1;
  for (std::size_t f = 0; f < face_keys.size(); ++f)
    for (std::size_t j = 0; j < k; ++j) {
      std::uint32_t r = face_ridges[f * k + j];
      ridge_faces[fill[r]++] = static_cast<std::uint32_t>(f);
    }
}

Incidence make_incidence(const Complex& x) {
  Incidence inc;
  inc.d = x.d();
  inc.total_ridges = x.num_ridges();
  inc.face_keys.assign(x.face_ranks().begin(), x.face_ranks().end());

  const std::size_t k = static_cast<std::size_t>(x.d()) + 1;
  const BinomialTable binom(x.n() + 1, x.d() + 1);
  std::vector<FaceRank> sub(inc.face_keys.size() * k);
  std::vector<Vertex> v(k);
  for (std::size_t f = 0; f < inc.face_keys.size(); ++f) {
    colex_unrank(inc.face_keys[f], v);
    // prefix[i] = sum_{j<i} C(v_j, j+1); suffix terms shift down one slot
    FaceRank shifted = 0;
    for (std::size_t j = 1; j < k; ++j) shifted += binom(v[j], static_cast<int>(j));
    FaceRank prefix = 0;
    for (std::size_t i = 0; i < k; ++i) {
      sub[f * k + i] = prefix + shifted;
      if (i + 1 < k) {
        shifted -= binom(v[i + 1], static_cast<int>(i + 1));
        prefix += binom(v[i], static_cast<int>(i + 1));
      }
    }
  }
  inc.ridge_keys = sub;
  std::sort(inc.ridge_keys.begin(), inc.ridge_keys.end());
  inc.ridge_keys.erase(std::unique(inc.ridge_keys.begin(), inc.ridge_keys.end()), inc.ridge_keys.end());
  inc.face_ridges.resize(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    inc.face_ridges[i] = static_cast<std::uint32_t>(
        std::lower_bound(inc.ridge_keys.begin(), inc.ridge_keys.end(), sub[i]) - inc.ridge_keys.begin());
  }
  inc.build_csr();
  return inc;
}

std::uint64_t CollapseTrace::zeta_with_removed(int i) const {
  if (i < 0 || i > k_stop()) throw InvalidInput("phase out of range");
  return zeta_by_phase[static_cast<std::size_t>(i)] + (total_ridges - f_dm1_by_phase[static_cast<std::size_t>(i)]);
}

std::vector<FaceRank> CollapseTrace::remaining_faces(int i) const {
  if (i < 0 || i > k_stop()) throw InvalidInput("phase out of range");
  std::vector<FaceRank> out;
  for (std::size_t f = 0; f < face_keys.size(); ++f) {
    const std::uint32_t g = face_generation[f];
    if (g == 0 || g > static_cast<std::uint32_t>(i)) out.push_back(face_keys[f]);
  }
  return out;
}

CollapseTrace collapse(const Incidence& inc, const CollapseOptions& options) {
  const std::size_t nf = inc.num_faces();
  const std::size_t nr = inc.num_ridges();

  CollapseTrace t;
  t.d = inc.d;
  t.total_ridges = inc.total_ridges;
  t.face_keys = inc.face_keys;
  t.ridge_keys = inc.ridge_keys;
  t.face_generation.assign(nf, 0);
  t.ridge_generation.assign(nr, 0);
  t.ridge_collapsed.assign(nr, false);

  std::vector<std::uint32_t> deg(nr);
  for (std::size_t r = 0; r < nr; ++r) deg[r] = inc.ridge_offsets[r + 1] - inc.ridge_offsets[r];

  std::optional<std::uint32_t> theta_id;
  if (options.theta) {
    t.theta = options.theta;
    auto it = std::lower_bound(inc.ridge_keys.begin(), inc.ridge_keys.end(), *options.theta);
    if (it != inc.ridge_keys.end() && *it == *options.theta)
      theta_id = static_cast<std::uint32_t>(it - inc.ridge_keys.begin());
    else
      t.theta_isolated_phase = 0;
  }

  std::uint64_t f_d = nf;
  std::uint64_t f_dm1 = inc.total_ridges;
  std::uint64_t zeta = inc.total_ridges - nr;
  auto record = [&] {
    t.f_d_by_phase.push_back(f_d);
    t.f_dm1_by_phase.push_back(f_dm1);
    t.zeta_by_phase.push_back(zeta);
    t.s_by_phase.push_back(static_cast<std::int64_t>(f_d) - static_cast<std::int64_t>(f_dm1) +
                           static_cast<std::int64_t>(zeta));
  };
  record();

  std::vector<bool> face_alive(nf, true);
  // ridges whose degree dropped to 1 during the last phase (all degree-1 ridges initially)
  std::vector<std::uint32_t> candidates;
  for (std::size_t r = 0; r < nr; ++r)
    if (deg[r] == 1) candidates.push_back(static_cast<std::uint32_t>(r));

  std::optional<Rng> shuffler;
  if (options.shuffle_seed) shuffler.emplace(*options.shuffle_seed);

  std::vector<std::uint32_t> free_list;
  for (int phase = 1; phase <= options.max_phases; ++phase) {
    if (!std::is_sorted(candidates.begin(), candidates.end())) std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    free_list.clear();
    for (std::uint32_t r : candidates)
      if (deg[r] == 1 && r != theta_id) free_list.push_back(r);
    candidates.clear();
    if (free_list.empty()) break;
    if (shuffler) shuffler->shuffle(std::span<std::uint32_t>(free_list));

    std::vector<CollapsePair> pairs;
    for (std::uint32_t tau : free_list) {
      if (deg[tau] != 1) continue;  // isolated since the phase started
      std::uint32_t sigma = 0;
      for (std::uint32_t f : inc.faces_of(tau))
        if (face_alive[f]) {
          sigma = f;
          break;
        }
      face_alive[sigma] = false;
      t.face_generation[sigma] = static_cast<std::uint32_t>(phase);
      pairs.push_back({inc.ridge_keys[tau], inc.face_keys[sigma]});
      --f_d;
      --f_dm1;
      t.ridge_collapsed[tau] = true;
      for (std::uint32_t rho : inc.ridges_of(sigma)) {
        --deg[rho];
        if (deg[rho] == 0) {
          t.ridge_generation[rho] = static_cast<std::uint32_t>(phase);
          if (rho != tau) ++zeta;
          if (theta_id && rho == *theta_id) t.theta_isolated_phase = phase;
        } else if (deg[rho] == 1) {
          candidates.push_back(rho);
        }
      }
    }
    t.phases.push_back(std::move(pairs));
    record();
  }
  return t;
}

CollapseTrace run_phases(const Complex& x, int max_phases) {
  CollapseOptions options;
  options.max_phases = max_phases;
  return collapse(make_incidence(x), options);
}

CollapseTrace theta_collapse(const Complex& x, const Face& theta, int max_phases) {
  if (theta.dimension() != x.d() - 1)
    throw InvalidInput("theta must be a " + std::to_string(x.d() - 1) + "-face");
  CollapseOptions options;
  options.max_phases = max_phases;
  options.theta = rank_face(theta, x.n());
  return collapse(make_incidence(x), options);
}

std::int64_t s_statistic(const CollapseTrace& trace, int phase) {
  if (phase < 0 || phase > trace.k_stop())
    throw InvalidInput("phase " + std::to_string(phase) + " outside [0, " +
                       std::to_string(trace.k_stop()) + "]");
  return trace.s_by_phase[static_cast<std::size_t>(phase)];
}

Generation generation_of(const CollapseTrace& trace, const Face& face) {
  const FaceRank key = colex_rank(face.vertices());
  auto lookup = [key](const std::vector<FaceRank>& keys) -> std::optional<std::size_t> {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - keys.begin());
  };
  auto label = [](std::uint32_t g) { return g == 0 ? Generation::survived() : Generation::at(static_cast<int>(g)); };

  if (face.dimension() == trace.d) {
    auto idx = lookup(trace.face_keys);
    if (!idx) throw InvalidInput("d-face is not in the complex");
    return label(trace.face_generation[*idx]);
  }
  if (face.dimension() == trace.d - 1) {
    auto idx = lookup(trace.ridge_keys);
    if (!idx) return Generation::isolated();
    return label(trace.ridge_generation[*idx]);
  }
  throw InvalidInput("face dimension must be d or d-1");
}

ZetaPerturbation zeta_perturbation(const Complex& x, const Face& sigma, int k_star) {
  if (sigma.dimension() != x.d()) throw InvalidInput("sigma must be a d-face");
  if (k_star < 0) throw InvalidInput("k_star must be non-negative");
  const FaceRank r = rank_face(sigma, x.n());
  if (x.contains(r)) throw InvalidInput("sigma is already in the complex");
  const auto before = run_phases(x, k_star).zeta_star();
  const auto after = run_phases(x.with_face(r), k_star).zeta_star();
  ZetaPerturbation out;
  out.difference = before > after ? before - after : after - before;
  out.bound = static_cast<std::uint64_t>(x.d()) + 1;
  for (int i = 0; i < k_star; ++i) out.bound *= static_cast<std::uint64_t>(x.d());
  out.bound_ok = out.difference <= out.bound;
  return out;
}

nlohmann::json trace_summary(const CollapseTrace& trace) {
  std::vector<std::uint64_t> ridge_hist(static_cast<std::size_t>(trace.k_stop()), 0);
  std::vector<std::uint64_t> face_hist(static_cast<std::size_t>(trace.k_stop()), 0);
  for (std::uint32_t g : trace.ridge_generation)
    if (g > 0) ++ridge_hist[g - 1];
  for (std::uint32_t g : trace.face_generation)
    if (g > 0) ++face_hist[g - 1];
  return {
      {"f_d", trace.f_d_by_phase.front()},
      {"f_d-1", trace.f_dm1_by_phase.front()},
      {"zeta_star", trace.zeta_star()},
      {"s_star", trace.s_star()},
      {"phases_run", trace.k_stop()},
      {"isolated_at_start", trace.isolated_at_start()},
      {"generation_histogram", ridge_hist},
      {"face_generation_histogram", face_hist},
  };
}

}  // namespace tophom
