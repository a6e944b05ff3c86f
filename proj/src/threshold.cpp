#include "tophom/threshold.hpp"

#include <cmath>
#include <string>

#include "tophom/errors.hpp"

namespace tophom {

namespace {

void check_d(int d, int min) {
  if (d < min) throw InvalidInput("dimension must be at least " + std::to_string(min));
}

/// Bisection for a sign change of g on [lo, hi].
template <typename G>
double bisect(G g, double lo, double hi, double tol, const char* what) {
  double g_lo = g(lo);
  const double g_hi = g(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo < 0) == (g_hi < 0))
    throw SolverError(std::string(what) + ": bracket does not straddle a sign change");
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g_mid = g(mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid < 0) == (g_lo < 0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GammaSeries gamma_recurrence(int d, double c, int r_max) {
  check_d(d, 1);
  if (!(c >= 0.0)) throw InvalidInput("c must be non-negative");
  if (r_max < 0) throw InvalidInput("r_max must be non-negative");
  GammaSeries s;
  s.gamma.push_back(0.0);
  for (int r = 1; r <= r_max; ++r) s.gamma.push_back(std::exp(-c * std::pow(1.0 - s.gamma.back(), d)));
  for (int k = 0; k < r_max; ++k) s.beta.push_back(1.0 - s.gamma[static_cast<std::size_t>(k) + 1]);
  return s;
}

double fixed_point_beta(int d, double c, double tol, long max_iter) {
  check_d(d, 1);
  if (!(tol > 0.0)) throw InvalidInput("tol must be positive");
  if (!(c >= 0.0)) throw InvalidInput("c must be non-negative");
  double t = 1.0;
  for (long j = 0; j < max_iter; ++j) {
    const double next = -std::expm1(-c * std::pow(t, d));
    if (std::abs(next - t) < tol) return next;
    t = next;
  }
  throw ConvergenceError("fixed-point iteration did not converge in " + std::to_string(max_iter) + " steps", t);
}

double solve_beta(int d, double tol) {
  check_d(d, 1);
  const double dd = d;
  auto g = [dd](double b) { return -std::log1p(-b) * (dd + 1 - dd * b) - (dd + 1) * b; };
  return bisect(g, -std::expm1(-dd), 1.0 - 1e-15, tol, "beta");
}

double solve_c_star(int d, double tol) {
  const double beta = solve_beta(d, tol);
  return -std::log1p(-beta) / std::pow(beta, d);
}

Tangency solve_tangency(int d, double tol) {
  check_d(d, 2);
  const double dd = d;
  // tangency system eliminated to d (1-t) (-ln(1-t)) = t
  auto h = [dd](double t) { return dd * (1 - t) * -std::log1p(-t) - t; };
  const double t = bisect(h, 1e-9, 1.0 - 1e-15, tol, "c_collapse");
  return {t, -std::log1p(-t) / std::pow(t, d)};
}

double expected_s_density(int d, double c, int k) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  const GammaSeries s = gamma_recurrence(d, c, k + 1);
  const double bk = s.beta[static_cast<std::size_t>(k)];
  const double bp = s.beta[static_cast<std::size_t>(k) - 1];
  const double bpd = std::pow(bp, d);
  return -bk + c * bpd * (1 - bp) + c * bpd * bp / (d + 1);
}

Asymptotics asymptotic_constants(int d) {
  check_d(d, 2);
  const double dd = d;
  const double e1 = std::exp(-(dd + 1));
  return {(dd + 1) - (dd * dd + dd + 1) * e1, 1 - e1 - (dd + 1) * (dd + 1) * e1 * e1};
}

int select_k_star(int d, double c, double eps, int cap) {
  check_d(d, 1);
  double prev = 1.0 - std::exp(-c);  // beta_0
  for (int k = 1; k <= cap; ++k) {
    const double next = -std::expm1(-c * std::pow(prev, d));
    if (std::abs(next - prev) < eps) return k;
    prev = next;
  }
  return cap;
}

ThresholdConstants threshold_constants(int d, double tol) {
  ThresholdConstants out{};
  out.d = d;
  out.beta_d = solve_beta(d, tol);
  out.c_star = -std::log1p(-out.beta_d) / std::pow(out.beta_d, d);
  const Tangency tan = solve_tangency(d, tol);
  out.c_collapse = tan.c;
  out.tangency_t = tan.t;
  const Asymptotics a = asymptotic_constants(d);
  out.beta_asym = a.beta;
  out.c_star_asym = a.c_star;
  return out;
}

}  // namespace tophom
