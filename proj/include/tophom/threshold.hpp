#pragma once

#include <vector>

namespace tophom {

inline constexpr double kDefaultTol = 1e-12;

/// gamma_0..gamma_{r_max} of the Poisson d-tree recurrence
/// gamma_r = exp(-c (1 - gamma_{r-1})^d), gamma_0 = 0, and the survival
/// probabilities beta_k = 1 - gamma_{k+1} for k < r_max.
struct GammaSeries {
  std::vector<double> gamma;
  std::vector<double> beta;
};

GammaSeries gamma_recurrence(int d, double c, int r_max);

/// Limit of t -> 1 - exp(-c t^d) started at t = 1. Stops once successive
/// iterates differ by less than tol; throws ConvergenceError after max_iter.
double fixed_point_beta(int d, double c, double tol = kDefaultTol, long max_iter = 1'000'000);

/// Root of -ln(1-b) = (d+1) b / (d+1-d b) in [1 - e^{-d}, 1). Bisection.
double solve_beta(int d, double tol = kDefaultTol);

/// c*_d = -ln(1 - beta_d) / beta_d^d.
double solve_c_star(int d, double tol = kDefaultTol);

/// Tangency point of t = 1 - exp(-c t^d): below `c` the only fixed point in
/// [0, 1] is 0.
struct Tangency {
  double t;
  double c;
};

Tangency solve_tangency(int d, double tol = kDefaultTol);
inline double solve_c_collapse(int d, double tol = kDefaultTol) { return solve_tangency(d, tol).c; }

/// Normalised expectation E[s] / C(n, d) after k phases:
/// -beta_k + c beta_{k-1}^d (1 - beta_{k-1}) + c beta_{k-1}^{d+1} / (d+1).
double expected_s_density(int d, double c, int k);

/// Large-d closed forms with the o(1) factors dropped.
struct Asymptotics {
  double c_star;
  double beta;
};

Asymptotics asymptotic_constants(int d);

/// Smallest k >= 1 with |beta_k - beta_{k-1}| < eps, capped at `cap`.
int select_k_star(int d, double c, double eps = 1e-9, int cap = 10'000);

struct ThresholdConstants {
  int d;
  double beta_d;
  double c_star;
  double c_collapse;
  double tangency_t;
  double beta_asym;
  double c_star_asym;
};

ThresholdConstants threshold_constants(int d, double tol = kDefaultTol);

}  // namespace tophom
