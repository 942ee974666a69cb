#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wavestab/wave_problem.hpp"

namespace wavestab {

struct NewtonOptions {
  double tol = 1e-12;  // infinity norm of the projected residual
  int max_iter = 25;
  int max_halvings = 6;  // line-search step halvings on stagnation
};

/// One converged point of an amplitude-parametrized branch.  The pinned
/// cosine coefficient a_mode equals eps exactly.
struct BranchPoint {
  double eps = 0.0;
  double mu = 0.0;
  WaveState state;
  double residual_norm = 0.0;
  int newton_iters = 0;
  // per-point diagnostics recorded while tracing
  double min_graph = 0.0;    // min of 1/k + C(w')
  double d_mean = 0.0;       // physical mean depth
  double bernoulli = 0.0;    // pointwise Bernoulli violation
};

struct Branch {
  int mode = 1;
  WaveParameters base;
  std::vector<BranchPoint> points;  // eps strictly increasing
  bool truncated = false;           // a continuation step failed to converge
  std::string warning;
};

/// Newton failed; carries the last iterate for diagnosis.
class continuation_error : public std::runtime_error {
 public:
  continuation_error(const std::string& msg, BranchPoint last_iterate)
      : std::runtime_error(msg), last(std::move(last_iterate)) {}
  BranchPoint last;
};

/// Dispersion point mu_n* = tanh(n k h) / (n k), the parameter value where
/// the mode-n branch bifurcates from the flat state.
double critical_mu(int n, double k, double h);

/// Solves the governing equation on the even cosine subspace with the
/// amplitude pinning a_mode = eps; unknowns are the remaining cosine
/// coefficients and mu.  eps = 0 resolves the singular bordered system to
/// the flat state at mu_mode*.  The converged state carries the constraint-
/// matched mass flux.
BranchPoint newton_solve(const WaveState& initial, int mode, double eps,
                         const NewtonOptions& options = {});

/// Natural continuation: points at eps_j = j eps_max / steps, j = 0..steps,
/// each seeded from the previous.  base supplies (k, h, g); mu starts at the
/// dispersion point.  Newton failures truncate the branch via
/// continuation_error.
Branch trace_branch(int mode, double eps_max, int steps, const WaveParameters& base,
                    int n_trunc, const NewtonOptions& options = {});

struct BranchValidation {
  bool vacuous = false;       // fewer than 3 nontrivial points
  double profile_order = 0.0; // fitted order of ||w_eps - eps cos(nx)||_2
  double mu_order = 0.0;      // fitted order of |mu(eps) - mu_n*|
  double mu_slope_at_zero = 0.0;  // (mu(eps_min) - mu_n*)/eps_min
  double mu_curvature = 0.0;      // (mu(eps_min) - mu_n*)/eps_min^2
  double max_residual = 0.0;
};

/// Fits the asymptotic orders of the branch against the leading-order
/// expansion; needs at least 3 nontrivial points.
BranchValidation branch_validate(const Branch& branch);

}  // namespace wavestab
