#include "wavestab/continuation.hpp"

#include <algorithm>
#include <cmath>

#include "wavestab/errors.hpp"
#include "wavestab/linalg.hpp"

namespace wavestab {

namespace {

// Projected residual: cosine coefficients 1..N of the governing equation.
std::vector<double> projected_residual(const WaveState& state, int n_trunc) {
  const SpectralFunction r = residual(state);
  std::vector<double> out(n_trunc);
  for (int j = 1; j <= n_trunc; ++j) out[j - 1] = r.cos_coeff(j);
  return out;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

SpectralFunction state_from(const std::vector<double>& a, int mode, double eps,
                            int n_trunc) {
  SpectralFunction w(n_trunc);
  for (int j = 1; j <= n_trunc; ++j) w.set_cos(j, a[j - 1]);
  w.set_cos(mode, eps);
  return w;
}

BranchPoint finish_point(WaveState state, int /*mode*/, double eps, double mu,
                         double res_norm, int iters) {
  auto [m_flux, b] = mass_flux_from_constraint(state);
  state.params.set_mass_flux(m_flux);
  (void)b;
  BranchPoint pt{eps, mu, std::move(state), res_norm, iters, 0.0, 0.0, 0.0};
  pt.min_graph = graph_condition_min(pt.state);
  pt.d_mean = mean_depth_and_speed(pt.state).first;
  pt.bernoulli = bernoulli_residual(pt.state);
  return pt;
}

}  // namespace

double critical_mu(int n, double k, double h) {
  if (n < 1) throw parameter_error("mode index must be >= 1");
  if (k <= 0.0 || h <= 0.0) throw parameter_error("k and h must be positive");
  return std::tanh(n * k * h) / (n * k);
}

BranchPoint newton_solve(const WaveState& initial, int mode, double eps,
                         const NewtonOptions& options) {
  const int n_trunc = initial.w.order();
  if (mode < 1 || mode > n_trunc) {
    throw parameter_error("pinned mode outside the truncation range");
  }
  const double scale = std::max(1.0, initial.w.max_abs_coeff());
  if (!initial.w.is_even(1e-12 * scale)) {
    throw parameter_error("newton_solve expects an even initial guess");
  }

  WaveParameters params = initial.params;

  // At eps = 0 the mu column vanishes and the pinned row is 0 = 0; the
  // bordered system degenerates to the flat state at the dispersion point.
  if (eps == 0.0) {
    params.mu = critical_mu(mode, params.k, params.h);
    WaveState state(params, SpectralFunction(n_trunc));
    return finish_point(std::move(state), mode, 0.0, params.mu, 0.0, 0);
  }

  // Unknowns: cosine coefficients a_j for j != mode, plus mu in the pinned
  // slot.  Equations: cosine components 1..N of the residual.
  std::vector<double> a(n_trunc, 0.0);
  for (int j = 1; j <= n_trunc; ++j) a[j - 1] = initial.w.cos_coeff(j);
  double mu = params.mu;

  auto make_state = [&](const std::vector<double>& coeffs, double mu_val) {
    WaveParameters p = params;
    p.mu = mu_val;
    return WaveState(p, state_from(coeffs, mode, eps, n_trunc));
  };

  WaveState state = make_state(a, mu);
  std::vector<double> r = projected_residual(state, n_trunc);
  double rnorm = inf_norm(r);

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    if (rnorm < options.tol) {
      const double full_norm = residual(state).max_abs_coeff();
      return finish_point(std::move(state), mode, eps, mu, full_norm, iter - 1);
    }

    DenseMatrix jac(n_trunc, n_trunc);
    for (int col = 1; col <= n_trunc; ++col) {
      SpectralFunction column_fn =
          col == mode ? residual_mu_derivative(state)
                      : residual_jacobian(state, SpectralFunction::harmonic_cos(col, 1.0));
      for (int row = 1; row <= n_trunc; ++row) {
        jac(row - 1, col - 1) = column_fn.cos_coeff(row);
      }
    }

    std::vector<double> rhs(r);
    for (double& x : rhs) x = -x;
    std::vector<double> delta;
    try {
      delta = lu_solve(jac, rhs);
    } catch (const std::runtime_error&) {
      throw continuation_error("newton_solve: singular Jacobian",
                               finish_point(std::move(state), mode, eps, mu, rnorm, iter));
    }

    // Step with halving on stagnation.
    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= options.max_halvings; ++halving) {
      std::vector<double> a_try = a;
      double mu_try = mu;
      for (int j = 1; j <= n_trunc; ++j) {
        if (j == mode) {
          mu_try += step * delta[j - 1];
        } else {
          a_try[j - 1] += step * delta[j - 1];
        }
      }
      WaveState trial = make_state(a_try, mu_try);
      std::vector<double> r_try = projected_residual(trial, n_trunc);
      const double rnorm_try = inf_norm(r_try);
      if (rnorm_try < rnorm || rnorm_try < options.tol) {
        a = std::move(a_try);
        mu = mu_try;
        state = std::move(trial);
        r = std::move(r_try);
        rnorm = rnorm_try;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      throw continuation_error("newton_solve: step halving stagnated",
                               finish_point(std::move(state), mode, eps, mu, rnorm, iter));
    }
  }
  throw continuation_error(
      "newton_solve: no convergence after max_iter iterations",
      finish_point(std::move(state), mode, eps, mu, rnorm, options.max_iter));
}

Branch trace_branch(int mode, double eps_max, int steps, const WaveParameters& base,
                    int n_trunc, const NewtonOptions& options) {
  if (eps_max < 0.0) throw parameter_error("eps_max must be >= 0");
  if (steps < 0) throw parameter_error("steps must be >= 0");
  if (n_trunc < mode) throw parameter_error("truncation below the pinned mode");

  Branch branch;
  branch.mode = mode;
  branch.base = base;
  branch.base.mu = critical_mu(mode, base.k, base.h);

  WaveParameters params = branch.base;
  WaveState seed(params, SpectralFunction(n_trunc));
  branch.points.push_back(newton_solve(seed, mode, 0.0, options));

  if (eps_max == 0.0 || steps == 0) return branch;

  for (int j = 1; j <= steps; ++j) {
    const double eps = eps_max * j / steps;
    // Seed from the previous point with the predictor a_mode = eps.
    const BranchPoint& prev = branch.points.back();
    SpectralFunction w_seed = prev.state.w;
    w_seed.set_cos(mode, eps);
    WaveParameters p_seed = prev.state.params;
    p_seed.mu = prev.mu;
    try {
      branch.points.push_back(newton_solve(WaveState(p_seed, w_seed), mode, eps, options));
    } catch (const continuation_error& err) {
      branch.truncated = true;
      branch.warning = err.what();
      break;
    }
  }
  return branch;
}

BranchValidation branch_validate(const Branch& branch) {
  if (branch.points.size() < 3) {
    throw parameter_error("branch_validate needs at least 3 points");
  }
  BranchValidation out;
  const double mu_star = critical_mu(branch.mode, branch.base.k, branch.base.h);

  std::vector<double> log_eps, log_profile, log_mu;
  double eps_min = 0.0, mu_at_min = 0.0;
  for (const BranchPoint& pt : branch.points) {
    out.max_residual = std::max(out.max_residual, pt.residual_norm);
    if (pt.eps == 0.0) continue;
    SpectralFunction dev = pt.state.w;
    dev.set_cos(branch.mode, dev.cos_coeff(branch.mode) - pt.eps);
    const double profile_err = dev.l2_norm();
    const double mu_err = std::abs(pt.mu - mu_star);
    if (profile_err > 0.0 && mu_err > 0.0) {
      log_eps.push_back(std::log(pt.eps));
      log_profile.push_back(std::log(profile_err));
      log_mu.push_back(std::log(mu_err));
    }
    if (eps_min == 0.0 || pt.eps < eps_min) {
      eps_min = pt.eps;
      mu_at_min = pt.mu;
    }
  }
  if (log_eps.size() < 3) {
    out.vacuous = true;
    return out;
  }

  auto slope = [&](const std::vector<double>& y) {
    const size_t n = log_eps.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
      sx += log_eps[i];
      sy += y[i];
      sxx += log_eps[i] * log_eps[i];
      sxy += log_eps[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  out.profile_order = slope(log_profile);
  out.mu_order = slope(log_mu);
  out.mu_slope_at_zero = (mu_at_min - mu_star) / eps_min;
  out.mu_curvature = (mu_at_min - mu_star) / (eps_min * eps_min);
  return out;
}

}  // namespace wavestab
