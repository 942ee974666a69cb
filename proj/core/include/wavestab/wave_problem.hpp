#pragma once

#include <utility>
#include <vector>

#include "wavestab/spectral.hpp"
#include "wavestab/strip.hpp"

namespace wavestab {

/// Physical and conformal constants of the traveling-wave problem.  mu is
/// the primary parameter; the hydraulic head follows as Q = g mu + 2 g h.
/// The mass flux m and Bernoulli constant B are derived from the scalar
/// constraint once a state is known and stored here.
struct WaveParameters {
  double k = 1.0;   // wave number
  double h = 1.0;   // conformal mean depth
  double g = 1.0;   // gravitational constant
  double mu = 0.0;  // bifurcation parameter (length)
  double m = 0.0;   // mass flux
  double b = 0.0;   // Bernoulli constant, B = (m/(kh))^2 / g

  double hydraulic_head() const { return g * mu + 2.0 * g * h; }
  double strip_width() const { return k * h; }

  void set_mass_flux(double mass_flux);

  /// Parameters of the flat state with the mass flux matched to the
  /// constraint, m = h sqrt(g mu) and hence B = mu / k^2.  Requires mu >= 0.
  static WaveParameters trivial(double k, double h, double g, double mu);
};

/// A candidate wave: parameters plus the mean-free even surface profile.
struct WaveState {
  WaveParameters params;
  SpectralFunction w;

  WaveState(WaveParameters params_in, SpectralFunction w_in);

  /// Q/(2g) - h - max(w); positive for regularly parametrized surfaces.
  double regularity_margin() const;
};

/// Residual of the governing equation,
///   R = mu C(w') - w/k - w C(w') - C(w w') + [w C(w')],
/// exactly mean-free; R = 0 characterizes solutions.  Returned at the
/// combined (alias-free) order of the nonlinear terms.
SpectralFunction residual(const WaveState& state);

/// Directional derivative of the residual at the state in direction u.
SpectralFunction residual_jacobian(const WaveState& state, const SpectralFunction& u);

/// dR/dmu = C(w').
SpectralFunction residual_mu_derivative(const WaveState& state);

/// Mass flux and Bernoulli constant from the scalar constraint,
///   m = kh sqrt([(Q - 2gv)((v')^2 + G(v)^2)]),  B = (m/(kh))^2/g.
/// Throws nonphysical_state_error on a negative radicand.
std::pair<double, double> mass_flux_from_constraint(const WaveState& state);

/// Max pointwise violation of Bernoulli's law,
///   max_x |(Q - 2gv)((v')^2 + G(v)^2) - gB|,
/// evaluated identically through |W|^2; zero on exact solutions with matched
/// m, which makes it an oracle independent of the solver.
double bernoulli_residual(const WaveState& state);

/// Max pointwise residual of the differentiated law, w'|W|^2 = B Re{W'/W}.
double bernoulli_derivative_residual(const WaveState& state);

/// The functional whose critical points solve the governing equation:
///   Lambda = int (Qv - g v^2)(1/k + C(w')) + m^2/(kh) dx.
double functional_lambda(const WaveState& state);

/// min over samples of 1/k + C(w'); positive iff the surface is a graph.
double graph_condition_min(const WaveState& state);

/// Free-surface points (x/k + C(w)(x), w(x) + h) at count uniform samples.
std::vector<std::pair<double, double>> surface_points(const WaveState& state, int count);

/// Physical mean depth d = h + k [w C(w')] and wave speed c = m/h.
std::pair<double, double> mean_depth_and_speed(const WaveState& state);

struct SymbolRow {
  int n = 0;
  double finite_depth = 0.0;    // n coth(nD), 1/D at n = 0
  double infinite_depth = 0.0;  // |n|
};

/// Side-by-side multiplier symbols for n = -n_max..n_max; the finite-depth
/// column stays >= 1/D (the spectral gap) while the
/// infinite-depth column touches zero.
std::vector<SymbolRow> symbol_compare(double d, int n_max);

}  // namespace wavestab
