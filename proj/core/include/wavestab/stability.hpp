#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wavestab/continuation.hpp"
#include "wavestab/linalg.hpp"
#include "wavestab/wave_problem.hpp"

namespace wavestab {

/// Dense symmetric representation of a quadratic form over the orthonormal
/// mean-free trigonometric basis {cos(jx)/sqrt(pi), sin(jx)/sqrt(pi)},
/// j = 1..basis_order (cosines first).  The constant mode is excluded.
struct OperatorMatrix {
  int basis_order = 0;
  DenseMatrix entries;

  /// Validates near-symmetry (defect below 1e-10 of scale) and symmetrizes.
  static OperatorMatrix checked(int basis_order, DenseMatrix entries);
};

enum class StabilityClass { stable, neutral, unstable };

struct StabilityReport {
  std::vector<double> eigenvalues;  // ascending
  int n_negative = 0;
  int n_zero = 0;  // |lambda| < zero_tol
  double lambda_min = 0.0;
  std::optional<double> prediction;
  StabilityClass classification = StabilityClass::stable;
  double zero_tol = 0.0;
};

const char* to_string(StabilityClass c);

/// Builds a StabilityReport from an ascending eigenvalue list.
StabilityReport classify_spectrum(std::vector<double> eigenvalues, double zero_tol);

/// Plotnikov potential Phi = Im{W'/W} + (|W|^2/B)(1/k + C(w')), sampled from
/// the state's W field and re-analyzed at the state's truncation order.
/// Requires the graph condition (min Re W > 0) and a matched B.
SpectralFunction plotnikov_potential(const WaveState& state);

/// Matrix of the second variation of the functional,
///   u -> 2 int (Q-2gv) u C(u') - g(1/k + C(w')) u^2 dx,
/// on the orthonormal mean-free basis.
OperatorMatrix assemble_direct_form(const WaveState& state, int basis_order);

/// Matrix of the transformed operator L u = C(u') - Phi u + [Phi u] with the
/// full potential of the state.
OperatorMatrix assemble_transformed_operator(const WaveState& state, int basis_order);

/// Matrix of the first-order operator family along the branch,
///   L_eps = C(u') - Phi0 u - eps c1 (cos(x) u - [cos(x) u]),
/// the operator whose degenerate-perturbation series the predictor expands.
/// params must sit at the first bifurcation point.
OperatorMatrix assemble_linearized_operator(const WaveParameters& params, double eps,
                                            int basis_order);

/// Value of the direct quadratic form on u, by exact spectral quadrature;
/// independent of the matrix assembly path.
double direct_form_value(const WaveState& state, const SpectralFunction& u);

/// Value of the transformed form 2B int u C(u') - Phi u^2 dx.
double transformed_form_value(const WaveState& state, const SpectralFunction& u);

struct FormEquivalence {
  double ratio_mean = 0.0;
  double relative_spread = 0.0;
  int trials = 0;
};

/// Ratio of the direct form on P[u] to the transformed form on u over random
/// mean-free directions.  A spread at roundoff level certifies the two forms
/// are proportional; at the flat state the ratio equals g.
FormEquivalence form_equivalence_check(const WaveState& state, int trials,
                                       std::uint64_t seed = 0x5EED);

/// Closed-form spectrum of the second variation at the flat state:
/// 2g(mu n coth(n k h) - 1/k) with multiplicity two for n = 1..n_max.
StabilityReport trivial_spectrum(const WaveParameters& params, int n_max,
                                 double zero_tol = 1e-12);

struct TrivialVariationReport {
  double h_direction_coefficient = 0.0;  // 4 pi (m^2/(k h^3) - g/k)
  bool stable_w = false;                 // mu > tanh(kh)/k
  bool stable_h = false;                 // m^2 > g h^3, i.e. mu > h
  /// both -> stable in w and h; w_only -> stable in w only; none otherwise.
  const char* region_class() const {
    return stable_w ? (stable_h ? "both" : "w_only") : "none";
  }
};

/// Stability conditions of the flat state when the conformal depth is
/// allowed to vary, with the constraint-matched mass flux m = h sqrt(g mu).
/// stable_h implies stable_w, so the h-condition carves the smaller region.
TrivialVariationReport trivial_full_variation(const WaveParameters& params);

/// Spectral decomposition of an OperatorMatrix (cyclic Jacobi).
EigenSolution symmetric_eigen(const OperatorMatrix& a);

/// Constants of the degenerate eigenvalue expansion at the first bifurcation
/// point: lambda(eps) = lambda2_unit (c1 eps)^2 + O(eps^3) with
///   c1 = 3 coth(kh)/(B k^2) - k,
///   lambda2_unit = -1/(4(2 coth(2kh) - 1/(B k^3))) = -1/(4 tanh(kh)),
/// under the L^2 normalization ||u0|| = 1.  The first-order eigenvector
/// correction is u1_coefficient (xi_c cos 2x + xi_s sin 2x).
struct PerturbationPrediction {
  double c1 = 0.0;
  double lambda2_unit = 0.0;
  double u1_coefficient = 0.0;

  double operator()(double eps) const {
    return lambda2_unit * (c1 * eps) * (c1 * eps);
  }
};

PerturbationPrediction perturbation_prediction(const WaveParameters& params);

/// Spectra of the second variation along a mode-1 branch.  Both assemblies
/// are reported: the transformed operator with the full potential of each
/// converged state, and the first-order family the predictor describes.
/// direct_lambda_min cross-checks the sign through the untransformed form.
struct PointSpectrum {
  double eps = 0.0;
  StabilityReport transformed;   // full potential
  StabilityReport linearized;    // first-order family L_eps
  double direct_lambda_min = 0.0;
  double prediction = 0.0;
};

std::vector<PointSpectrum> spectrum_along_branch(const Branch& branch,
                                                 int basis_order = 64);

}  // namespace wavestab
