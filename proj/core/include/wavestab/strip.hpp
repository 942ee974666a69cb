#pragma once

#include <utility>

#include "wavestab/spectral.hpp"

namespace wavestab {

/// Point in the closed strip -D <= y <= 0.
struct StripPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Complex-valued 2pi-periodic boundary trace, stored as a pair of real
/// spectral functions.
struct ComplexBoundaryFunction {
  SpectralFunction real_part;
  SpectralFunction imag_part;

  int order() const { return std::max(real_part.order(), imag_part.order()); }
  std::vector<complexd> samples(int m) const;
  ComplexBoundaryFunction derivative() const;
};

/// Holomorphic extension of a mean-free u to the strip of width d, evaluated
/// at a single point:  E_d[u](z) = -sum_{n != 0} e^{-nd}/sinh(nd) u_n e^{inz}.
/// The real part vanishes identically on the lower boundary y = -d.
complexd extend(const SpectralFunction& u, double d, StripPoint z);

/// Trace of the extension on the upper boundary: (u, -C_d(u)).
ComplexBoundaryFunction boundary_trace(const SpectralFunction& u, double d);

/// The complex field W = 1/k + C_d(w') + i w' together with the minimum of
/// its real part over the boundary.  min_real <= 0 means the free surface is
/// not a graph; the field is still returned.
struct WField {
  ComplexBoundaryFunction trace;
  double min_real = 0.0;
  double k = 1.0;
  double d = 1.0;

  bool graph_condition() const { return min_real > 0.0; }
};

WField build_W(const SpectralFunction& w, double k, double d);

/// Plotnikov transform of a mean-free u:
/// P[u] = u (1/k + C_d(w')) + w' C_d(u) = Re{W E_d[u]} on the boundary.
/// The result is mean-free.
SpectralFunction plotnikov_forward(const SpectralFunction& u, const WField& w_field);

/// Inverse transform, Re{E_d[q] / W} evaluated samplewise on the boundary.
/// Requires min Re W > 0.
SpectralFunction plotnikov_inverse(const SpectralFunction& q, const WField& w_field);

/// Residual of the product identity for the strip Hilbert transform,
///   C_d(u C_d(v) + v C_d(u)) = C_d(u) C_d(v) - u v   (modulo the mean),
/// with the right-hand side projected to mean zero; returns the max
/// coefficient difference.  The printed identity omits the mean of
/// C(u)C(v) - uv, which is generally nonzero; the left side is mean-free
/// by construction so the comparison is made modulo that constant.
double check_product_identity(const SpectralFunction& u, const SpectralFunction& v,
                              double d);

/// Residuals of the conjugation identity E_d[P[u]] = W E_d[u] + i const.
/// nonconstant is the max coefficient mismatch over the n != 0 modes;
/// constant_measured is the imaginary mean of the difference and
/// constant_predicted the derived value [C_d(u) C_d(w') - u w']_{2pi}.
struct ConjugationResiduals {
  double nonconstant = 0.0;
  double constant_measured = 0.0;
  double constant_predicted = 0.0;
};

ConjugationResiduals plotnikov_conjugation_residual(const SpectralFunction& u,
                                                    const WField& w_field);

/// Max coefficient residual of E_d[P[u]'] = W E_d[u'] + W' E_d[u], which has
/// no free constant (differentiation kills it).
double plotnikov_derivative_residual(const SpectralFunction& u, const WField& w_field);

/// Checks the boundary-pairing lemma for traces of extensions with vanishing
/// real part on y = -d.  Returns
///   ( |int Im{conj(F) G} dx - 2 int Re F Im G dx| , |contour integral of FG| )
/// where the contour is the rectangle [0, 2pi] x [-d, 0], each edge sampled
/// with nodes_per_edge composite-trapezoid nodes.  Inputs must be traces
/// produced by boundary_trace/extend so the hypothesis holds by construction.
std::pair<double, double> contour_pairing_check(const ComplexBoundaryFunction& f,
                                                const ComplexBoundaryFunction& g,
                                                double d, int nodes_per_edge = 512);

}  // namespace wavestab
