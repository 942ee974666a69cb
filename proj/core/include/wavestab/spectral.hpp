#pragma once

#include <complex>
#include <vector>

namespace wavestab {

using complexd = std::complex<double>;

/// Real 2pi-periodic function stored as truncated Fourier coefficients
/// u_n for n = 0..N.  The negative side is implied by Hermitian symmetry
/// u_{-n} = conj(u_n), so the represented function is real by construction
/// and u_0 (the mean) is kept exactly real.
///
/// Real-basis view: f(x) = a_0 + sum_{n>=1} a_n cos(nx) + b_n sin(nx) with
/// a_n = 2 Re u_n and b_n = -2 Im u_n.
class SpectralFunction {
 public:
  explicit SpectralFunction(int n_max = 0);

  static SpectralFunction constant(double value, int n_max = 0);
  static SpectralFunction harmonic_cos(int n, double amplitude, int n_max = -1);
  static SpectralFunction harmonic_sin(int n, double amplitude, int n_max = -1);
  /// Builds from the nonnegative-side coefficients u_0..u_N.  The imaginary
  /// part of u_0 must be zero.
  static SpectralFunction from_coefficients(std::vector<complexd> coeffs);

  int order() const { return static_cast<int>(c_.size()) - 1; }

  /// Coefficient u_n for any n in [-N, N]; zero outside the truncation.
  complexd coeff(int n) const;
  void set_coeff(int n, complexd value);

  double cos_coeff(int n) const;
  double sin_coeff(int n) const;
  void set_cos(int n, double a);
  void set_sin(int n, double b);

  bool is_mean_free(double tol = 0.0) const;
  bool is_even(double tol = 0.0) const;
  void project_mean_free() { c_[0] = 0.0; }

  SpectralFunction truncated(int n_max) const;

  double max_abs_coeff() const;
  /// sqrt(<f, f>) with <f, g> = int_0^{2pi} f g dx.
  double l2_norm() const;
  /// Extrema over an evaluation grid (m = 0 picks a grid well beyond the
  /// truncation order).
  double max_value(int m = 0) const;
  double min_value(int m = 0) const;

  SpectralFunction& operator+=(const SpectralFunction& rhs);
  SpectralFunction& operator-=(const SpectralFunction& rhs);
  SpectralFunction& operator*=(double s);

 private:
  std::vector<complexd> c_;  // u_0 .. u_N
};

SpectralFunction operator+(SpectralFunction lhs, const SpectralFunction& rhs);
SpectralFunction operator-(SpectralFunction lhs, const SpectralFunction& rhs);
SpectralFunction operator*(double s, SpectralFunction f);

/// Real samples on the uniform grid x_j = 2pi j / M, j = 0..M-1.
struct SampledFunction {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double x(int j) const;
};

/// Discrete Fourier synthesis on M >= 2N+1 points.  The complex synthesis is
/// checked for a vanishing imaginary residue before it is discarded.
SampledFunction to_samples(const SpectralFunction& f, int m);

/// Discrete Fourier analysis, u_n = (1/M) sum_j values_j e^{-i n x_j}.
/// Requires 2N+1 <= M.
SpectralFunction from_samples(const SampledFunction& s, int n_max);

SpectralFunction derivative(const SpectralFunction& f);

double mean(const SpectralFunction& f);

/// <f, g> = int_0^{2pi} f g dx = 2pi sum_n u_n conj(v_n).
double inner_product(const SpectralFunction& f, const SpectralFunction& g);

/// Pointwise product, computed on a dealiased grid and kept at the combined
/// order N_f + N_g, so the result is alias-free.
SpectralFunction multiply(const SpectralFunction& f, const SpectralFunction& g);

/// coth(x) without overflow; for |x| > 20 the asymptotic form
/// sign(x)(1 + 2/(e^{2|x|} - 1)) is used.  Odd symmetry is exact.
double coth_safe(double x);

/// Hilbert transform for the strip of width d: multiplier -i coth(n d) on
/// e^{inx}, n != 0.  The mean is dropped; the output is mean-free.
SpectralFunction apply_strip_hilbert(const SpectralFunction& f, double d);

/// Dirichlet-to-Neumann operator for the strip: multiplier n coth(n d) for
/// n != 0 and 1/d on the mean.
SpectralFunction apply_dtn(const SpectralFunction& f, double d);

/// max_n |f_n - g_n| over the union of the truncations.
double max_coeff_diff(const SpectralFunction& f, const SpectralFunction& g);

}  // namespace wavestab
