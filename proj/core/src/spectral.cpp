#include "wavestab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavestab/errors.hpp"

namespace wavestab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(int m) { return m > 0 && (m & (m - 1)) == 0; }

int next_pow2(int m) {
  int p = 1;
  while (p < m) p <<= 1;
  return p;
}

// Iterative radix-2 Cooley-Tukey, in place.  sign = -1 is the forward
// transform sum_j a_j e^{-2pi i jk/M}, sign = +1 the unscaled inverse.
void fft_inplace(std::vector<complexd>& a, int sign) {
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / len;
    const complexd wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      complexd w(1.0, 0.0);
      for (int j = 0; j < len / 2; ++j) {
        complexd u = a[i + j];
        complexd v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

void check_imaginary_residue(const std::vector<complexd>& synth) {
  double max_re = 1.0;
  double max_im = 0.0;
  for (const complexd& z : synth) {
    max_re = std::max(max_re, std::abs(z.real()));
    max_im = std::max(max_im, std::abs(z.imag()));
  }
  if (max_im > 1e-12 * max_re) {
    throw std::runtime_error("spectral synthesis produced a non-real result");
  }
}

}  // namespace

SpectralFunction::SpectralFunction(int n_max) {
  if (n_max < 0) throw parameter_error("truncation order must be >= 0");
  c_.assign(static_cast<size_t>(n_max) + 1, complexd(0.0, 0.0));
}

SpectralFunction SpectralFunction::constant(double value, int n_max) {
  SpectralFunction f(n_max);
  f.c_[0] = value;
  return f;
}

SpectralFunction SpectralFunction::harmonic_cos(int n, double amplitude, int n_max) {
  if (n < 0) throw parameter_error("harmonic index must be >= 0");
  SpectralFunction f(n_max < 0 ? n : n_max);
  f.set_cos(n, amplitude);
  return f;
}

SpectralFunction SpectralFunction::harmonic_sin(int n, double amplitude, int n_max) {
  if (n < 1) throw parameter_error("sine harmonic index must be >= 1");
  SpectralFunction f(n_max < 0 ? n : n_max);
  f.set_sin(n, amplitude);
  return f;
}

SpectralFunction SpectralFunction::from_coefficients(std::vector<complexd> coeffs) {
  if (coeffs.empty()) throw parameter_error("coefficient list must be nonempty");
  if (coeffs[0].imag() != 0.0) {
    throw parameter_error("mean coefficient must be real");
  }
  SpectralFunction f;
  f.c_ = std::move(coeffs);
  return f;
}

complexd SpectralFunction::coeff(int n) const {
  const int a = std::abs(n);
  if (a >= static_cast<int>(c_.size())) return {0.0, 0.0};
  return n >= 0 ? c_[a] : std::conj(c_[a]);
}

void SpectralFunction::set_coeff(int n, complexd value) {
  const int a = std::abs(n);
  if (a >= static_cast<int>(c_.size())) {
    throw parameter_error("coefficient index beyond truncation order");
  }
  if (a == 0) {
    if (value.imag() != 0.0) throw parameter_error("mean coefficient must be real");
    c_[0] = value;
    return;
  }
  c_[a] = n >= 0 ? value : std::conj(value);
}

double SpectralFunction::cos_coeff(int n) const {
  if (n == 0) return c_[0].real();
  return 2.0 * coeff(n).real();
}

double SpectralFunction::sin_coeff(int n) const { return -2.0 * coeff(n).imag(); }

void SpectralFunction::set_cos(int n, double a) {
  if (n == 0) {
    c_[0] = a;
    return;
  }
  if (n < 0 || n >= static_cast<int>(c_.size())) {
    throw parameter_error("coefficient index beyond truncation order");
  }
  c_[n] = complexd(a / 2.0, c_[n].imag());
}

void SpectralFunction::set_sin(int n, double b) {
  if (n < 1 || n >= static_cast<int>(c_.size())) {
    throw parameter_error("coefficient index beyond truncation order");
  }
  c_[n] = complexd(c_[n].real(), -b / 2.0);
}

bool SpectralFunction::is_mean_free(double tol) const {
  return std::abs(c_[0].real()) <= tol;
}

bool SpectralFunction::is_even(double tol) const {
  for (const complexd& z : c_) {
    if (std::abs(z.imag()) > tol) return false;
  }
  return true;
}

SpectralFunction SpectralFunction::truncated(int n_max) const {
  SpectralFunction out(n_max);
  const int keep = std::min(n_max, order());
  for (int n = 0; n <= keep; ++n) out.c_[n] = c_[n];
  return out;
}

double SpectralFunction::max_abs_coeff() const {
  double m = 0.0;
  for (const complexd& z : c_) m = std::max(m, std::abs(z));
  return m;
}

double SpectralFunction::l2_norm() const {
  double s = c_[0].real() * c_[0].real();
  for (size_t n = 1; n < c_.size(); ++n) s += 2.0 * std::norm(c_[n]);
  return std::sqrt(kTwoPi * s);
}

double SpectralFunction::max_value(int m) const {
  if (m == 0) m = next_pow2(std::max(4 * (order() + 1), 64));
  const SampledFunction s = to_samples(*this, m);
  return *std::max_element(s.values.begin(), s.values.end());
}

double SpectralFunction::min_value(int m) const {
  if (m == 0) m = next_pow2(std::max(4 * (order() + 1), 64));
  const SampledFunction s = to_samples(*this, m);
  return *std::min_element(s.values.begin(), s.values.end());
}

SpectralFunction& SpectralFunction::operator+=(const SpectralFunction& rhs) {
  if (rhs.order() > order()) c_.resize(rhs.c_.size(), complexd(0.0, 0.0));
  for (size_t n = 0; n < rhs.c_.size(); ++n) c_[n] += rhs.c_[n];
  return *this;
}

SpectralFunction& SpectralFunction::operator-=(const SpectralFunction& rhs) {
  if (rhs.order() > order()) c_.resize(rhs.c_.size(), complexd(0.0, 0.0));
  for (size_t n = 0; n < rhs.c_.size(); ++n) c_[n] -= rhs.c_[n];
  return *this;
}

SpectralFunction& SpectralFunction::operator*=(double s) {
  for (complexd& z : c_) z *= s;
  return *this;
}

SpectralFunction operator+(SpectralFunction lhs, const SpectralFunction& rhs) {
  lhs += rhs;
  return lhs;
}

SpectralFunction operator-(SpectralFunction lhs, const SpectralFunction& rhs) {
  lhs -= rhs;
  return lhs;
}

SpectralFunction operator*(double s, SpectralFunction f) {
  f *= s;
  return f;
}

double SampledFunction::x(int j) const { return kTwoPi * j / size(); }

SampledFunction to_samples(const SpectralFunction& f, int m) {
  const int n_max = f.order();
  if (m < 2 * n_max + 1) {
    throw parameter_error("sample grid too small for truncation order");
  }
  std::vector<complexd> synth(static_cast<size_t>(m), complexd(0.0, 0.0));
  if (is_pow2(m)) {
    synth[0] = f.coeff(0);
    for (int n = 1; n <= n_max; ++n) {
      synth[n] = f.coeff(n);
      synth[m - n] = f.coeff(-n);
    }
    fft_inplace(synth, +1);
  } else {
    for (int j = 0; j < m; ++j) {
      const double x = kTwoPi * j / m;
      complexd acc = f.coeff(0);
      for (int n = 1; n <= n_max; ++n) {
        const complexd e(std::cos(n * x), std::sin(n * x));
        acc += f.coeff(n) * e + f.coeff(-n) * std::conj(e);
      }
      synth[j] = acc;
    }
  }
  check_imaginary_residue(synth);
  SampledFunction out;
  out.values.resize(m);
  for (int j = 0; j < m; ++j) out.values[j] = synth[j].real();
  return out;
}

SpectralFunction from_samples(const SampledFunction& s, int n_max) {
  const int m = s.size();
  if (m < 1) throw parameter_error("empty sample vector");
  if (2 * n_max + 1 > m) {
    throw parameter_error("truncation order too large for sample grid");
  }
  std::vector<complexd> coeffs(static_cast<size_t>(n_max) + 1);
  if (is_pow2(m)) {
    std::vector<complexd> spec(s.values.begin(), s.values.end());
    fft_inplace(spec, -1);
    for (int n = 0; n <= n_max; ++n) coeffs[n] = spec[n] / double(m);
  } else {
    for (int n = 0; n <= n_max; ++n) {
      complexd acc(0.0, 0.0);
      for (int j = 0; j < m; ++j) {
        const double ang = -kTwoPi * n * j / m;
        acc += s.values[j] * complexd(std::cos(ang), std::sin(ang));
      }
      coeffs[n] = acc / double(m);
    }
  }
  coeffs[0] = complexd(coeffs[0].real(), 0.0);
  return SpectralFunction::from_coefficients(std::move(coeffs));
}

SpectralFunction derivative(const SpectralFunction& f) {
  SpectralFunction out(f.order());
  for (int n = 1; n <= f.order(); ++n) {
    out.set_coeff(n, complexd(0.0, double(n)) * f.coeff(n));
  }
  return out;
}

double mean(const SpectralFunction& f) { return f.coeff(0).real(); }

double inner_product(const SpectralFunction& f, const SpectralFunction& g) {
  const int n_max = std::min(f.order(), g.order());
  double s = f.coeff(0).real() * g.coeff(0).real();
  for (int n = 1; n <= n_max; ++n) {
    s += 2.0 * (f.coeff(n) * std::conj(g.coeff(n))).real();
  }
  return kTwoPi * s;
}

SpectralFunction multiply(const SpectralFunction& f, const SpectralFunction& g) {
  const int n_out = f.order() + g.order();
  const int m = next_pow2(std::max(2 * n_out + 2, 8));
  const SampledFunction sf = to_samples(f, m);
  const SampledFunction sg = to_samples(g, m);
  SampledFunction prod;
  prod.values.resize(m);
  for (int j = 0; j < m; ++j) prod.values[j] = sf.values[j] * sg.values[j];
  return from_samples(prod, n_out);
}

double coth_safe(double x) {
  if (x == 0.0) throw std::domain_error("coth is singular at zero");
  const double a = std::abs(x);
  double c;
  if (a > 20.0) {
    c = 1.0 + 2.0 / std::expm1(2.0 * a);
  } else {
    c = 1.0 / std::tanh(a);
  }
  return x < 0.0 ? -c : c;
}

SpectralFunction apply_strip_hilbert(const SpectralFunction& f, double d) {
  if (d <= 0.0) throw parameter_error("strip width must be positive");
  SpectralFunction out(f.order());
  for (int n = 1; n <= f.order(); ++n) {
    out.set_coeff(n, complexd(0.0, -coth_safe(n * d)) * f.coeff(n));
  }
  return out;
}

SpectralFunction apply_dtn(const SpectralFunction& f, double d) {
  if (d <= 0.0) throw parameter_error("strip width must be positive");
  SpectralFunction out(f.order());
  out.set_coeff(0, f.coeff(0).real() / d);
  for (int n = 1; n <= f.order(); ++n) {
    out.set_coeff(n, n * coth_safe(n * d) * f.coeff(n));
  }
  return out;
}

double max_coeff_diff(const SpectralFunction& f, const SpectralFunction& g) {
  const int n_max = std::max(f.order(), g.order());
  double m = 0.0;
  for (int n = 0; n <= n_max; ++n) m = std::max(m, std::abs(f.coeff(n) - g.coeff(n)));
  return m;
}

}  // namespace wavestab
