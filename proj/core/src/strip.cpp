#include "wavestab/strip.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavestab/errors.hpp"

namespace wavestab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int next_pow2(int m) {
  int p = 1;
  while (p < m) p <<= 1;
  return p;
}

void require_mean_free(const SpectralFunction& u, const char* who) {
  if (!u.is_mean_free(1e-14 * std::max(1.0, u.max_abs_coeff()))) {
    throw parameter_error(std::string(who) + ": input must be mean-free");
  }
}

// The n-th term of E_d[u](z) is q_n(y) u_n e^{inx} with
// q_n(y) = -(e^{-nd}/sinh(nd)) e^{-ny}, evaluated in overflow-free form.
double extension_factor(int n, double d, double y) {
  if (n > 0) {
    return -2.0 * std::exp(-n * (2.0 * d + y)) / (1.0 - std::exp(-2.0 * n * d));
  }
  const int m = -n;
  return 2.0 * std::exp(m * y) / (1.0 - std::exp(-2.0 * m * d));
}

}  // namespace

std::vector<complexd> ComplexBoundaryFunction::samples(int m) const {
  const SampledFunction re = to_samples(real_part.truncated(order()), m);
  const SampledFunction im = to_samples(imag_part.truncated(order()), m);
  std::vector<complexd> out(m);
  for (int j = 0; j < m; ++j) out[j] = complexd(re.values[j], im.values[j]);
  return out;
}

ComplexBoundaryFunction ComplexBoundaryFunction::derivative() const {
  return {wavestab::derivative(real_part), wavestab::derivative(imag_part)};
}

complexd extend(const SpectralFunction& u, double d, StripPoint z) {
  if (d <= 0.0) throw parameter_error("strip width must be positive");
  require_mean_free(u, "extend");
  if (z.y > 1e-14 || z.y < -d - 1e-14) {
    throw parameter_error("extend: point outside the closed strip");
  }
  complexd acc(0.0, 0.0);
  for (int n = 1; n <= u.order(); ++n) {
    const complexd e(std::cos(n * z.x), std::sin(n * z.x));
    acc += extension_factor(n, d, z.y) * u.coeff(n) * e;
    acc += extension_factor(-n, d, z.y) * u.coeff(-n) * std::conj(e);
  }
  return acc;
}

ComplexBoundaryFunction boundary_trace(const SpectralFunction& u, double d) {
  require_mean_free(u, "boundary_trace");
  return {u, -1.0 * apply_strip_hilbert(u, d)};
}

WField build_W(const SpectralFunction& w, double k, double d) {
  if (k <= 0.0) throw parameter_error("wave number must be positive");
  require_mean_free(w, "build_W");
  const SpectralFunction wp = derivative(w);
  SpectralFunction re = apply_strip_hilbert(wp, d);
  re.set_cos(0, 1.0 / k);
  WField out;
  out.trace = {re, wp};
  out.k = k;
  out.d = d;
  out.min_real = re.min_value();
  return out;
}

SpectralFunction plotnikov_forward(const SpectralFunction& u, const WField& w_field) {
  require_mean_free(u, "plotnikov_forward");
  SpectralFunction p = multiply(u, w_field.trace.real_part) +
                       multiply(w_field.trace.imag_part, apply_strip_hilbert(u, w_field.d));
  // Mean-free exactly by the skew symmetry of the multiplier; project off the
  // rounding residue after checking it really is a residue.
  if (std::abs(mean(p)) > 1e-10 * std::max(1.0, p.max_abs_coeff())) {
    throw std::runtime_error("plotnikov_forward: unexpected mean residue");
  }
  p.project_mean_free();
  return p;
}

SpectralFunction plotnikov_inverse(const SpectralFunction& q, const WField& w_field) {
  require_mean_free(q, "plotnikov_inverse");
  if (w_field.min_real <= 0.0) {
    throw singular_transform_error("plotnikov_inverse: Re W is not positive");
  }
  // The inverse of a band-limited q is not band-limited; its tail decays
  // geometrically at the rate set by the relative size of W - 1/k.  Widen
  // the mode margin until the top of the spectrum has decayed to roundoff,
  // with a doubled analysis grid keeping aliasing below it.
  const ComplexBoundaryFunction eq = boundary_trace(q, w_field.d);
  SpectralFunction out;
  SampledFunction defect_dir;
  int n_out = 0;
  for (int margin = 32; margin <= 256; margin *= 2) {
    n_out = q.order() + w_field.trace.order() + margin;
    const int m = 2 * next_pow2(std::max(2 * n_out + 2, 64));
    const std::vector<complexd> es = eq.samples(m);
    const std::vector<complexd> ws = w_field.trace.samples(m);
    SampledFunction ratio;
    ratio.values.resize(m);
    defect_dir.values.resize(m);
    for (int j = 0; j < m; ++j) {
      ratio.values[j] = (es[j] / ws[j]).real();
      defect_dir.values[j] = ws[j].imag() / std::norm(ws[j]);
    }
    out = from_samples(ratio, n_out);
    double tail = 0.0;
    for (int n = n_out - 7; n <= n_out; ++n) tail = std::max(tail, std::abs(out.coeff(n)));
    if (tail < 1e-13 * std::max(1.0, out.max_abs_coeff()) || margin == 256) break;
  }

  // The conjugation identity carries an additive imaginary constant
  // kappa(u) = [C(u) C(w') - u w'], so Re{E[q]/W} returns u plus
  // kappa(u) Im(W)/|W|^2.  kappa is linear, which makes the defect removable
  // in closed form; it vanishes when w = 0.
  const SpectralFunction& wp = w_field.trace.imag_part;
  const auto kappa = [&](const SpectralFunction& f) {
    return mean(multiply(apply_strip_hilbert(f, w_field.d),
                         apply_strip_hilbert(wp, w_field.d)) -
                multiply(f, wp));
  };
  if (wp.max_abs_coeff() > 0.0) {
    const SpectralFunction mdir = from_samples(defect_dir, n_out);
    const double scale = kappa(out) / (1.0 + kappa(mdir));
    out -= scale * mdir;
  }

  if (std::abs(mean(out)) > 1e-10 * std::max(1.0, out.max_abs_coeff())) {
    throw std::runtime_error("plotnikov_inverse: unexpected mean residue");
  }
  out.project_mean_free();
  return out;
}

double check_product_identity(const SpectralFunction& u, const SpectralFunction& v,
                              double d) {
  const auto c = [d](const SpectralFunction& f) { return apply_strip_hilbert(f, d); };
  const SpectralFunction cu = c(u);
  const SpectralFunction cv = c(v);
  const SpectralFunction lhs = c(multiply(u, cv) + multiply(v, cu));
  SpectralFunction rhs = multiply(cu, cv) - multiply(u, v);
  rhs.project_mean_free();
  return max_coeff_diff(lhs, rhs);
}

namespace {

// Samplewise product of two boundary traces, re-analyzed at the given order.
ComplexBoundaryFunction trace_product(const ComplexBoundaryFunction& a,
                                      const ComplexBoundaryFunction& b, int n_out) {
  const int m = next_pow2(std::max(2 * (a.order() + b.order()) + 2, 16));
  const std::vector<complexd> as = a.samples(m);
  const std::vector<complexd> bs = b.samples(m);
  SampledFunction re, im;
  re.values.resize(m);
  im.values.resize(m);
  for (int j = 0; j < m; ++j) {
    const complexd p = as[j] * bs[j];
    re.values[j] = p.real();
    im.values[j] = p.imag();
  }
  return {from_samples(re, n_out), from_samples(im, n_out)};
}

double trace_coeff_diff(const ComplexBoundaryFunction& a, const ComplexBoundaryFunction& b,
                        bool skip_mean) {
  double m = std::max(skip_mean ? 0.0
                                : std::abs(mean(a.real_part) - mean(b.real_part)),
                      skip_mean ? 0.0
                                : std::abs(mean(a.imag_part) - mean(b.imag_part)));
  const int n_max = std::max(a.order(), b.order());
  for (int n = 1; n <= n_max; ++n) {
    m = std::max(m, std::abs(a.real_part.coeff(n) - b.real_part.coeff(n)));
    m = std::max(m, std::abs(a.imag_part.coeff(n) - b.imag_part.coeff(n)));
  }
  return m;
}

}  // namespace

ConjugationResiduals plotnikov_conjugation_residual(const SpectralFunction& u,
                                                    const WField& w_field) {
  const double d = w_field.d;
  const SpectralFunction p = plotnikov_forward(u, w_field);
  const ComplexBoundaryFunction lhs = boundary_trace(p, d);
  const int n_out = u.order() + w_field.trace.order();
  const ComplexBoundaryFunction rhs =
      trace_product(w_field.trace, boundary_trace(u, d), n_out);

  ConjugationResiduals out;
  out.nonconstant = trace_coeff_diff(lhs, rhs, /*skip_mean=*/true);
  out.constant_measured = mean(lhs.imag_part) - mean(rhs.imag_part);
  const SpectralFunction wp = w_field.trace.imag_part;  // w'
  out.constant_predicted =
      mean(multiply(apply_strip_hilbert(u, d), apply_strip_hilbert(wp, d)) -
           multiply(u, wp));
  // The real parts agree on every mode including the mean.
  out.nonconstant = std::max(
      out.nonconstant, std::abs(mean(lhs.real_part) - mean(rhs.real_part)));
  return out;
}

double plotnikov_derivative_residual(const SpectralFunction& u, const WField& w_field) {
  const double d = w_field.d;
  const SpectralFunction p = plotnikov_forward(u, w_field);
  const ComplexBoundaryFunction lhs = boundary_trace(derivative(p), d);
  const int n_out = u.order() + w_field.trace.order();
  const ComplexBoundaryFunction term1 =
      trace_product(w_field.trace, boundary_trace(derivative(u), d), n_out);
  const ComplexBoundaryFunction term2 =
      trace_product(w_field.trace.derivative(), boundary_trace(u, d), n_out);
  const ComplexBoundaryFunction rhs = {term1.real_part + term2.real_part,
                                       term1.imag_part + term2.imag_part};
  return trace_coeff_diff(lhs, rhs, /*skip_mean=*/false);
}

std::pair<double, double> contour_pairing_check(const ComplexBoundaryFunction& f,
                                                const ComplexBoundaryFunction& g,
                                                double d, int nodes_per_edge) {
  if (d <= 0.0) throw parameter_error("strip width must be positive");
  if (nodes_per_edge < 2) throw parameter_error("need at least two nodes per edge");

  // The hypothesis Re F(x - i d) = 0 holds iff F is the trace of an
  // extension, i.e. Im F = -C_d(Re F); enforce it constructively.
  const auto check_trace = [d](const ComplexBoundaryFunction& t, const char* who) {
    const SpectralFunction expected = -1.0 * apply_strip_hilbert(t.real_part, d);
    const double scale = std::max(1.0, t.real_part.max_abs_coeff());
    if (max_coeff_diff(t.imag_part, expected) > 1e-10 * scale ||
        std::abs(mean(t.real_part)) > 1e-12 * scale) {
      throw parameter_error(std::string(who) +
                            ": input is not the boundary trace of an extension");
    }
  };
  check_trace(f, "contour_pairing_check");
  check_trace(g, "contour_pairing_check");

  const SpectralFunction& uf = f.real_part;
  const SpectralFunction& ug = g.real_part;

  // Pairing residual on the boundary: trapezoid rule is exact here since the
  // integrands are trigonometric polynomials.
  const int m = next_pow2(std::max(4 * (f.order() + g.order()) + 4, 64));
  const std::vector<complexd> fs = f.samples(m);
  const std::vector<complexd> gs = g.samples(m);
  double lhs = 0.0, rhs = 0.0;
  for (int j = 0; j < m; ++j) {
    lhs += (std::conj(fs[j]) * gs[j]).imag();
    rhs += fs[j].real() * gs[j].imag();
  }
  const double pairing_residual = std::abs(lhs - 2.0 * rhs) * kTwoPi / m;

  // Contour integral of F G over the rectangle (0,0) -> (2pi,0) -> (2pi,-d)
  // -> (0,-d) -> (0,0); composite trapezoid on every edge.  The vertical
  // edges cancel by periodicity and act as a cross-check.
  const auto value = [&](double x, double y) {
    const StripPoint z{x, y};
    return extend(uf, d, z) * extend(ug, d, z);
  };
  const int q = nodes_per_edge;
  complexd contour(0.0, 0.0);
  const auto edge = [&](complexd z0, complexd z1) {
    const complexd dz = (z1 - z0) / double(q);
    complexd acc = 0.5 * (value(z0.real(), z0.imag()) + value(z1.real(), z1.imag()));
    for (int j = 1; j < q; ++j) {
      const complexd z = z0 + double(j) * dz;
      acc += value(z.real(), z.imag());
    }
    return acc * dz;
  };
  contour += edge(complexd(0.0, 0.0), complexd(kTwoPi, 0.0));
  contour += edge(complexd(kTwoPi, 0.0), complexd(kTwoPi, -d));
  contour += edge(complexd(kTwoPi, -d), complexd(0.0, -d));
  contour += edge(complexd(0.0, -d), complexd(0.0, 0.0));

  return {pairing_residual, std::abs(contour)};
}

}  // namespace wavestab
