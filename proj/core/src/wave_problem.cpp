#include "wavestab/wave_problem.hpp"

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

}  // namespace

void WaveParameters::set_mass_flux(double mass_flux) {
  m = mass_flux;
  const double ratio = m / (k * h);
  b = ratio * ratio / g;
}

WaveParameters WaveParameters::trivial(double k, double h, double g, double mu) {
  if (k <= 0.0 || h <= 0.0 || g <= 0.0) {
    throw parameter_error("physical parameters must be positive");
  }
  if (mu < 0.0) {
    throw nonphysical_state_error("trivial state requires mu >= 0");
  }
  WaveParameters p;
  p.k = k;
  p.h = h;
  p.g = g;
  p.mu = mu;
  p.set_mass_flux(h * std::sqrt(g * mu));
  return p;
}

WaveState::WaveState(WaveParameters params_in, SpectralFunction w_in)
    : params(params_in), w(std::move(w_in)) {
  if (params.k <= 0.0 || params.h <= 0.0 || params.g <= 0.0) {
    throw parameter_error("physical parameters must be positive");
  }
  const double scale = std::max(1.0, w.max_abs_coeff());
  if (!w.is_mean_free(1e-14 * scale)) {
    throw parameter_error("wave profile must be mean-free");
  }
  if (!w.is_even(1e-12 * scale)) {
    throw parameter_error("wave profile must be even");
  }
  w.project_mean_free();
}

double WaveState::regularity_margin() const {
  return params.hydraulic_head() / (2.0 * params.g) - params.h - w.max_value();
}

SpectralFunction residual(const WaveState& state) {
  const double d = state.params.strip_width();
  const double k = state.params.k;
  const SpectralFunction& w = state.w;
  const SpectralFunction cwp = apply_strip_hilbert(derivative(w), d);

  SpectralFunction r = state.params.mu * cwp;
  r -= (1.0 / k) * w;
  const SpectralFunction wcwp = multiply(w, cwp);
  r -= wcwp;
  // C(w w') = C((w^2)')/2
  r -= 0.5 * apply_strip_hilbert(derivative(multiply(w, w)), d);
  r.set_cos(0, r.cos_coeff(0) + mean(wcwp));
  return r;
}

SpectralFunction residual_jacobian(const WaveState& state, const SpectralFunction& u) {
  const double d = state.params.strip_width();
  const double k = state.params.k;
  const SpectralFunction& w = state.w;
  const SpectralFunction cwp = apply_strip_hilbert(derivative(w), d);
  const SpectralFunction cup = apply_strip_hilbert(derivative(u), d);

  SpectralFunction r = state.params.mu * cup;
  r -= (1.0 / k) * u;
  const SpectralFunction ucwp = multiply(u, cwp);
  const SpectralFunction wcup = multiply(w, cup);
  r -= ucwp;
  r -= wcup;
  r -= apply_strip_hilbert(derivative(multiply(w, u)), d);
  r.set_cos(0, r.cos_coeff(0) + mean(ucwp) + mean(wcup));
  return r;
}

SpectralFunction residual_mu_derivative(const WaveState& state) {
  return apply_strip_hilbert(derivative(state.w), state.params.strip_width());
}

namespace {

// Samples of (v')^2 + G(v)^2 = |W|^2 and of Q - 2gv on a grid exact for the
// quadratic terms.
struct BernoulliSamples {
  std::vector<double> pressure;  // Q - 2 g v
  std::vector<double> w_sq;      // (v')^2 + G(v)^2
  int m = 0;
};

BernoulliSamples bernoulli_samples(const WaveState& state) {
  const double d = state.params.strip_width();
  const double g = state.params.g;
  const double q = state.params.hydraulic_head();
  const int n = std::max(state.w.order(), 1);
  const int m = next_pow2(std::max(4 * n + 4, 64));

  const SampledFunction wv = to_samples(state.w, m);
  const SampledFunction wp = to_samples(derivative(state.w), m);
  SpectralFunction gv = apply_strip_hilbert(derivative(state.w), d);
  gv.set_cos(0, 1.0 / state.params.k);  // G(v) = 1/k + C(w')
  const SampledFunction gvs = to_samples(gv, m);

  BernoulliSamples out;
  out.m = m;
  out.pressure.resize(m);
  out.w_sq.resize(m);
  for (int j = 0; j < m; ++j) {
    out.pressure[j] = q - 2.0 * g * (state.params.h + wv.values[j]);
    out.w_sq[j] = wp.values[j] * wp.values[j] + gvs.values[j] * gvs.values[j];
  }
  return out;
}

}  // namespace

std::pair<double, double> mass_flux_from_constraint(const WaveState& state) {
  const BernoulliSamples s = bernoulli_samples(state);
  double acc = 0.0;
  for (int j = 0; j < s.m; ++j) acc += s.pressure[j] * s.w_sq[j];
  const double radicand = acc / s.m;
  if (radicand < 0.0) {
    throw nonphysical_state_error("constraint radicand is negative");
  }
  const double kh = state.params.k * state.params.h;
  const double m_flux = kh * std::sqrt(radicand);
  const double b = radicand / state.params.g;
  return {m_flux, b};
}

double bernoulli_residual(const WaveState& state) {
  const BernoulliSamples s = bernoulli_samples(state);
  const double gb = state.params.g * state.params.b;
  double worst = 0.0;
  for (int j = 0; j < s.m; ++j) {
    worst = std::max(worst, std::abs(s.pressure[j] * s.w_sq[j] - gb));
  }
  return worst;
}

double bernoulli_derivative_residual(const WaveState& state) {
  const double d = state.params.strip_width();
  const WField wf = build_W(state.w, state.params.k, d);
  const int n = std::max(state.w.order(), 1);
  const int m = next_pow2(std::max(4 * n + 4, 64));
  const std::vector<complexd> ws = wf.trace.samples(m);
  const std::vector<complexd> wps = wf.trace.derivative().samples(m);
  const SampledFunction wp = to_samples(derivative(state.w), m);
  double worst = 0.0;
  for (int j = 0; j < m; ++j) {
    const double lhs = wp.values[j] * std::norm(ws[j]);
    const double rhs = state.params.b * (wps[j] / ws[j]).real();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double functional_lambda(const WaveState& state) {
  const double d = state.params.strip_width();
  const double g = state.params.g;
  const double q = state.params.hydraulic_head();
  const double k = state.params.k;
  const double h = state.params.h;

  // v = w + h; p = Q v - g v^2 has order 2N, the conformal factor order N;
  // the mean of their product is exact by coefficient pairing.
  SpectralFunction v = state.w;
  v.set_cos(0, h);
  SpectralFunction p = q * v - g * multiply(v, v);
  SpectralFunction factor = apply_strip_hilbert(derivative(state.w), d);
  factor.set_cos(0, 1.0 / k);
  const double kh = state.params.k * state.params.h;
  return inner_product(p, factor) + kTwoPi * state.params.m * state.params.m / kh;
}

double graph_condition_min(const WaveState& state) {
  SpectralFunction factor =
      apply_strip_hilbert(derivative(state.w), state.params.strip_width());
  factor.set_cos(0, 1.0 / state.params.k);
  return factor.min_value();
}

namespace {

double value_at(const SpectralFunction& f, double x) {
  double acc = mean(f);
  for (int n = 1; n <= f.order(); ++n) {
    acc += 2.0 * (f.coeff(n) * complexd(std::cos(n * x), std::sin(n * x))).real();
  }
  return acc;
}

}  // namespace

std::vector<std::pair<double, double>> surface_points(const WaveState& state, int count) {
  if (count < 1) throw parameter_error("need at least one surface point");
  const double d = state.params.strip_width();
  const SpectralFunction cw = apply_strip_hilbert(state.w, d);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double x = kTwoPi * i / count;
    pts.emplace_back(x / state.params.k + value_at(cw, x),
                     state.params.h + value_at(state.w, x));
  }
  return pts;
}

std::pair<double, double> mean_depth_and_speed(const WaveState& state) {
  const double d = state.params.strip_width();
  const SpectralFunction cwp = apply_strip_hilbert(derivative(state.w), d);
  const double deviation = mean(multiply(state.w, cwp));
  const double depth = state.params.h + state.params.k * deviation;
  const double speed = state.params.m / state.params.h;
  return {depth, speed};
}

std::vector<SymbolRow> symbol_compare(double d, int n_max) {
  if (d <= 0.0) throw parameter_error("strip width must be positive");
  if (n_max < 0) throw parameter_error("n_max must be >= 0");
  std::vector<SymbolRow> rows;
  rows.reserve(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) {
    SymbolRow row;
    row.n = n;
    row.finite_depth = n == 0 ? 1.0 / d : n * coth_safe(n * d);
    row.infinite_depth = std::abs(n);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wavestab
