#include "wavestab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavestab/errors.hpp"
#include "wavestab/random.hpp"
#include "wavestab/strip.hpp"

namespace wavestab {

namespace {

constexpr double kPi = std::numbers::pi;

int next_pow2(int m) {
  int p = 1;
  while (p < m) p <<= 1;
  return p;
}

// Basis index -> multiplier gamma = j coth(j D); the multiplier C d/dx is
// diagonal on both cosine and sine modes.
double multiplier_gamma(int index, int basis_order, double d) {
  const int j = index < basis_order ? index + 1 : index - basis_order + 1;
  return j * coth_safe(j * d);
}

// Samples of the Plotnikov potential on an m-point grid, straight from the
// W field (no intermediate truncation).
std::vector<double> potential_samples(const WaveState& state, int m) {
  const double d = state.params.strip_width();
  if (state.params.b <= 0.0) {
    throw parameter_error("plotnikov potential needs a matched Bernoulli constant");
  }
  const WField wf = build_W(state.w, state.params.k, d);
  if (!wf.graph_condition()) {
    throw singular_transform_error("plotnikov potential: graph condition violated");
  }
  const std::vector<complexd> ws = wf.trace.samples(m);
  const std::vector<complexd> wps = wf.trace.derivative().samples(m);
  std::vector<double> phi(m);
  for (int j = 0; j < m; ++j) {
    phi[j] = (wps[j] / ws[j]).imag() +
             std::norm(ws[j]) / state.params.b * ws[j].real();
  }
  return phi;
}

// A(i, j) -= (1/pi) int f e_i e_j dx for all basis pairs, with f given by
// samples on the assembly grid.
void subtract_potential_block(DenseMatrix& a, const std::vector<double>& f_samples,
                              int basis_order) {
  const int m = static_cast<int>(f_samples.size());
  const int dim = 2 * basis_order;
  std::vector<std::vector<double>> basis(dim, std::vector<double>(m));
  for (int j = 1; j <= basis_order; ++j) {
    for (int s = 0; s < m; ++s) {
      const double x = 2.0 * kPi * s / m;
      basis[j - 1][s] = std::cos(j * x);
      basis[basis_order + j - 1][s] = std::sin(j * x);
    }
  }
  const double weight = 2.0 / m;  // (2 pi / m) / pi
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      double acc = 0.0;
      for (int s = 0; s < m; ++s) acc += f_samples[s] * basis[i][s] * basis[j][s];
      const double v = weight * acc;
      a(i, j) -= v;
      if (i != j) a(j, i) -= v;
    }
  }
}

}  // namespace

OperatorMatrix OperatorMatrix::checked(int basis_order, DenseMatrix entries) {
  const double scale = std::max(1.0, entries.max_abs());
  if (entries.symmetry_defect() > 1e-10 * scale) {
    throw parameter_error("operator matrix is not symmetric");
  }
  entries.symmetrize();
  return {basis_order, std::move(entries)};
}

const char* to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::stable: return "stable";
    case StabilityClass::neutral: return "neutral";
    case StabilityClass::unstable: return "unstable";
  }
  return "unknown";
}

StabilityReport classify_spectrum(std::vector<double> eigenvalues, double zero_tol) {
  std::sort(eigenvalues.begin(), eigenvalues.end());
  StabilityReport r;
  r.zero_tol = zero_tol;
  r.lambda_min = eigenvalues.empty() ? 0.0 : eigenvalues.front();
  for (double lambda : eigenvalues) {
    if (std::abs(lambda) < zero_tol) {
      ++r.n_zero;
    } else if (lambda < 0.0) {
      ++r.n_negative;
    }
  }
  r.eigenvalues = std::move(eigenvalues);
  r.classification = r.n_negative > 0
                         ? StabilityClass::unstable
                         : (r.n_zero > 0 ? StabilityClass::neutral : StabilityClass::stable);
  return r;
}

SpectralFunction plotnikov_potential(const WaveState& state) {
  const int n = std::max(state.w.order(), 1);
  const int m = next_pow2(std::max(4 * n + 4, 64));
  SampledFunction phi;
  phi.values = potential_samples(state, m);
  return from_samples(phi, state.w.order());
}

OperatorMatrix assemble_direct_form(const WaveState& state, int basis_order) {
  if (basis_order < 1) throw parameter_error("basis order must be >= 1");
  const double d = state.params.strip_width();
  const double g = state.params.g;
  const int dim = 2 * basis_order;
  const int n = state.w.order();
  const int m = next_pow2(std::max(2 * (n + 2 * basis_order) + 2, 64));

  // p = Q - 2 g v and r = g (1/k + C(w')) sampled on the assembly grid.
  SpectralFunction pressure = -2.0 * g * state.w;
  pressure.set_cos(0, state.params.hydraulic_head() - 2.0 * g * state.params.h);
  SpectralFunction conformal = apply_strip_hilbert(derivative(state.w), d);
  conformal.set_cos(0, 1.0 / state.params.k);
  const SampledFunction ps = to_samples(pressure, m);

  // Bilinear form b(e_i, e_j) = (gamma_i + gamma_j) int p e_i e_j
  //                             - 2 g int (1/k + C(w')) e_i e_j,
  // using C(e_j') = gamma_j e_j on both parities.
  DenseMatrix a(dim, dim);
  {
    const std::vector<double>& f = ps.values;
    std::vector<std::vector<double>> basis(dim, std::vector<double>(m));
    for (int j = 1; j <= basis_order; ++j) {
      for (int s = 0; s < m; ++s) {
        const double x = 2.0 * kPi * s / m;
        basis[j - 1][s] = std::cos(j * x);
        basis[basis_order + j - 1][s] = std::sin(j * x);
      }
    }
    const double weight = 2.0 * kPi / m;
    for (int i = 0; i < dim; ++i) {
      const double gi = multiplier_gamma(i, basis_order, d);
      for (int j = i; j < dim; ++j) {
        const double gj = multiplier_gamma(j, basis_order, d);
        double acc = 0.0;
        for (int s = 0; s < m; ++s) acc += f[s] * basis[i][s] * basis[j][s];
        const double pij = weight * acc;  // int p e_i e_j dx
        const double v = (gi + gj) * pij / kPi;
        a(i, j) += v;
        if (i != j) a(j, i) += v;
      }
    }
  }
  const SampledFunction rs = to_samples(conformal, m);
  std::vector<double> r2(m);
  for (int s = 0; s < m; ++s) r2[s] = 2.0 * g * rs.values[s];
  subtract_potential_block(a, r2, basis_order);
  return OperatorMatrix::checked(basis_order, std::move(a));
}

OperatorMatrix assemble_transformed_operator(const WaveState& state, int basis_order) {
  if (basis_order < 1) throw parameter_error("basis order must be >= 1");
  const double d = state.params.strip_width();
  const int dim = 2 * basis_order;
  const int n = std::max(state.w.order(), 1);
  const int m = next_pow2(std::max(2 * (n + 2 * basis_order) + 2, 64));

  DenseMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i) a(i, i) = multiplier_gamma(i, basis_order, d);
  subtract_potential_block(a, potential_samples(state, m), basis_order);
  return OperatorMatrix::checked(basis_order, std::move(a));
}

OperatorMatrix assemble_linearized_operator(const WaveParameters& params, double eps,
                                            int basis_order) {
  const PerturbationPrediction pred = perturbation_prediction(params);
  const double d = params.strip_width();
  const double phi0 = 1.0 / (params.b * params.k * params.k * params.k);
  const int dim = 2 * basis_order;
  DenseMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i) a(i, i) = multiplier_gamma(i, basis_order, d) - phi0;
  // cos(x)-multiplication couples neighboring modes within each parity block
  // with weight 1/2; the mean correction never pairs with the basis.
  const double c = eps * pred.c1 * 0.5;
  for (int block = 0; block < 2; ++block) {
    const int base = block * basis_order;
    for (int j = 1; j < basis_order; ++j) {
      a(base + j - 1, base + j) -= c;
      a(base + j, base + j - 1) -= c;
    }
  }
  return OperatorMatrix::checked(basis_order, std::move(a));
}

double direct_form_value(const WaveState& state, const SpectralFunction& u) {
  const double d = state.params.strip_width();
  const double g = state.params.g;
  SpectralFunction pressure = -2.0 * g * state.w;
  pressure.set_cos(0, state.params.hydraulic_head() - 2.0 * g * state.params.h);
  SpectralFunction conformal = apply_strip_hilbert(derivative(state.w), d);
  conformal.set_cos(0, 1.0 / state.params.k);
  const SpectralFunction cup = apply_strip_hilbert(derivative(u), d);
  return 2.0 * inner_product(pressure, multiply(u, cup)) -
         2.0 * g * inner_product(conformal, multiply(u, u));
}

double transformed_form_value(const WaveState& state, const SpectralFunction& u) {
  const double d = state.params.strip_width();
  const SpectralFunction phi = plotnikov_potential(state);
  const double quad = inner_product(u, apply_strip_hilbert(derivative(u), d)) -
                      inner_product(phi, multiply(u, u));
  return 2.0 * state.params.b * quad;
}

FormEquivalence form_equivalence_check(const WaveState& state, int trials,
                                       std::uint64_t seed) {
  if (trials < 1) throw parameter_error("need at least one trial");
  const WField wf = build_W(state.w, state.params.k, state.params.strip_width());
  if (!wf.graph_condition()) {
    throw singular_transform_error("form_equivalence_check: graph condition violated");
  }
  const int n_dir = std::min(std::max(state.w.order(), 8), 24);
  Rng rng(seed);
  FormEquivalence out;
  out.trials = trials;
  double lo = 0.0, hi = 0.0, sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    SpectralFunction u = random_mean_free(rng, n_dir, 1.0, 1.0);
    double denom = transformed_form_value(state, u);
    int guard = 0;
    while (std::abs(denom) < 1e-14 && guard++ < 100) {
      u = random_mean_free(rng, n_dir, 1.0, 1.0);
      denom = transformed_form_value(state, u);
    }
    const double ratio = direct_form_value(state, plotnikov_forward(u, wf)) / denom;
    sum += ratio;
    if (t == 0) {
      lo = hi = ratio;
    } else {
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  out.ratio_mean = sum / trials;
  out.relative_spread = (hi - lo) / std::abs(out.ratio_mean);
  return out;
}

StabilityReport trivial_spectrum(const WaveParameters& params, int n_max,
                                 double zero_tol) {
  if (n_max < 1) throw parameter_error("n_max must be >= 1");
  std::vector<double> eigs;
  eigs.reserve(2 * n_max);
  const double d = params.strip_width();
  for (int n = 1; n <= n_max; ++n) {
    const double lambda =
        2.0 * params.g * (params.mu * n * coth_safe(n * d) - 1.0 / params.k);
    eigs.push_back(lambda);  // cosine direction
    eigs.push_back(lambda);  // sine direction
  }
  return classify_spectrum(std::move(eigs), zero_tol);
}

TrivialVariationReport trivial_full_variation(const WaveParameters& params) {
  TrivialVariationReport out;
  const double k = params.k, h = params.h, g = params.g, mu = params.mu;
  // With the constraint-matched flat-state flux m = h sqrt(g mu) the
  // h-direction coefficient 4 pi (m^2/(k h^3) - g/k) reduces to
  // 4 pi g (mu - h)/(k h), so stability in h means mu > h.  This is the
  // stronger of the two conditions: kh > tanh(kh) makes mu > h imply
  // mu > tanh(kh)/k, which is where the w-spectrum
  // 2g(mu n coth(nkh) - 1/k) turns positive definite (its minimum sits at
  // n = 1).
  out.h_direction_coefficient = 4.0 * kPi * g * (mu - h) / (k * h);
  out.stable_w = mu > std::tanh(k * h) / k;
  out.stable_h = mu > h;
  return out;
}

EigenSolution symmetric_eigen(const OperatorMatrix& a) {
  return jacobi_eigensolve(a.entries);
}

PerturbationPrediction perturbation_prediction(const WaveParameters& params) {
  const double k = params.k, h = params.h;
  const double mu_star = std::tanh(k * h) / k;
  if (std::abs(params.mu - mu_star) > 1e-10 * std::max(1.0, mu_star)) {
    throw parameter_error("perturbation_prediction requires mu = mu_1*");
  }
  const double b = params.b;
  if (std::abs(b * k * k - params.mu) > 1e-10 * std::max(1.0, params.mu)) {
    throw parameter_error("perturbation_prediction requires B = mu/k^2");
  }
  PerturbationPrediction out;
  const double bk3 = b * k * k * k;
  const double denom = 2.0 * coth_safe(2.0 * k * h) - 1.0 / bk3;
  out.c1 = 3.0 * coth_safe(k * h) / (b * k * k) - k;
  out.lambda2_unit = -1.0 / (4.0 * denom);
  out.u1_coefficient = -0.5 / denom;
  return out;
}

std::vector<PointSpectrum> spectrum_along_branch(const Branch& branch, int basis_order) {
  if (branch.mode != 1) {
    throw parameter_error("spectrum_along_branch expects the mode-1 branch");
  }
  const WaveParameters at_mu1 = WaveParameters::trivial(
      branch.base.k, branch.base.h, branch.base.g,
      critical_mu(1, branch.base.k, branch.base.h));
  const PerturbationPrediction pred = perturbation_prediction(at_mu1);

  std::vector<PointSpectrum> out;
  out.reserve(branch.points.size());
  for (const BranchPoint& pt : branch.points) {
    PointSpectrum ps;
    ps.eps = pt.eps;
    ps.prediction = pred(pt.eps);

    const OperatorMatrix full = assemble_transformed_operator(pt.state, basis_order);
    EigenSolution efull = symmetric_eigen(full);
    const double ztol_full = 1e-9 * std::max(1.0, full.entries.max_abs());
    ps.transformed = classify_spectrum(efull.eigenvalues, ztol_full);
    ps.transformed.prediction = ps.prediction;

    const OperatorMatrix lin = assemble_linearized_operator(at_mu1, pt.eps, basis_order);
    EigenSolution elin = symmetric_eigen(lin);
    const double ztol_lin = 1e-9 * std::max(1.0, lin.entries.max_abs());
    ps.linearized = classify_spectrum(elin.eigenvalues, ztol_lin);
    ps.linearized.prediction = ps.prediction;

    const OperatorMatrix direct = assemble_direct_form(pt.state, basis_order);
    ps.direct_lambda_min = symmetric_eigen(direct).eigenvalues.front();
    out.push_back(std::move(ps));
  }
  return out;
}

}  // namespace wavestab
