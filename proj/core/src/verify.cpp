#include "wavestab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wavestab/continuation.hpp"
#include "wavestab/random.hpp"
#include "wavestab/stability.hpp"
#include "wavestab/strip.hpp"

namespace wavestab {

namespace {

VerifySuiteResult make_result(std::string name, int cases, double max_residual,
                              double tolerance) {
  return {std::move(name), cases, max_residual, tolerance,
          max_residual <= tolerance};
}

VerifySuiteResult check_gc_relation(Rng& rng) {
  double worst = 0.0;
  int cases = 0;
  for (double d : {0.5, 1.0, 2.0}) {
    for (int trial = 0; trial < 8; ++trial) {
      SpectralFunction f = random_mean_free(rng, 48, 1.0);
      f.set_cos(0, rng.uniform(-2.0, 2.0));
      SpectralFunction rhs = apply_strip_hilbert(derivative(f), d);
      rhs.set_cos(0, mean(f) / d);
      worst = std::max(worst, max_coeff_diff(apply_dtn(f, d), rhs));
      ++cases;
    }
  }
  return make_result("gc_relation", cases, worst, 1e-13);
}

VerifySuiteResult check_product_identity_suite(Rng& rng) {
  double worst = 0.0;
  int cases = 0;
  const double widths[] = {0.5, 1.0, 2.0};
  for (int trial = 0; trial < 100; ++trial) {
    const double d = widths[trial % 3];
    SpectralFunction u = random_mean_free(rng, 32, 1.0);
    SpectralFunction v = random_mean_free(rng, 32, 1.0);
    worst = std::max(worst, check_product_identity(u, v, d));
    ++cases;
  }
  return make_result("product_identity_mod_mean", cases, worst, 1e-10);
}

VerifySuiteResult check_boundary_pairing(Rng& rng) {
  double worst = 0.0;
  int cases = 0;
  for (int trial = 0; trial < 20; ++trial) {
    SpectralFunction u = random_mean_free(rng, 8, 1.0);
    SpectralFunction v = random_mean_free(rng, 8, 1.0);
    const auto [pairing, contour] =
        contour_pairing_check(boundary_trace(u, 1.0), boundary_trace(v, 1.0), 1.0, 512);
    worst = std::max({worst, pairing, contour});
    ++cases;
  }
  return make_result("boundary_pairing", cases, worst, 1e-8);
}

VerifySuiteResult check_conjugation(Rng& rng) {
  double worst = 0.0;
  int cases = 0;
  for (int trial = 0; trial < 10; ++trial) {
    SpectralFunction w = random_even_mean_free(rng, 16, 0.02, 1.0);
    const WField wf = build_W(w, 1.0, 1.0);
    SpectralFunction u = random_mean_free(rng, 16, 1.0);
    const ConjugationResiduals r = plotnikov_conjugation_residual(u, wf);
    worst = std::max({worst, r.nonconstant,
                      std::abs(r.constant_measured - r.constant_predicted)});
    ++cases;
  }
  return make_result("plotnikov_conjugation", cases, worst, 1e-9);
}

VerifySuiteResult check_derivative_relation(Rng& rng) {
  double worst = 0.0;
  int cases = 0;
  for (int trial = 0; trial < 10; ++trial) {
    SpectralFunction w = random_even_mean_free(rng, 16, 0.02, 1.0);
    const WField wf = build_W(w, 1.0, 1.0);
    SpectralFunction u = random_mean_free(rng, 16, 1.0);
    worst = std::max(worst, plotnikov_derivative_residual(u, wf));
    ++cases;
  }
  return make_result("plotnikov_derivative", cases, worst, 1e-9);
}

VerifySuiteResult check_jacobian_fd(Rng& rng) {
  double worst = 0.0;
  int cases = 0;
  for (int trial = 0; trial < 20; ++trial) {
    WaveParameters p;
    p.k = rng.uniform(0.5, 2.0);
    p.h = rng.uniform(0.5, 2.0);
    p.g = rng.uniform(0.5, 2.0);
    p.mu = rng.uniform(0.1, 1.0);
    WaveState state(p, random_even_mean_free(rng, 12, 0.05, 1.0));
    SpectralFunction u = random_even_mean_free(rng, 12, 1.0, 1.0);
    const double step = 1e-6;
    SpectralFunction fd =
        residual(WaveState(p, state.w + step * u)) -
        residual(WaveState(p, state.w - step * u));
    fd *= 1.0 / (2.0 * step);
    worst = std::max(worst, max_coeff_diff(residual_jacobian(state, u), fd));
    ++cases;
  }
  return make_result("jacobian_vs_fd", cases, worst, 1e-7);
}

VerifySuiteResult check_form_ratio_trivial(std::uint64_t seed) {
  double worst = 0.0;
  int cases = 0;
  for (double g : {1.0, 9.81}) {
    const WaveParameters p = WaveParameters::trivial(1, 1, g, critical_mu(1, 1, 1));
    const WaveState state(p, SpectralFunction(24));
    const FormEquivalence fe = form_equivalence_check(state, 25, seed);
    worst = std::max({worst, std::abs(fe.ratio_mean - g) / g, fe.relative_spread});
    cases += fe.trials;
  }
  return make_result("form_ratio_trivial", cases, worst, 1e-10);
}

VerifySuiteResult check_form_spread_branch(std::uint64_t seed, int n_trunc) {
  WaveParameters base = WaveParameters::trivial(1, 1, 1, critical_mu(1, 1, 1));
  WaveState seed_state(base, SpectralFunction::harmonic_cos(1, 0.01, n_trunc));
  const BranchPoint pt = newton_solve(seed_state, 1, 0.01);
  const FormEquivalence fe = form_equivalence_check(pt.state, 100, seed);
  return make_result("form_spread_branch", fe.trials, fe.relative_spread, 1e-6);
}

}  // namespace

std::vector<VerifySuiteResult> run_verification(std::uint64_t seed, int n_trunc) {
  Rng rng(seed);
  std::vector<VerifySuiteResult> out;
  out.push_back(check_gc_relation(rng));
  out.push_back(check_product_identity_suite(rng));
  out.push_back(check_boundary_pairing(rng));
  out.push_back(check_conjugation(rng));
  out.push_back(check_derivative_relation(rng));
  out.push_back(check_jacobian_fd(rng));
  out.push_back(check_form_ratio_trivial(seed));
  out.push_back(check_form_spread_branch(seed, n_trunc));
  return out;
}

std::string verification_report(const std::vector<VerifySuiteResult>& results,
                                std::uint64_t seed, int n_trunc) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "verification seed=0x%llX n_trunc=%d\n",
                static_cast<unsigned long long>(seed), n_trunc);
  out += line;
  int failed = 0;
  for (const VerifySuiteResult& r : results) {
    std::snprintf(line, sizeof line, "%-28s %-5s cases=%-4d max_residual=%.3e tol=%.0e\n",
                  r.name.c_str(), r.pass ? "PASS" : "FAIL", r.cases, r.max_residual,
                  r.tolerance);
    out += line;
    if (!r.pass) ++failed;
  }
  std::snprintf(line, sizeof line, "suites=%zu failed=%d\n", results.size(), failed);
  out += line;
  return out;
}

bool all_passed(const std::vector<VerifySuiteResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const VerifySuiteResult& r) { return r.pass; });
}

}  // namespace wavestab
