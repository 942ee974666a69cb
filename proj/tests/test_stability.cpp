#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "wavestab/errors.hpp"
#include "wavestab/stability.hpp"

using namespace wavestab;
using testutil::kPi;

namespace {

WaveState trivial_state(double k, double h, double g, double mu, int n_trunc) {
  return WaveState(WaveParameters::trivial(k, h, g, mu), SpectralFunction(n_trunc));
}

BranchPoint solve_point(double eps, int n_trunc) {
  WaveParameters base = WaveParameters::trivial(1, 1, 1, critical_mu(1, 1, 1));
  WaveState seed(base, SpectralFunction::harmonic_cos(1, eps, n_trunc));
  return newton_solve(seed, 1, eps);
}

std::vector<double> coeff_vector(const SpectralFunction& u, int basis_order) {
  std::vector<double> x(2 * basis_order, 0.0);
  const double s = std::sqrt(kPi);
  for (int j = 1; j <= basis_order; ++j) {
    x[j - 1] = s * u.cos_coeff(j);
    x[basis_order + j - 1] = s * u.sin_coeff(j);
  }
  return x;
}

double quadratic_form(const OperatorMatrix& a, const std::vector<double>& x) {
  const auto ax = a.entries.apply(x);
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * ax[i];
  return s;
}

}  // namespace

TEST_CASE("plotnikov potential") {
  SUBCASE("flat state gives the constant 1/(B k^3)") {
    auto state = trivial_state(1, 1, 1, critical_mu(1, 1, 1), 16);
    auto phi = plotnikov_potential(state);
    CHECK(mean(phi) == doctest::Approx(coth_safe(1.0)).epsilon(1e-13));
    CHECK(mean(phi) == doctest::Approx(1.3130352854993312).epsilon(1e-12));
    for (int n = 1; n <= phi.order(); ++n) CHECK(std::abs(phi.coeff(n)) < 1e-13);

    auto state2 = trivial_state(2.0, 0.7, 3.0, 0.2, 8);
    auto phi2 = plotnikov_potential(state2);
    const double expected = 1.0 / (state2.params.b * 8.0);
    CHECK(mean(phi2) == doctest::Approx(expected).epsilon(1e-13));
  }
  SUBCASE("first harmonic grows as c1 eps along the branch") {
    const double eps = 1e-3;
    BranchPoint pt = solve_point(eps, 32);
    auto phi = plotnikov_potential(pt.state);
    const double c1 = 3.0 * coth_safe(1.0) * coth_safe(1.0) - 1.0;
    CHECK(c1 == doctest::Approx(4.1721850).epsilon(1e-6));
    CHECK(phi.cos_coeff(1) == doctest::Approx(c1 * eps).epsilon(0.05));
  }
  SUBCASE("even potential for even states") {
    BranchPoint pt = solve_point(0.02, 32);
    auto phi = plotnikov_potential(pt.state);
    CHECK(phi.is_even(1e-12));
  }
  SUBCASE("graph violation raises the singular-potential error") {
    WaveParameters p = WaveParameters::trivial(1, 1, 1, 0.5);
    WaveState state(p, SpectralFunction::harmonic_cos(1, 1.0, 8));
    CHECK_THROWS_AS(plotnikov_potential(state), singular_transform_error);
  }
}

TEST_CASE("direct form assembly") {
  SUBCASE("flat state is diagonal with the dispersion entries") {
    const double g = 1.3, mu = 0.5;
    auto state = trivial_state(1, 1, g, mu, 16);
    auto a = assemble_direct_form(state, 8);
    for (int j = 1; j <= 8; ++j) {
      const double expected = 2.0 * g * (mu * j * coth_safe(double(j)) - 1.0);
      CHECK(a.entries(j - 1, j - 1) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(a.entries(8 + j - 1, 8 + j - 1) == doctest::Approx(expected).epsilon(1e-12));
    }
    // off-diagonal vanishes
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) {
        if (i != j) CHECK(std::abs(a.entries(i, j)) < 1e-13);
      }
    }
    // the raw form value on cos(nx) carries the extra factor pi
    auto u = SpectralFunction::harmonic_cos(2, 1.0, 4);
    const double expected_form = 2.0 * kPi * g * (mu * 2.0 * coth_safe(2.0) - 1.0);
    CHECK(direct_form_value(state, u) == doctest::Approx(expected_form).epsilon(1e-13));
  }
  SUBCASE("matrix quadratic form agrees with spectral quadrature") {
    BranchPoint pt = solve_point(0.02, 24);
    const int basis_order = 24;
    auto a = assemble_direct_form(pt.state, basis_order);
    Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
      auto u = random_mean_free(rng, basis_order, 1.0, 1.0);
      const double via_matrix = quadratic_form(a, coeff_vector(u, basis_order));
      const double via_quadrature = direct_form_value(pt.state, u);
      CHECK(via_matrix == doctest::Approx(via_quadrature).epsilon(1e-10));
    }
  }
  SUBCASE("parity blocks decouple at even states") {
    BranchPoint pt = solve_point(0.02, 16);
    auto a = assemble_direct_form(pt.state, 12);
    for (int i = 0; i < 12; ++i) {
      for (int j = 12; j < 24; ++j) CHECK(std::abs(a.entries(i, j)) < 1e-12);
    }
  }
}

TEST_CASE("transformed operator assembly") {
  SUBCASE("flat state diagonal: n coth(n kh) - 1/(B k^3)") {
    auto state = trivial_state(1, 1, 1, critical_mu(1, 1, 1), 16);
    auto a = assemble_transformed_operator(state, 8);
    for (int j = 1; j <= 8; ++j) {
      const double expected = j * coth_safe(double(j)) - coth_safe(1.0);
      CHECK(a.entries(j - 1, j - 1) == doctest::Approx(expected).epsilon(1e-12));
    }
    // modes +-1 annihilated at the bifurcation point
    CHECK(std::abs(a.entries(0, 0)) < 1e-13);
    CHECK(std::abs(a.entries(8, 8)) < 1e-13);
    // mode 2 entry equals tanh(1) via the double-angle identity
    CHECK(a.entries(1, 1) == doctest::Approx(std::tanh(1.0)).epsilon(1e-13));
    CHECK(2.0 * coth_safe(2.0) - coth_safe(1.0) ==
          doctest::Approx(0.7615941559557649).epsilon(1e-14));
  }
  SUBCASE("symmetric by construction on branch states") {
    BranchPoint pt = solve_point(0.01, 24);
    auto a = assemble_transformed_operator(pt.state, 16);
    CHECK(a.entries.symmetry_defect() == 0.0);
  }
  SUBCASE("matrix form matches the transformed form value") {
    BranchPoint pt = solve_point(0.01, 24);
    const int basis_order = 20;
    auto a = assemble_transformed_operator(pt.state, basis_order);
    Rng rng(73);
    for (int trial = 0; trial < 10; ++trial) {
      auto u = random_mean_free(rng, basis_order, 1.0, 1.0);
      const double via_matrix = quadratic_form(a, coeff_vector(u, basis_order));
      const double expected = transformed_form_value(pt.state, u) / (2.0 * pt.state.params.b);
      CHECK(via_matrix == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("form equivalence") {
  SUBCASE("flat state: the ratio is exactly g") {
    auto state = trivial_state(1, 1, 1, critical_mu(1, 1, 1), 24);
    auto fe = form_equivalence_check(state, 20);
    CHECK(fe.ratio_mean == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fe.relative_spread < 1e-10);

    auto heavy = trivial_state(1, 1, 9.81, critical_mu(1, 1, 1), 24);
    auto fe2 = form_equivalence_check(heavy, 20);
    CHECK(fe2.ratio_mean == doctest::Approx(9.81).epsilon(1e-10));
  }
  SUBCASE("branch state: proportional with spread below 1e-6") {
    BranchPoint pt = solve_point(0.01, 32);
    auto fe = form_equivalence_check(pt.state, 40);
    CHECK(fe.relative_spread < 1e-6);
    CHECK(fe.ratio_mean == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("trivial spectrum") {
  // The eigenvalue 2g(mu n coth(nkh) - 1/k) is smallest at n = 1, so the
  // spectrum is strictly positive exactly for mu above the first dispersion
  // point.  (The inequality is printed the other way round in places; the
  // formula decides.)
  SUBCASE("strictly positive above the first dispersion point") {
    WaveParameters p = WaveParameters::trivial(1, 1, 1, 1.2 * std::tanh(1.0));
    auto r = trivial_spectrum(p, 32);
    CHECK(r.n_negative == 0);
    CHECK(r.n_zero == 0);
    CHECK(r.lambda_min > 0.0);
    CHECK(r.classification == StabilityClass::stable);
  }
  SUBCASE("mode-1 pair goes negative below the first dispersion point") {
    WaveParameters p = WaveParameters::trivial(1, 1, 1, 0.9 * std::tanh(1.0));
    auto r = trivial_spectrum(p, 32);
    CHECK(r.n_negative == 2);
    CHECK(r.lambda_min == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(r.classification == StabilityClass::unstable);
  }
  SUBCASE("two zero modes at mu_1*") {
    WaveParameters p = WaveParameters::trivial(1, 1, 1, critical_mu(1, 1, 1));
    auto r = trivial_spectrum(p, 32);
    CHECK(r.n_zero == 2);
    CHECK(r.n_negative == 0);
    CHECK(r.classification == StabilityClass::neutral);
  }
  SUBCASE("at mu_2*: two zeros and two negative directions") {
    WaveParameters p = WaveParameters::trivial(1, 1, 1, critical_mu(2, 1, 1));
    auto r = trivial_spectrum(p, 32);
    CHECK(r.n_zero == 2);
    CHECK(r.n_negative == 2);
    CHECK(r.classification == StabilityClass::unstable);
    // the eigenvalue list carries 2 n_max entries in ascending order
    CHECK(r.eigenvalues.size() == 64);
    CHECK(r.lambda_min == doctest::Approx(2.0 * (critical_mu(2, 1, 1) * coth_safe(1.0) - 1.0))
                              .epsilon(1e-12));
  }
}

TEST_CASE("trivial full variation") {
  SUBCASE("the three sample points of the region sweep") {
    // mu sits above both thresholds here: stable in w and in h.
    WaveParameters p;
    p.k = 1; p.g = 1;
    p.h = 0.5; p.mu = 0.6;
    auto r1 = trivial_full_variation(p);
    CHECK(r1.stable_w);  // 0.6 > tanh(0.5) = 0.4621
    CHECK(r1.stable_h);  // 0.6 > 0.5
    CHECK(std::string(r1.region_class()) == "both");
    CHECK(r1.h_direction_coefficient > 0.0);

    p.h = 0.25; p.mu = 0.3;
    auto r2 = trivial_full_variation(p);
    CHECK(r2.stable_w);  // 0.3 > tanh(0.25) = 0.2449
    CHECK(r2.stable_h);  // 0.3 > 0.25

    p.h = 0.1; p.mu = 0.15;
    auto r3 = trivial_full_variation(p);
    CHECK(r3.stable_w);  // 0.15 > tanh(0.1) = 0.0997
    CHECK(r3.stable_h);
  }
  SUBCASE("w-only window between the two thresholds") {
    WaveParameters p;
    p.k = 1; p.g = 1; p.h = 1.0; p.mu = 0.9;
    auto r = trivial_full_variation(p);
    CHECK(r.stable_w);        // 0.9 > tanh(1) = 0.7616
    CHECK_FALSE(r.stable_h);  // 0.9 < 1
    CHECK(std::string(r.region_class()) == "w_only");
    CHECK(r.h_direction_coefficient < 0.0);
  }
  SUBCASE("below the dispersion curve nothing is stable") {
    WaveParameters p;
    p.k = 1; p.g = 1; p.h = 1.0; p.mu = 0.5;
    auto r = trivial_full_variation(p);
    CHECK_FALSE(r.stable_w);  // 0.5 < tanh(1)
    CHECK_FALSE(r.stable_h);
    CHECK(std::string(r.region_class()) == "none");
  }
  SUBCASE("the h-condition is the stronger one at every depth") {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
      WaveParameters p;
      p.k = rng.uniform(0.2, 3.0);
      p.g = rng.uniform(0.2, 3.0);
      p.h = rng.uniform(0.1, 3.0);
      p.mu = rng.uniform(0.0, 4.0);
      auto r = trivial_full_variation(p);
      if (r.stable_h) CHECK(r.stable_w);
    }
  }
}

TEST_CASE("symmetric_eigen on operator matrices") {
  SUBCASE("trivial transformed operator reproduces the multiplier diagonal") {
    auto state = trivial_state(1, 1, 1, critical_mu(1, 1, 1), 16);
    auto a = assemble_transformed_operator(state, 10);
    auto e = symmetric_eigen(a);
    std::vector<double> expected;
    for (int j = 1; j <= 10; ++j) {
      expected.push_back(j * coth_safe(double(j)) - coth_safe(1.0));
      expected.push_back(j * coth_safe(double(j)) - coth_safe(1.0));
    }
    std::sort(expected.begin(), expected.end());
    for (size_t i = 0; i < expected.size(); ++i) {
      CHECK(e.eigenvalues[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("perturbation prediction") {
  SUBCASE("closed forms at k = h = g = 1") {
    WaveParameters p = WaveParameters::trivial(1, 1, 1, critical_mu(1, 1, 1));
    auto pred = perturbation_prediction(p);
    CHECK(pred.c1 == doctest::Approx(3.0 * coth_safe(1.0) * coth_safe(1.0) - 1.0)
                         .epsilon(1e-14));
    CHECK(pred.c1 == doctest::Approx(4.1721850).epsilon(1e-7));
    CHECK(pred.lambda2_unit == doctest::Approx(-1.0 / (4.0 * std::tanh(1.0))).epsilon(1e-13));
    CHECK(pred.lambda2_unit == doctest::Approx(-0.3282588214).epsilon(1e-9));
    CHECK(pred(0.01) == doctest::Approx(-5.714043e-4).epsilon(1e-5));
    CHECK(pred.u1_coefficient == doctest::Approx(-0.5 / std::tanh(1.0)).epsilon(1e-13));
  }
  SUBCASE("the expansion carries no odd powers") {
    WaveParameters p = WaveParameters::trivial(1, 1, 1, critical_mu(1, 1, 1));
    auto pred = perturbation_prediction(p);
    CHECK(pred(0.01) == pred(-0.01));
  }
  SUBCASE("lambda2 stays negative across depths") {
    for (double kh = 0.05; kh <= 10.0; kh += 0.05) {
      WaveParameters p = WaveParameters::trivial(1.0, kh, 1.0, critical_mu(1, 1.0, kh));
      auto pred = perturbation_prediction(p);
      CHECK(pred.lambda2_unit < 0.0);
      CHECK(pred.lambda2_unit == doctest::Approx(-1.0 / (4.0 * std::tanh(kh))).epsilon(1e-12));
    }
  }
  SUBCASE("rejected away from the bifurcation point") {
    WaveParameters p = WaveParameters::trivial(1, 1, 1, 0.5);
    CHECK_THROWS_AS(perturbation_prediction(p), parameter_error);
  }
}

TEST_CASE("spectrum along the branch") {
  WaveParameters base;
  base.k = 1; base.h = 1; base.g = 1;
  Branch b;
  b.mode = 1;
  b.base = base;
  b.base.mu = critical_mu(1, 1, 1);
  WaveState seed(WaveParameters::trivial(1, 1, 1, b.base.mu), SpectralFunction(48));
  b.points.push_back(newton_solve(seed, 1, 0.0));
  for (double eps : {0.0025, 0.005, 0.01, 0.02}) {
    WaveState s(WaveParameters::trivial(1, 1, 1, b.base.mu),
                SpectralFunction::harmonic_cos(1, eps, 48));
    b.points.push_back(newton_solve(s, 1, eps));
  }
  auto spectra = spectrum_along_branch(b, 40);
  REQUIRE(spectra.size() == 5);

  SUBCASE("flat point sits on the double zero") {
    CHECK(std::abs(spectra[0].transformed.lambda_min) < 1e-9);
    CHECK(spectra[0].transformed.n_zero == 2);
    CHECK(spectra[0].transformed.n_negative == 0);
    CHECK(std::abs(spectra[0].linearized.lambda_min) < 1e-12);
  }

  SUBCASE("first-order family follows the Puiseux prediction") {
    for (size_t i = 1; i < spectra.size(); ++i) {
      const auto& ps = spectra[i];
      const double rel =
          std::abs(ps.linearized.lambda_min - ps.prediction) / std::abs(ps.prediction);
      CHECK(rel < 0.05);
    }
    // prediction at eps = 0.01 is about -5.714e-4
    CHECK(spectra[3].prediction == doctest::Approx(-5.714043e-4).epsilon(1e-5));
    // Richardson: lambda/eps^2 approaches lambda2 c1^2 as eps halves
    const double l1 = spectra[1].linearized.lambda_min / (0.0025 * 0.0025);
    const double l3 = spectra[3].linearized.lambda_min / (0.01 * 0.01);
    const double target = -5.714043;
    CHECK(std::abs(l1 - target) < std::abs(l3 - target));
    CHECK(l1 == doctest::Approx(target).epsilon(1e-4));
  }

  SUBCASE("genuine branch operator is unstable with one negative direction") {
    for (size_t i = 1; i < spectra.size(); ++i) {
      const auto& ps = spectra[i];
      CHECK(ps.transformed.lambda_min < 0.0);
      CHECK(ps.transformed.n_negative == 1);
      CHECK(ps.transformed.classification == StabilityClass::unstable);
      // translation of the profile gives one near-zero mode
      CHECK(ps.transformed.n_zero == 1);
      // the direct form certifies the sign and scales by 2gB
      CHECK(ps.direct_lambda_min < 0.0);
      const double ratio = ps.direct_lambda_min / ps.transformed.lambda_min;
      CHECK(ratio == doctest::Approx(2.0 * b.points[i].state.params.b *
                                     b.points[i].state.params.g)
                         .epsilon(0.01));
    }
  }

  SUBCASE("eigenvector structure at small amplitude") {
    const double eps = 1e-3;
    WaveParameters at_mu1 = WaveParameters::trivial(1, 1, 1, critical_mu(1, 1, 1));
    auto lin = assemble_linearized_operator(at_mu1, eps, 24);
    auto e = symmetric_eigen(lin);
    // eigenvector of the smallest eigenvalue
    std::vector<double> v(48);
    for (int i = 0; i < 48; ++i) v[i] = e.vectors(i, 0);
    const double p1 = v[0], q1 = v[24];           // cos x, sin x components
    const double p2 = v[1], q2 = v[25];           // cos 2x, sin 2x components
    CHECK(p1 * p1 + q1 * q1 >= 0.99 * 0.99);      // kernel-pair dominated
    // first-order correction: (p2, q2) parallel to (p1, q1) with magnitude
    // c1 eps / (4 tanh 1), within 5 degrees
    auto pred = perturbation_prediction(at_mu1);
    const double expected_mag = pred.c1 * eps / (4.0 * std::tanh(1.0));
    const double mag = std::sqrt(p2 * p2 + q2 * q2);
    CHECK(mag == doctest::Approx(expected_mag).epsilon(0.02));
    const double cosang = (p1 * p2 + q1 * q2) / (std::sqrt(p1 * p1 + q1 * q1) * mag);
    CHECK(std::abs(cosang) > std::cos(5.0 * kPi / 180.0));
  }

  SUBCASE("only mode-1 branches are accepted") {
    Branch b2;
    b2.mode = 2;
    b2.base = base;
    CHECK_THROWS_AS(spectrum_along_branch(b2, 8), parameter_error);
  }
}
