#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "test_util.hpp"
#include "wavestab/errors.hpp"
#include "wavestab/strip.hpp"

using namespace wavestab;
using testutil::kPi;

namespace {

// Independent oracle: real part from the Dirichlet solution
//   U(x,y) = sum_n sinh(n(y+D))/sinh(nD) u_n e^{inx},
// imaginary part from the conjugate series
//   V(x,y) = -sum_{n>=1} 2 Im(u_n e^{inx}) cosh(n(y+D))/sinh(nD).
complexd dirichlet_series_oracle(const SpectralFunction& u, double d, double x, double y) {
  double re = 0.0, im = 0.0;
  for (int n = 1; n <= u.order(); ++n) {
    const complexd a = u.coeff(n) * complexd(std::cos(n * x), std::sin(n * x));
    re += 2.0 * a.real() * std::sinh(n * (y + d)) / std::sinh(n * d);
    im += -2.0 * a.imag() * std::cosh(n * (y + d)) / std::sinh(n * d);
  }
  return {re, im};
}

}  // namespace

TEST_CASE("extend") {
  SUBCASE("boundary values of cos x") {
    auto u = SpectralFunction::harmonic_cos(1, 1.0);
    for (double x : {0.0, 0.4, 1.7, 3.9, 6.0}) {
      const complexd v = extend(u, 1.0, {x, 0.0});
      CHECK(v.real() == doctest::Approx(std::cos(x)).epsilon(1e-13));
      CHECK(v.imag() == doctest::Approx(-coth_safe(1.0) * std::sin(x)).epsilon(1e-13));
    }
  }
  SUBCASE("real part vanishes on the lower boundary") {
    auto u = SpectralFunction::harmonic_cos(1, 1.0);
    for (double x : {0.0, 0.3, 1.1, 2.9, 5.5}) {
      const complexd v = extend(u, 1.0, {x, -1.0});
      CHECK(std::abs(v.real()) < 1e-12);
    }
    Rng rng(31);
    auto w = random_mean_free(rng, 12, 1.0);
    for (double x : {0.2, 2.2, 4.4}) {
      CHECK(std::abs(extend(w, 0.7, {x, -0.7}).real()) < 1e-12);
    }
  }
  SUBCASE("interior value matches the Dirichlet series oracle") {
    auto u = SpectralFunction::harmonic_sin(2, 1.0);
    const complexd v = extend(u, 1.0, {kPi / 4.0, -0.5});
    const complexd oracle = dirichlet_series_oracle(u, 1.0, kPi / 4.0, -0.5);
    CHECK(std::abs(v - oracle) < 1e-13);

    Rng rng(33);
    auto w = random_mean_free(rng, 10, 1.0);
    for (double y : {-0.1, -0.6, -1.4}) {
      const complexd a = extend(w, 1.5, {2.0, y});
      const complexd b = dirichlet_series_oracle(w, 1.5, 2.0, y);
      CHECK(std::abs(a - b) < 1e-12);
    }
  }
  SUBCASE("rejects nonzero mean and points outside the strip") {
    auto u = SpectralFunction::constant(1.0, 2);
    CHECK_THROWS_AS(extend(u, 1.0, {0.0, -0.5}), parameter_error);
    auto v = SpectralFunction::harmonic_cos(1, 1.0);
    CHECK_THROWS_AS(extend(v, 1.0, {0.0, 0.5}), parameter_error);
    CHECK_THROWS_AS(extend(v, 1.0, {0.0, -1.5}), parameter_error);
  }
}

TEST_CASE("boundary_trace") {
  SUBCASE("cos x") {
    auto t = boundary_trace(SpectralFunction::harmonic_cos(1, 1.0), 1.0);
    CHECK(t.real_part.cos_coeff(1) == doctest::Approx(1.0));
    CHECK(t.imag_part.sin_coeff(1) == doctest::Approx(-coth_safe(1.0)).epsilon(1e-15));
  }
  SUBCASE("zero function") {
    auto t = boundary_trace(SpectralFunction(3), 1.0);
    CHECK(t.real_part.max_abs_coeff() == 0.0);
    CHECK(t.imag_part.max_abs_coeff() == 0.0);
  }
  SUBCASE("agrees with extend at y = 0") {
    Rng rng(35);
    auto u = random_mean_free(rng, 14, 1.0);
    auto t = boundary_trace(u, 0.8);
    auto s = t.samples(64);
    for (int j = 0; j < 64; ++j) {
      const double x = testutil::kTwoPi * j / 64;
      CHECK(std::abs(s[j] - extend(u, 0.8, {x, 0.0})) < 1e-12);
    }
  }
}

TEST_CASE("build_W") {
  SUBCASE("flat state") {
    auto wf = build_W(SpectralFunction(4), 2.0, 1.0);
    CHECK(wf.min_real == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(wf.trace.real_part.cos_coeff(0) == doctest::Approx(0.5));
    CHECK(wf.trace.imag_part.max_abs_coeff() == 0.0);
    CHECK(wf.graph_condition());
  }
  SUBCASE("single harmonic, exact expansion") {
    const double eps = 0.01, d = 1.0;
    auto w = SpectralFunction::harmonic_cos(1, eps, 8);
    auto wf = build_W(w, 1.0, d);
    CHECK(wf.trace.real_part.cos_coeff(0) == doctest::Approx(1.0));
    CHECK(wf.trace.real_part.cos_coeff(1) ==
          doctest::Approx(eps * coth_safe(d)).epsilon(1e-14));
    CHECK(wf.trace.imag_part.sin_coeff(1) == doctest::Approx(-eps).epsilon(1e-14));
    CHECK(wf.min_real == doctest::Approx(1.0 - eps * coth_safe(1.0)).epsilon(1e-12));
    CHECK(wf.min_real == doctest::Approx(0.98686964714).epsilon(1e-9));
  }
  SUBCASE("graph condition flag") {
    auto w = SpectralFunction::harmonic_cos(1, 1.0, 4);
    auto wf = build_W(w, 1.0, 1.0);  // amplitude large enough to lose the graph
    CHECK_FALSE(wf.graph_condition());
    CHECK(wf.min_real < 0.0);
  }
}

TEST_CASE("plotnikov transform") {
  SUBCASE("flat state: forward is u/k, inverse is k q") {
    auto wf = build_W(SpectralFunction(4), 2.0, 1.0);
    Rng rng(37);
    auto u = random_mean_free(rng, 8, 1.0);
    auto p = plotnikov_forward(u, wf);
    CHECK(max_coeff_diff(p, 0.5 * u) < 1e-13);
    auto q = plotnikov_inverse(u, wf);
    CHECK(max_coeff_diff(q, 2.0 * u) < 1e-13);
  }
  SUBCASE("closed form for cos x against composition") {
    const double eps = 0.05;
    auto w = SpectralFunction::harmonic_cos(1, eps, 4);
    auto wf = build_W(w, 1.0, 1.0);
    auto u = SpectralFunction::harmonic_cos(1, 1.0, 4);
    auto p = plotnikov_forward(u, wf);
    // u(1 + eps coth cos x) + (-eps sin x)(coth sin x) = cos x + eps coth(1) cos 2x
    CHECK(p.cos_coeff(1) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.cos_coeff(2) == doctest::Approx(eps * coth_safe(1.0)).epsilon(1e-13));
    CHECK(std::abs(mean(p)) == 0.0);
    // independent composition from spectral primitives
    auto composed = multiply(u, wf.trace.real_part) +
                    multiply(derivative(w), apply_strip_hilbert(u, 1.0));
    composed.project_mean_free();
    CHECK(max_coeff_diff(p, composed) < 1e-13);
  }
  SUBCASE("forward and inverse are mutually inverse") {
    Rng rng(39);
    auto w = random_even_mean_free(rng, 10, 0.02, 1.0);
    auto wf = build_W(w, 1.0, 1.0);
    REQUIRE(wf.graph_condition());
    auto u = random_mean_free(rng, 10, 1.0);
    auto round1 = plotnikov_inverse(plotnikov_forward(u, wf), wf);
    CHECK(max_coeff_diff(round1, u) < 1e-10);
    auto round2 = plotnikov_forward(plotnikov_inverse(u, wf), wf);
    CHECK(max_coeff_diff(round2, u) < 1e-10);
  }
  SUBCASE("linearity") {
    Rng rng(41);
    auto w = random_even_mean_free(rng, 8, 0.05, 1.0);
    auto wf = build_W(w, 1.0, 1.0);
    auto u = random_mean_free(rng, 8, 1.0);
    auto v = random_mean_free(rng, 8, 1.0);
    auto lhs = plotnikov_forward(1.3 * u + (-0.7) * v, wf);
    auto rhs = 1.3 * plotnikov_forward(u, wf) + (-0.7) * plotnikov_forward(v, wf);
    CHECK(max_coeff_diff(lhs, rhs) < 1e-13);
  }
  SUBCASE("inverse requires positive Re W") {
    auto w = SpectralFunction::harmonic_cos(1, 1.0, 4);
    auto wf = build_W(w, 1.0, 1.0);
    REQUIRE_FALSE(wf.graph_condition());
    auto u = SpectralFunction::harmonic_cos(1, 1.0, 4);
    CHECK_THROWS_AS(plotnikov_inverse(u, wf), singular_transform_error);
  }
}

TEST_CASE("product identity modulo the mean") {
  SUBCASE("hand expansion for u = v = cos x") {
    const double d = 1.0;
    auto u = SpectralFunction::harmonic_cos(1, 1.0);
    CHECK(check_product_identity(u, u, d) < 1e-13);
    // left side equals -(1 + coth^2 d)/2 cos 2x by the double-angle identity
    auto cu = apply_strip_hilbert(u, d);
    auto lhs = apply_strip_hilbert(2.0 * multiply(u, cu), d);
    const double expected = -(1.0 + coth_safe(d) * coth_safe(d)) / 2.0;
    CHECK(lhs.cos_coeff(2) == doctest::Approx(expected).epsilon(1e-13));
    // and the discarded mean of C(u)C(v) - uv is (coth^2 - 1)/2, not zero
    auto raw = multiply(cu, cu) - multiply(u, u);
    CHECK(mean(raw) == doctest::Approx((coth_safe(d) * coth_safe(d) - 1.0) / 2.0)
                           .epsilon(1e-13));
  }
  SUBCASE("zero input") {
    auto u = SpectralFunction::harmonic_cos(1, 1.0, 4);
    CHECK(check_product_identity(u, SpectralFunction(4), 1.0) == 0.0);
  }
  SUBCASE("random sweep over widths") {
    Rng rng(43);
    for (double d : {0.5, 1.0, 2.0}) {
      for (int trial = 0; trial < 34; ++trial) {
        auto u = random_mean_free(rng, 32, 1.0);
        auto v = random_mean_free(rng, 32, 1.0);
        CHECK(check_product_identity(u, v, d) < 1e-10);
      }
    }
  }
  SUBCASE("a broken transform is caught") {
    // Mutation sanity: with the multiplier sign flipped on one factor the
    // identity fails by an O(1) margin, so the checker has teeth.
    const double d = 1.0;
    auto u = SpectralFunction::harmonic_cos(1, 1.0);
    auto cu = apply_strip_hilbert(u, d);
    auto broken = -1.0 * cu;
    auto lhs = apply_strip_hilbert(multiply(u, broken) + multiply(u, broken), d);
    SpectralFunction rhs = multiply(cu, cu) - multiply(u, u);
    rhs.project_mean_free();
    CHECK(max_coeff_diff(lhs, rhs) > 0.1);
  }
}

TEST_CASE("conjugation and derivative identities for the transform") {
  Rng rng(45);
  auto w = random_even_mean_free(rng, 12, 0.02, 1.0);
  auto wf = build_W(w, 1.0, 1.0);
  REQUIRE(wf.graph_condition());

  SUBCASE("E[P[u]] - W E[u] is an imaginary constant") {
    for (int trial = 0; trial < 5; ++trial) {
      auto u = random_mean_free(rng, 12, 1.0);
      auto r = plotnikov_conjugation_residual(u, wf);
      CHECK(r.nonconstant < 1e-10);
      CHECK(r.constant_measured ==
            doctest::Approx(r.constant_predicted).epsilon(1e-10));
    }
  }
  SUBCASE("derivative relation") {
    for (int trial = 0; trial < 5; ++trial) {
      auto u = random_mean_free(rng, 12, 1.0);
      CHECK(plotnikov_derivative_residual(u, wf) < 1e-9);
    }
  }
}

TEST_CASE("contour pairing check") {
  SUBCASE("E_1[cos x] paired with itself") {
    auto f = boundary_trace(SpectralFunction::harmonic_cos(1, 1.0), 1.0);
    auto [pairing, contour] = contour_pairing_check(f, f, 1.0, 512);
    CHECK(pairing < 1e-8);
    CHECK(contour < 1e-8);
  }
  SUBCASE("zero trace") {
    ComplexBoundaryFunction zero{SpectralFunction(2), SpectralFunction(2)};
    auto [pairing, contour] = contour_pairing_check(zero, zero, 1.0, 64);
    CHECK(pairing == 0.0);
    CHECK(contour == 0.0);
  }
  SUBCASE("random traces of low order") {
    Rng rng(47);
    for (int trial = 0; trial < 6; ++trial) {
      auto u = random_mean_free(rng, 8, 1.0);
      auto v = random_mean_free(rng, 8, 1.0);
      auto f = boundary_trace(u, 1.0);
      auto g = boundary_trace(v, 1.0);
      auto [pairing, contour] = contour_pairing_check(f, g, 1.0, 512);
      CHECK(pairing < 1e-8);
      CHECK(contour < 1e-8);
    }
  }
  SUBCASE("hypothesis violation is rejected") {
    auto u = SpectralFunction::harmonic_cos(1, 1.0);
    ComplexBoundaryFunction not_a_trace{u, u};
    CHECK_THROWS_AS(contour_pairing_check(not_a_trace, not_a_trace, 1.0, 64),
                    parameter_error);
  }
}
