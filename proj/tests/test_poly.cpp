#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "hyperscheme/hyperscheme.hpp"
#include "oracles.hpp"

namespace hs = hyperscheme;
using hs::Rational;

TEST(DTParams, Validation) {
  EXPECT_THROW((hs::DTParams{1, 2}.validate()), hs::Error);
  EXPECT_THROW((hs::DTParams{3, 1}.validate()), hs::Error);
  EXPECT_NO_THROW((hs::DTParams{2, 2}.validate()));
}

TEST(Coefficients, UnitMassAndNonNegative) {
  for (int a = 2; a <= 5; ++a)
    for (int b = 2; b <= 5; ++b)
      for (std::size_t m = 0; m <= 8; ++m)
        for (std::size_t n = 0; n <= 8; ++n) {
          Rational total(0);
          for (const auto& [k, v] : hs::g_coeffs(m, n, {a, b})) {
            EXPECT_GT(v, Rational(0));
            EXPECT_LE(k, m + n);
            EXPECT_GE(k + std::min(m, n), std::max(m, n));
            total += v;
          }
          EXPECT_EQ(total, Rational(1));
        }
}

TEST(Coefficients, MatchGraphCounting) {
  for (const hs::DTParams p : {hs::DTParams{3, 2}, hs::DTParams{2, 3}, hs::DTParams{3, 3}}) {
    const auto ball = hs::build_ball(p, 5);
    for (std::size_t m = 0; m <= 3; ++m)
      for (std::size_t n = 0; n <= 2; ++n) {
        const auto g = hs::g_coeffs(m, n, p);
        for (std::size_t k = 0; k <= m + n; ++k) {
          const double want = oracle::graph_coefficient(ball, m, n, k);
          const double got = g.count(k) ? hs::to_double(g.at(k)) : 0.0;
          EXPECT_NEAR(got, want, 1e-12) << "a=" << p.a << " b=" << p.b << " m=" << m << " n=" << n << " k=" << k;
        }
      }
  }
}

TEST(Haar, MatchesSphereSizes) {
  for (const hs::DTParams p : {hs::DTParams{3, 2}, hs::DTParams{2, 4}, hs::DTParams{4, 3}}) {
    const auto ball = hs::build_ball(p, 5);
    const auto dist = ball.bfs_distances(0);
    std::vector<long> counts(6, 0);
    for (auto d : dist) ++counts[d];
    for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(hs::dt_haar(n, p), hs::BigInt(counts[n]));
  }
}

TEST(PolyHypergroup, CachedAndUncachedAgree) {
  const hs::PolyHypergroup h({3, 2}, 4);
  EXPECT_EQ(h.g(3, 4), hs::g_coeffs(3, 4, {3, 2}));
  EXPECT_EQ(h.g(7, 2), hs::g_coeffs(7, 2, {3, 2}));
}

TEST(Polynomials, TwoTwoIsChebyshev) {
  for (double x : {-0.95, -0.3, 0.0, 0.41, 0.99}) {
    const auto vals = hs::poly_eval_all(20, x, {2, 2});
    for (std::size_t n = 0; n <= 20; ++n) EXPECT_NEAR(vals[n], std::cos(double(n) * std::acos(x)), 1e-11);
  }
}

TEST(Polynomials, SpecialPointValues) {
  for (int a = 2; a <= 6; ++a)
    for (int b = 2; b <= 6; ++b) {
      const hs::DTParams p{a, b};
      const auto [s0, s1] = hs::special_points(p);
      const auto at1 = hs::poly_eval_all(15, s1, p);
      const auto at0 = hs::poly_eval_all(15, s0, p);
      for (std::size_t n = 0; n <= 15; ++n) {
        EXPECT_NEAR(at1[n], 1.0, 1e-9);
        EXPECT_NEAR(at0[n], std::pow(1.0 - b, -double(n)), 1e-9);
      }
    }
}

TEST(Polynomials, ClosedFormMatchesRecurrence) {
  const hs::DTParams p{4, 3};
  for (double x : {-1.3, -0.7, 0.2, 0.9, 1.4}) {
    const std::complex<double> z = x + std::sqrt(std::complex<double>(x * x - 1.0));
    const auto vals = hs::poly_eval_all(12, x, p);
    for (std::size_t n = 0; n <= 12; ++n) {
      const auto c = hs::closed_form_eval(n, z, p);
      EXPECT_NEAR(c.real(), vals[n], 1e-9 * std::max(1.0, std::abs(vals[n])));
      EXPECT_NEAR(c.imag(), 0.0, 1e-9 * std::max(1.0, std::abs(vals[n])));
    }
  }
  EXPECT_THROW(hs::closed_form_eval(2, 1.0, p), hs::Error);
  EXPECT_THROW(hs::closed_form_eval(2, -1.0, p), hs::Error);
  EXPECT_THROW(hs::closed_form_eval(2, 0.0, p), hs::Error);
}

TEST(Polynomials, ProductFormula) {
  const hs::DTParams p{3, 4};
  for (double x : {-0.8, 0.1, 0.77})
    for (std::size_t m = 0; m <= 8; ++m)
      for (std::size_t n = 0; n <= 8; ++n) EXPECT_LE(hs::product_formula_residual(m, n, x, p), 1e-10);
}

TEST(Orthogonality, MeasureAndRelations) {
  for (const hs::DTParams p : {hs::DTParams{3, 2}, hs::DTParams{2, 2}, hs::DTParams{2, 4}, hs::DTParams{5, 3}}) {
    EXPECT_NEAR(hs::ortho_measure_integrate([](double) { return 1.0; }, p), 1.0, 1e-9);
    for (std::size_t m = 0; m <= 6; ++m)
      for (std::size_t n = 0; n <= 6; ++n) {
        const double v = hs::ortho_measure_integrate([&](double x) { return hs::poly_eval(m, x, p) * hs::poly_eval(n, x, p); }, p);
        EXPECT_NEAR(v, m == n ? 1.0 / hs::dt_haar_double(n, p) : 0.0, 1e-9);
      }
  }
}

TEST(Deformation, PointAndSphereEigenvalue) {
  const hs::DTParams p{3, 2};
  EXPECT_NEAR(hs::deformation_point(0.0, p), hs::special_points(p).s1, 1e-12);
  for (double c : {0.3, -0.5 * std::log(2.0), 0.7}) {
    const double x = hs::deformation_point(c, p);
    for (std::size_t h = 0; h <= 6; ++h) EXPECT_NEAR(hs::sphere_eigenvalue(h, c, p), hs::poly_eval(h, x, p), 1e-10);
  }
}

TEST(Deformation, HaarWeightsScaleBySquares) {
  const hs::DeformedPolyHypergroup d({3, 2}, 0.3, 8);
  for (std::size_t n = 0; n <= 8; ++n)
    EXPECT_NEAR(d.haar(n), d.alpha0(n) * d.alpha0(n) * hs::dt_haar_double(n, {3, 2}), 1e-12);
  EXPECT_THROW(d.g(5, 5), hs::Error);
}
