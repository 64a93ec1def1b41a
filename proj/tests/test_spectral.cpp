#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hankel/eigen.hpp"
#include "hankel/identities.hpp"
#include "hankel/spectral.hpp"

namespace {

using namespace hankel;
constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

JacobiParams constant_jacobi(double b, double a) {
  JacobiParams J;
  J.diag = [b](std::size_t) { return b; };
  J.offdiag = [a](std::size_t) { return a; };
  return J;
}

TEST(TridiagonalEigen, Examples) {
  const auto one = sym_tridiag_eigen(constant_jacobi(0.7, 1.0), 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], 0.7);
  const auto three = sym_tridiag_eigen(constant_jacobi(0.0, 1.0), 3);
  EXPECT_NEAR(three[0], -std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(three[1], 0.0, 1e-15);
  EXPECT_NEAR(three[2], std::sqrt(2.0), 1e-15);
  const auto dh = sym_tridiag_eigen(jacobi_params(h4(1, 0.0, 0.0)), 2);
  EXPECT_NEAR(dh[0], 0.0, 1e-14);
  EXPECT_NEAR(dh[1], 2.0, 1e-14);
}

TEST(TridiagonalEigen, FreeChainClosedForm) {
  const std::size_t n = 5000;
  const auto ev = sym_tridiag_eigen(constant_jacobi(0.0, 1.0), n);
  for (std::size_t j = 0; j < n; j += 97) {
    EXPECT_NEAR(ev[j], -2.0 * std::cos(pi * static_cast<double>(j + 1) / static_cast<double>(n + 1)), 1e-12);
  }
}

TEST(DenseEigen, Examples) {
  DenseMatrix<double> A(2);
  A(0, 0) = 2;
  A(0, 1) = 1;
  A(1, 0) = 1;
  A(1, 1) = 2;
  const auto ev = dense_sym_eigen(A);
  EXPECT_NEAR(ev[0], 1.0, 1e-15);
  EXPECT_NEAR(ev[1], 3.0, 1e-15);
  for (double v : dense_sym_eigen(DenseMatrix<double>::identity(5))) {
    EXPECT_NEAR(v, 1.0, 1e-15);
  }
  const auto dh = truncation_eigenvalues(h4(2, 0.5, -0.5), 3);
  std::vector<double> expect{binomial_general(5.0, 0), binomial_general(5.0, 1), binomial_general(5.0, 2)};
  std::sort(expect.begin(), expect.end());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(rel(dh[i], expect[i]), 1e-10);
  }
}

TEST(DenseEigen, BackwardErrorOnRandomMatrix) {
  const std::size_t n = 300;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  DenseMatrix<double> A(n);
  double trace = 0.0, fro = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      A(i, j) = A(j, i) = g(rng);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    trace += A(i, i);
    for (std::size_t j = 0; j < n; ++j) {
      fro += A(i, j) * A(i, j);
    }
  }
  const auto ev = dense_sym_eigen(A);
  double s = 0.0, s2 = 0.0;
  for (double v : ev) {
    s += v;
    s2 += v * v;
  }
  EXPECT_NEAR(s, trace, 1e-11 * std::sqrt(fro) * n);
  EXPECT_NEAR(s2, fro, 1e-11 * fro);
  EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
}

TEST(GaussQuadrature, Hermite) {
  const GaussRule one = gauss_quadrature(spectral_jacobi(h3()), 1);
  EXPECT_NEAR(one.nodes[0], 0.0, 1e-15);
  EXPECT_NEAR(one.weights[0], 1.0, 1e-15);
  const GaussRule two = gauss_quadrature(spectral_jacobi(h3()), 2);
  double m2 = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    m2 += two.weights[i] * two.nodes[i] * two.nodes[i];
  }
  EXPECT_NEAR(m2, 0.5, 1e-15);
}

TEST(GaussQuadrature, MomentsOfGaussian) {
  const std::size_t n = 20;
  const GaussRule r = gauss_quadrature(spectral_jacobi(h3()), n);
  double total = 0.0;
  for (double w : r.weights) {
    total += w;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  // E[x^{2j}] = (2j-1)!! / 2^j for the density e^{-x^2}/sqrt(pi).
  double expect = 1.0;
  for (int j = 1; 2 * j <= 2 * static_cast<int>(n) - 1; ++j) {
    expect *= (2.0 * j - 1.0) / 2.0;
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      m += r.weights[i] * std::pow(r.nodes[i], 2 * j);
    }
    EXPECT_LE(rel(m, expect), 1e-11) << j;
  }
}

TEST(GaussQuadrature, DualHahnAtoms) {
  const FamilySpec s = h4(8, 0.3, 1.7);
  const GaussRule r = gauss_quadrature(spectral_jacobi(s), 9);
  const SpectralRep rep = spectral_rep(s);
  const auto& dm = std::get<Discrete>(rep.measure);
  for (std::size_t x = 0; x <= 8; ++x) {
    const double lx = recurrence_variable(s, static_cast<double>(x));
    EXPECT_NEAR(r.nodes[x], lx, 1e-10 * std::max(1.0, lx));
    EXPECT_NEAR(r.weights[x], dm.mass(x), 1e-10);
  }
}

TEST(SpectralRep, MultiplierValues) {
  EXPECT_NEAR(spectral_rep(h1(0.8, 1.0)).multiplier(0.0), 1.0 / 0.8, 1e-14);
  EXPECT_NEAR(spectral_rep(h3()).multiplier(0.0), std::sqrt(2.0 * pi), 1e-14);
  const SpectralRep r2 = spectral_rep(h2(0.5));
  EXPECT_NEAR(r2.h_sup, pi, 1e-14);
  EXPECT_NEAR(spectral_rep(h1(0.5, 3.0)).h_sup, 8.0, 1e-14);
  EXPECT_NEAR(spectral_rep(h2(1.0)).h_sup, std::sqrt(pi) * std::tgamma(1.0) / std::tgamma(1.5), 1e-14);
}

TEST(SpectralRep, BoundaryDispatch) {
  EXPECT_EQ(h1_regime(H1{0.5, 1.0}).regime, H1Regime::laguerre);
  const SpectralRep near = spectral_rep(h1(0.5 + 1e-13, 1.0));
  EXPECT_FALSE(near.warnings.empty());
  EXPECT_EQ(h1_regime(H1{0.5 + 1e-13, 1.0}).regime, H1Regime::laguerre);
  EXPECT_EQ(h1_regime(H1{0.5 + 1e-9, 1.0}).regime, H1Regime::unbounded);
  EXPECT_EQ(h1_regime(H1{0.5 - 1e-9, 1.0}).regime, H1Regime::point);
}

TEST(SpectralRep, PointMeasureOnAtoms) {
  const SpectralRep rep = spectral_rep(h1(0.3, 1.5));
  ASSERT_TRUE(rep.discrete());
  const auto& dm = std::get<Discrete>(rep.measure);
  const auto pc = point_regime_constants(0.3);
  double total = 0.0;
  for (std::size_t j = 0; j < 400; ++j) {
    total += dm.mass(j);
  }
  EXPECT_NEAR(total, 1.0, 1e-13);
  EXPECT_NEAR(dm.location(3), 3 * pc.s, 1e-15);
  EXPECT_LE(rel(rep.multiplier(dm.location(2)), std::pow(pc.A, 1.5) * pc.c * pc.c), 1e-13);
}

TEST(FunctionalEquation, Examples) {
  EXPECT_LE(functional_equation_residual(h3(), 0, 0.0, 200).residual, 1e-9);
  const FunctionalResidual r1 = functional_equation_residual(h1(0.8, 1.0), 0, 0.0, 400);
  EXPECT_LE(r1.residual, 1e-8);
  EXPECT_LE(r1.tail_bound, 1e-8);
  for (double x = 0; x <= 7; x += 1) {
    for (std::size_t m = 0; m <= 7; ++m) {
      EXPECT_LE(functional_equation_residual(h4(7, 0.4, 2.2), m, x, 7).residual, 1e-10);
    }
  }
}

TEST(FunctionalEquation, Blocks) {
  for (double x : {0.4, 1.3, 2.5}) {
    const auto rows = functional_equation_rows(h3(Block::even), 5, x, 300);
    for (const auto& r : rows) {
      EXPECT_LE(r.residual, 1e-9);
      EXPECT_LE(r.tail_bound, 1e-9);
    }
  }
}

TEST(FunctionalEquation, NonDecayingTermsAreInconclusive) {
  EXPECT_THROW(functional_equation_rows(h2(1.0), 3, 0.5, 2000), inconclusive_error);
}

TEST(FunctionalEquation, TruncationBelowRow) {
  EXPECT_THROW(functional_equation_residual(h3(), 10, 0.0, 5), std::invalid_argument);
}

TEST(Properness, Finite) {
  EXPECT_EQ(properness_integral(h3(), 0.1).status, ProperStatus::finite);
  EXPECT_EQ(properness_integral(h1(0.5, 1.0), 0.5).status, ProperStatus::finite);
  EXPECT_EQ(properness_integral(h1(0.8, 1.0), 0.05).status, ProperStatus::finite);
  EXPECT_EQ(properness_integral(h2(1.0), 0.5).status, ProperStatus::finite);
  EXPECT_EQ(properness_integral(h1(0.3, 2.0), 0.5).status, ProperStatus::finite);
  EXPECT_EQ(properness_integral(h4(5, 0.0, 1.0), 3.0).status, ProperStatus::finite);
}

TEST(Properness, DivergentWhenWeightBeatsMeasure) {
  // The h2 measure decays like e^{-pi |x|}; e^{4 |x|} overwhelms it.
  EXPECT_EQ(properness_integral(h2(1.0), 4.0).status, ProperStatus::divergent);
}

TEST(Properness, H3ValueMatchesClosedForm) {
  // int e^{eps|x|} (h + 1)^2 dmu with h = sqrt(2 pi) e^{-x^2} and dmu = e^{-x^2}/sqrt(pi).
  const double eps = 0.1;
  const ProperResult r = properness_integral(h3(), eps);
  auto gauss_abs = [&](double a) {  // int e^{eps|x| - a x^2} dx / sqrt(pi)
    return std::sqrt(1.0 / a) * std::exp(eps * eps / (4 * a)) * std::erfc(-eps / (2 * std::sqrt(a)));
  };
  const double expect = 2.0 * pi * gauss_abs(3.0) + 2.0 * std::sqrt(2.0 * pi) * gauss_abs(2.0) + gauss_abs(1.0);
  EXPECT_LE(rel(r.value, expect), 1e-9);
}

TEST(SpectrumReport, Enclosures) {
  const SpectrumReport r = truncated_spectrum_report(h3(), {64, 256});
  EXPECT_TRUE(r.enclosure_ok);
  EXPECT_TRUE(r.lambda_max_monotone);
  EXPECT_LE(r.lambda_max[0], r.lambda_max[1]);
  EXPECT_LE(r.lambda_max[1], std::sqrt(2.0 * pi) + 1e-9);
}

TEST(SpectrumReport, PointSpectrum) {
  const auto pc = point_regime_constants(0.3);
  const auto ev = truncation_eigenvalues(h1(0.3, 1.0), 400);
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_LE(rel(ev[ev.size() - 1 - j], pc.A * std::pow(pc.c, static_cast<double>(j))), 1e-6);
  }
}

TEST(SpectrumReport, HilbertMatrix) {
  const auto ev = truncation_eigenvalues(h2(0.5, Block::even), 1024, true);
  EXPECT_GT(ev.back(), 2.5);
  EXPECT_LT(ev.back(), pi);
}

TEST(Multiplier, CoshIntegralForm) {
  for (double l : {0.3, 0.5, 1.0, 2.5}) {
    const SpectralRep rep = spectral_rep(h2(l));
    for (double x = -3.0; x <= 3.0; x += 0.5) {
      EXPECT_LE(rel(h2_multiplier_cosh_integral(l, x), rep.multiplier(x)), 1e-8) << l << ' ' << x;
    }
  }
}

}  // namespace
