#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hankel/identities.hpp"

namespace {

using namespace hankel;
constexpr double pi = std::numbers::pi;

TEST(MeixnerPollaczekIntegral, Examples) {
  EXPECT_LE(mp_integral_identity(0, 0, 1.0, pi / 4).rel_err, 1e-8);
  EXPECT_LE(mp_integral_identity(0, 1, 0.5, pi / 3).rel_err, 1e-7);
  const double phi = pi / 2 - 0.2;
  EXPECT_LE(mp_integral_identity(1, 2, 0.8, phi).rel_err, 1e-7);
  EXPECT_LE(mp_integral_identity(2, 2, 0.8, phi).rel_err, 1e-7);
  EXPECT_EQ(mp_integral_identity(0, 0, 1.0, 0.5).method, IdentityMethod::adaptive_quadrature);
}

TEST(MeixnerPollaczekIntegral, Grid) {
  for (std::size_t m = 0; m <= 4; ++m) {
    for (std::size_t n = m; n <= 4; ++n) {
      for (double phi : {0.3, pi / 4, 1.2}) {
        EXPECT_LE(mp_integral_identity(m, n, 1.3, phi).rel_err, 1e-8) << m << ' ' << n << ' ' << phi;
      }
    }
  }
}

TEST(MeixnerPollaczekIntegral, RejectsBadAngle) {
  EXPECT_THROW(mp_integral_identity(0, 0, 1.0, pi / 2), std::invalid_argument);
  EXPECT_THROW(mp_integral_identity(0, 0, 0.0, 0.5), std::invalid_argument);
}

TEST(LaguerreIntegral, Examples) {
  const IdentityReport r0 = laguerre_integral_identity(0, 0, 0.0);
  EXPECT_NEAR(r0.rhs, 0.5, 1e-15);
  EXPECT_NEAR(r0.lhs, 0.5, 1e-14);
  const IdentityReport r1 = laguerre_integral_identity(1, 0, 0.0);
  EXPECT_NEAR(r1.rhs, 0.25, 1e-15);
  EXPECT_LE(r1.rel_err, 1e-10);
  EXPECT_LE(laguerre_integral_identity(2, 2, 1.5).rel_err, 1e-10);
  EXPECT_EQ(r1.method, IdentityMethod::gauss_quadrature);
}

TEST(LaguerreIntegral, Grid) {
  for (double a : {-0.5, 0.0, 2.5}) {
    for (std::size_t m = 0; m <= 8; ++m) {
      for (std::size_t n = 0; n <= 8; ++n) {
        EXPECT_LE(laguerre_integral_identity(m, n, a).rel_err, 1e-10) << a << ' ' << m << ' ' << n;
      }
    }
  }
}

TEST(MeixnerSum, Examples) {
  const IdentityReport r0 = meixner_sum_identity(0, 0, 1.0, 0.5);
  EXPECT_NEAR(r0.lhs, 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(r0.rhs, 4.0 / 3.0, 1e-14);
  EXPECT_LE(meixner_sum_identity(1, 0, 2.0, 0.3).rel_err, 1e-10);
  const IdentityReport r3 = meixner_sum_identity(3, 3, 0.7, 0.6);
  EXPECT_LE(r3.rel_err, 1e-9);
  EXPECT_EQ(r3.method, IdentityMethod::truncated_sum);
  EXPECT_LT(r3.tail_bound, 1e-12 * std::fabs(r3.rhs));
}

TEST(Gamma4Integral, Examples) {
  const IdentityReport r0 = mp_gamma4_integral_identity(0, 0, 0.5);
  EXPECT_NEAR(r0.rhs, 2.0 * pi, 1e-13);
  EXPECT_LE(r0.rel_err, 1e-8);
  EXPECT_LE(mp_gamma4_integral_identity(1, 1, 1.0).rel_err, 1e-7);
  const IdentityReport odd = mp_gamma4_integral_identity(0, 1, 1.0);
  EXPECT_EQ(odd.rhs, 0.0);
  EXPECT_LE(std::fabs(odd.lhs), 1e-10);
}

TEST(Gamma4Integral, SignPattern) {
  // (m, n) = (1, 1) has sign (-1)^{1+1} = +1 and (2, 0) has (-1)^{1+0} = -1.
  EXPECT_GT(mp_gamma4_integral_identity(1, 1, 0.8).rhs, 0.0);
  const IdentityReport r = mp_gamma4_integral_identity(2, 0, 0.8);
  EXPECT_LT(r.rhs, 0.0);
  EXPECT_LE(r.rel_err, 1e-7);
}

TEST(HermiteIntegral, Examples) {
  const IdentityReport r0 = hermite_integral_identity(0, 0);
  EXPECT_NEAR(r0.rhs, std::sqrt(pi / 2), 1e-15);
  EXPECT_LE(r0.rel_err, 1e-10);
  const IdentityReport r1 = hermite_integral_identity(1, 1);
  EXPECT_NEAR(r1.rhs, std::sqrt(2.0) * std::sqrt(pi) / 2, 1e-14);
  EXPECT_LE(r1.rel_err, 1e-10);
  const IdentityReport r2 = hermite_integral_identity(2, 0);
  EXPECT_LT(r2.rhs, 0.0);
  EXPECT_LE(r2.rel_err, 1e-10);
  EXPECT_LE(std::fabs(hermite_integral_identity(3, 2).lhs), 1e-10);
}

TEST(HermiteIntegral, Grid) {
  for (std::size_t m = 0; m <= 10; ++m) {
    for (std::size_t n = m % 2; n <= 10; n += 2) {
      EXPECT_LE(hermite_integral_identity(m, n).rel_err, 1e-10) << m << ' ' << n;
    }
  }
}

TEST(DualHahnSum, Examples) {
  EXPECT_LE(dual_hahn_sum_identity(0, 0, 0, 0.4, 2.0).rel_err, 1e-12);
  const IdentityReport r1 = dual_hahn_sum_identity(0, 0, 1, 0.0, 0.0);
  EXPECT_NEAR(r1.rhs, 2.0, 1e-14);
  EXPECT_LE(r1.rel_err, 1e-12);
  EXPECT_LE(dual_hahn_sum_identity(2, 4, 5, 0.3, 1.2).rel_err, 1e-10);
  EXPECT_EQ(r1.method, IdentityMethod::finite_sum);
}

TEST(DualHahnSum, FullGridAtLargestN) {
  for (std::size_t m = 0; m <= 12; ++m) {
    for (std::size_t n = 0; n <= 12; ++n) {
      EXPECT_LE(dual_hahn_sum_identity(m, n, 12, 0.3, 1.7).rel_err, 1e-10) << m << ' ' << n;
    }
  }
}

TEST(Determinant, Examples) {
  const IdentityReport r0 = determinant_identity(0, 0.3, 0.4);
  EXPECT_NEAR(r0.lhs, 1.0, 1e-15);
  EXPECT_NEAR(r0.rhs, 1.0, 1e-15);
  const IdentityReport r1 = determinant_identity(1, 0.0, 0.0);
  EXPECT_NEAR(r1.lhs, 3.0, 1e-14);
  EXPECT_NEAR(r1.rhs, 3.0, 1e-14);
  EXPECT_LE(determinant_identity(4, -1.5, 0.7).rel_err, 1e-8);
}

TEST(Determinant, NegativeParameterGrid) {
  for (int N = 0; N <= 12; ++N) {
    for (double g : {-2.5, -1.5, -0.5, 0.0, 1.3, 4.0}) {
      for (double d : {-2.5, -1.5, 0.7, 3.0}) {
        EXPECT_LE(determinant_identity(N, g, d).rel_err, 1e-8) << N << ' ' << g << ' ' << d;
      }
    }
  }
}

TEST(Determinant, VanishingProduct) {
  // (1 + gamma)_s = (-1)_s vanishes for s >= 2, so the matrix is singular.
  const IdentityReport r = determinant_identity(3, -2.0, 0.5);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_LE(r.rel_err, 1e-8);
}

TEST(Determinant, ScaledBeyondDoubleRange) {
  const IdentityReport r = determinant_identity(12, 30.0, 30.0);
  EXPECT_GT(r.exponent10, 300);
  EXPECT_TRUE(std::isfinite(r.lhs));
  EXPECT_TRUE(std::isfinite(r.rhs));
  EXPECT_LE(r.rel_err, 1e-8);
}

TEST(Trace, Examples) {
  const auto [t0, s0] = trace_identities(0, 0.6, 1.1);
  EXPECT_NEAR(t0.lhs, 1.0, 1e-15);
  EXPECT_NEAR(s0.rhs, 1.0, 1e-15);
  const auto [t1, s1] = trace_identities(1, 0.0, 0.0);
  EXPECT_NEAR(t1.lhs, 4.0, 1e-14);
  EXPECT_NEAR(t1.rhs, 4.0, 1e-14);
  EXPECT_NEAR(s1.lhs, 10.0, 1e-13);
  EXPECT_NEAR(s1.rhs, 10.0, 1e-13);
}

TEST(Trace, Grid) {
  for (int N = 0; N <= 12; ++N) {
    for (double g : {-0.5, 0.0, 2.0}) {
      for (double d : {-0.9, 0.5, 3.0}) {
        const auto [t, s] = trace_identities(N, g, d);
        EXPECT_LE(t.rel_err, 1e-10) << N << ' ' << g << ' ' << d;
        EXPECT_LE(s.rel_err, 1e-10) << N << ' ' << g << ' ' << d;
      }
    }
  }
}

TEST(H1TraceClass, Examples) {
  const auto [a, b] = h1_trace_class_checks(0.1, 1.0);
  EXPECT_LE(a.rel_err, 1e-10);
  EXPECT_LE(b.rel_err, 1e-10);
  const auto [c, d] = h1_trace_class_checks(0.3, 2.5);
  EXPECT_LE(c.rel_err, 1e-9);
  EXPECT_LE(d.rel_err, 1e-9);
  const auto [e, f] = h1_trace_class_checks(0.45, 0.5);
  EXPECT_LE(e.rel_err, 1e-8);
  EXPECT_LE(f.rel_err, 1e-8);
  EXPECT_EQ(e.method, IdentityMethod::truncated_sum);
}

TEST(H1TraceClass, RejectsNonTraceClass) { EXPECT_THROW(h1_trace_class_checks(0.6, 1.0), std::invalid_argument); }

TEST(MethodName, Values) {
  EXPECT_STREQ(method_name(IdentityMethod::gauss_quadrature), "gauss-quadrature");
  EXPECT_STREQ(method_name(IdentityMethod::truncated_sum), "truncated-sum+tail-bound");
}

}  // namespace
