#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "hankel/eigen.hpp"
#include "hankel/operators.hpp"
#include "hankel/special_fn.hpp"

namespace {

using namespace hankel;

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

std::vector<FamilySpec> infinite_specs() {
  return {h1(0.1, 0.5), h1(0.3, 2.5), h1(0.5, 1.0), h1(0.8, 3.0), h2(0.5), h2(2.5), h3()};
}

TEST(JacobiParams, Values) {
  const JacobiParams j1 = jacobi_params(h1(0.4, 2.0));
  EXPECT_EQ(j1.b(3), 3.0);
  EXPECT_NEAR(j1.a(2), -0.4 * std::sqrt(3.0 * 4.0), 1e-15);
  const JacobiParams j3 = jacobi_params(h3());
  EXPECT_EQ(j3.b(5), 0.0);
  EXPECT_NEAR(j3.a(1), 1.0, 1e-15);
  const JacobiParams j4 = jacobi_params(h4(2, 0.0, 0.0));
  ASSERT_TRUE(j4.size.has_value());
  EXPECT_EQ(*j4.size, 3u);
  EXPECT_EQ(j4.a(2), 0.0);
  EXPECT_THROW(j4.a(3), std::out_of_range);
}

TEST(JacobiParams, RejectsBlocks) { EXPECT_THROW(jacobi_params(h3(Block::even)), std::invalid_argument); }

TEST(HankelSymbol, Values) {
  EXPECT_LE(rel(hankel_symbol(h1(0.6, 2.5), 0).value(), std::tgamma(2.5)), 1e-14);
  EXPECT_TRUE(hankel_symbol(h2(1.3), 3).is_zero());
  EXPECT_TRUE(hankel_symbol(h3(), 7).is_zero());
  EXPECT_NEAR(hankel_symbol(h4(1, 0.0, 0.0), 1).value(), -1.0, 1e-15);
  EXPECT_THROW(hankel_symbol(h4(2, 0.0, 0.0), 5), std::out_of_range);
}

TEST(Weights, Values) {
  EXPECT_NEAR(weights(h1(0.3, 1.0), 0).value(), 1.0, 1e-15);
  EXPECT_NEAR(weights(h3(), 2).value(), -1.0 / std::sqrt(2.0), 1e-15);
  const int N = 4;
  const double delta = 0.7;
  EXPECT_LE(rel(weights(h4(N, 0.2, delta), 0).value(), 1.0 / std::sqrt(24.0 * pochhammer(1.0 + delta, N).value())),
            1e-14);
  EXPECT_THROW(weights(h4(2, 0.0, 0.0), 3), std::out_of_range);
}

TEST(Materialize, Examples) {
  const double k = 0.35, alpha = 1.7;
  const auto M = materialize(h1(k, alpha), 3);
  EXPECT_NEAR(M(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(M(0, 1), k * std::sqrt(alpha), 1e-15);
  const auto G = materialize(h4(1, 0.0, 0.0), 2);
  EXPECT_NEAR(G(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(std::fabs(G(0, 1)), 1.0, 1e-15);
  EXPECT_NEAR(G(1, 1), 2.0, 1e-15);
  const auto B = materialize(h1(0.5, 1.0), 2);
  EXPECT_NEAR(B(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(B(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(B(1, 1), 0.5, 1e-15);
}

TEST(Materialize, DualHahnSmallMatrix) {
  const auto H = materialize(h4(1, 0.0, 0.0), 2);
  const auto ev = dense_sym_eigen(H);
  EXPECT_NEAR(ev[0], 1.0, 1e-14);
  EXPECT_NEAR(ev[1], 3.0, 1e-14);
}

TEST(Materialize, ClosedFormAgreesWithProductForm) {
  for (const FamilySpec& s : {h1(0.1, 0.5), h1(0.5, 2.0), h1(0.9, 3.0), h2(0.5), h2(2.5), h3(), h4(12, 0.3, 1.7),
                              h4(15, -0.5, 5.0)}) {
    const std::size_t size = dimension(s).value_or(60);
    for (std::size_t m = 0; m < size; ++m) {
      for (std::size_t n = 0; n < size; ++n) {
        const double a = closed_form_entry(s, m, n).value();
        const double b = entry(s, m, n).value();
        if (a == 0.0 || b == 0.0) {
          EXPECT_EQ(a, b);
        } else {
          EXPECT_LE(rel(a, b), 1e-12) << describe(s) << ' ' << m << ' ' << n;
        }
      }
    }
  }
}

TEST(Materialize, LargeIndicesStayFinite) {
  const auto M = materialize(h1(0.8, 2.0), 400);
  for (std::size_t m = 0; m < M.size(); ++m) {
    for (std::size_t n = 0; n < M.size(); ++n) {
      ASSERT_TRUE(std::isfinite(M(m, n)));
    }
  }
}

TEST(Materialize, SymmetricAndCheckerboard) {
  for (const FamilySpec& s : infinite_specs()) {
    const auto M = materialize(s, 50);
    EXPECT_TRUE(M.is_symmetric()) << describe(s);
    if (!std::holds_alternative<H1>(s.family)) {
      for (std::size_t m = 0; m < 50; ++m) {
        for (std::size_t n = 0; n < 50; ++n) {
          if ((m + n) % 2 == 1) {
            EXPECT_EQ(M(m, n), 0.0);
          }
        }
      }
    }
  }
}

TEST(Materialize, StripSigns) {
  MaterializeOptions opts;
  opts.strip_signs = true;
  const auto A = materialize(h1(0.6, 1.0), 10);
  const auto B = materialize(h1(0.6, 1.0), 10, opts);
  for (std::size_t m = 0; m < 10; ++m) {
    for (std::size_t n = 0; n < 10; ++n) {
      EXPECT_EQ(B(m, n), ((m + n) % 2 ? -1.0 : 1.0) * A(m, n));
    }
  }
}

TEST(Materialize, EvenBlockIsSubmatrix) {
  const auto full = materialize(h2(0.8), 20);
  const auto even = materialize(h2(0.8, Block::even), 10);
  const auto odd = materialize(h2(0.8, Block::odd), 10);
  for (std::size_t m = 0; m < 10; ++m) {
    for (std::size_t n = 0; n < 10; ++n) {
      EXPECT_LE(std::fabs(even(m, n) - full(2 * m, 2 * n)), 1e-15 * std::fabs(full(2 * m, 2 * n)) + 1e-300);
      EXPECT_LE(std::fabs(odd(m, n) - full(2 * m + 1, 2 * n + 1)), 1e-15 * std::fabs(full(2 * m + 1, 2 * n + 1)) + 1e-300);
    }
  }
}

TEST(Materialize, Errors) {
  EXPECT_THROW(materialize(h4(3, 0.0, 0.0), 5), std::out_of_range);
  EXPECT_THROW(materialize(h3(), 0), std::invalid_argument);
  EXPECT_THROW(materialize(h1(1.2, 1.0), 3), std::invalid_argument);
  EXPECT_THROW(materialize(h4(3, -1.0, 0.0), 2), std::invalid_argument);
}

TEST(Materialize, GaugeCovariance) {
  // Rescaling w_n by t and h_l by 1/t^2 leaves the entries unchanged.
  for (const FamilySpec& s : {h1(0.4, 1.5), h2(1.2), h4(6, 0.3, 0.9)}) {
    const auto M = materialize(s, dimension(s).value_or(30));
    const LogDomainReal t = LogDomainReal::from_value(-3.7L);
    for (std::size_t m = 0; m < M.size(); ++m) {
      for (std::size_t n = 0; n < M.size(); ++n) {
        const double v = ((weights(s, m) * t) * (weights(s, n) * t) * (hankel_symbol(s, m + n) / (t * t))).value();
        EXPECT_LE(std::fabs(v - M(m, n)), 1e-14 * std::max(1.0, std::fabs(M(m, n))));
      }
    }
  }
}

TEST(Materialize, ColumnSquareSummable) {
  for (double k : {0.3, 0.6, 0.9}) {
    for (double alpha : {0.5, 2.0, 5.0}) {
      const FamilySpec s = h1(k, alpha);
      long double head = 0.0L, tail = 0.0L;
      for (std::size_t n = 0; n < 5000; ++n) {
        const long double v = entry(s, n, 0).value<long double>();
        (n < 500 ? head : tail) += v * v;
      }
      EXPECT_LT(tail, 1e-8L * (head + tail)) << k << ' ' << alpha;
    }
  }
}

TEST(JacobiParams, CarlemanDivergence) {
  for (const FamilySpec& s : infinite_specs()) {
    const JacobiParams J = jacobi_params(s);
    double sum = 0.0, at_100 = 0.0;
    for (std::size_t n = 0; n < 100'000; ++n) {
      sum += 1.0 / std::fabs(J.a(n));
      if (n == 99) {
        at_100 = sum;
      }
    }
    // Partial sums keep growing like log N.
    EXPECT_GT(sum - at_100, 0.5 * std::log(1000.0) * std::min(1.0, at_100 / std::log(100.0))) << describe(s);
  }
}

TEST(Commutation, DiagonalVanishes) {
  for (const FamilySpec& s : infinite_specs()) {
    EXPECT_LE(commutation_residual(s, 5, 5), 1e-15);
  }
}

TEST(Commutation, Examples) {
  EXPECT_LE(commutation_residual(h1(0.3, 2.5), 4, 7), 1e-13);
  EXPECT_LE(commutation_sweep(h4(6, 0.3, 1.7), 6).max_residual, 1e-12);
  EXPECT_THROW(commutation_residual(h4(3, 0.0, 0.0), 1, 4), std::out_of_range);
}

TEST(Commutation, Sweeps) {
  for (const FamilySpec& s : infinite_specs()) {
    const ResidualSweep sw = commutation_sweep(s, 200);
    EXPECT_EQ(sw.pairs, 200u * 201u / 2u);
    EXPECT_LE(sw.max_residual, 1e-12) << describe(s);
  }
  EXPECT_EQ(commutation_sweep(h4(4, 1.0, 1.0), 200).pairs, 10u);
}

TEST(CommutantExpansion, Examples) {
  EXPECT_LE(commutant_expansion_check(h1(0.3, 1.0), 1), 1e-15);
  EXPECT_LE(commutant_expansion_check(h3(), 12, std::size_t{24}), 1e-10);
  EXPECT_LE(commutant_expansion_check(h4(5, 0.0, 0.0), 6), 1e-11);
  EXPECT_LE(commutant_expansion_check(h1(0.3, 2.0), 10), 1e-10);
  EXPECT_LE(commutant_expansion_check(h2(1.0), 10), 1e-12);
}

}  // namespace
