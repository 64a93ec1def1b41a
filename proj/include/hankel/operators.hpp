#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hankel/family.hpp"
#include "hankel/log_real.hpp"
#include "hankel/matrix.hpp"
#include "hankel/special_fn.hpp"

namespace hankel {

/// Jacobi matrix with diagonal b_n and off-diagonal a_n; a_{-1} = 0 and, for a
/// finite instance of dimension d, a_{d-1} = 0.
struct JacobiParams {
  std::function<double(std::size_t)> diag;
  std::function<double(std::size_t)> offdiag;
  std::optional<std::size_t> size;

  double b(std::size_t n) const {
    check(n);
    return diag(n);
  }
  double a(std::size_t n) const {
    check(n);
    if (size && n + 1 >= *size) {
      return 0.0;
    }
    return offdiag(n);
  }

private:
  void check(std::size_t n) const {
    if (size && n >= *size) {
      throw std::out_of_range("Jacobi index " + std::to_string(n) + " beyond finite size " +
                              std::to_string(*size));
    }
  }
};

namespace detail {

inline void check_h4_index(const FamilySpec& spec, std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    throw std::out_of_range(describe(spec) + ": " + what + " index " + std::to_string(n) + " exceeds " +
                            std::to_string(limit));
  }
}

template <class Real>
Real h4_b(const H4& p, std::size_t n) {
  const Real nn(static_cast<long long>(n));
  const Real N(p.N);
  return nn * (Real(p.delta) + N + Real(1) - nn) + (N - nn) * (nn + Real(p.gamma) + Real(1));
}

template <class Real>
Real h4_a(const H4& p, std::size_t n) {
  using std::sqrt;
  const Real nn(static_cast<long long>(n));
  const Real N(p.N);
  return -sqrt((nn + Real(1)) * (nn + Real(1) + Real(p.gamma)) * (N - nn) * (N - nn + Real(p.delta)));
}

}  // namespace detail

/// b_n of the commuting Jacobi matrix, evaluated in Real.
template <class Real>
Real jacobi_b(const FamilySpec& spec, std::size_t n) {
  if (std::holds_alternative<H1>(spec.family)) {
    return Real(static_cast<long long>(n));
  }
  if (const auto* p = std::get_if<H4>(&spec.family)) {
    return detail::h4_b<Real>(*p, n);
  }
  return Real(0);
}

/// a_n of the commuting Jacobi matrix, evaluated in Real (zero past a finite end).
template <class Real>
Real jacobi_a(const FamilySpec& spec, std::size_t n) {
  using std::sqrt;
  const Real nn(static_cast<long long>(n));
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    return -Real(p->k) * sqrt((nn + Real(1)) * (nn + Real(p->alpha)));
  }
  if (const auto* p = std::get_if<H2>(&spec.family)) {
    return sqrt((nn + Real(1)) * (nn + Real(2) * Real(p->lambda))) / Real(2);
  }
  if (std::holds_alternative<H3>(spec.family)) {
    return sqrt((nn + Real(1)) / Real(2));
  }
  const auto& p = std::get<H4>(spec.family);
  if (n >= static_cast<std::size_t>(p.N)) {
    return Real(0);
  }
  return detail::h4_a<Real>(p, n);
}

/// Jacobi matrix commuting with the full operator of the family.
inline JacobiParams jacobi_params(const FamilySpec& spec) {
  validate(spec);
  require_full(spec, "jacobi_params");
  JacobiParams J;
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    const double k = p->k;
    const double alpha = p->alpha;
    J.diag = [](std::size_t n) { return static_cast<double>(n); };
    J.offdiag = [k, alpha](std::size_t n) {
      const double nn = static_cast<double>(n);
      return -k * std::sqrt((nn + 1.0) * (nn + alpha));
    };
  } else if (const auto* p = std::get_if<H2>(&spec.family)) {
    const double lam = p->lambda;
    J.diag = [](std::size_t) { return 0.0; };
    J.offdiag = [lam](std::size_t n) {
      const double nn = static_cast<double>(n);
      return 0.5 * std::sqrt((nn + 1.0) * (nn + 2.0 * lam));
    };
  } else if (std::holds_alternative<H3>(spec.family)) {
    J.diag = [](std::size_t) { return 0.0; };
    J.offdiag = [](std::size_t n) { return std::sqrt((static_cast<double>(n) + 1.0) / 2.0); };
  } else {
    const H4 p = std::get<H4>(spec.family);
    J.diag = [p](std::size_t n) { return detail::h4_b<double>(p, n); };
    J.offdiag = [p](std::size_t n) { return detail::h4_a<double>(p, n); };
    J.size = static_cast<std::size_t>(p.N) + 1;
  }
  return J;
}

namespace detail {

inline LogDomainReal raw_symbol(const FamilySpec& spec, std::size_t l) {
  const long double ll = static_cast<long double>(l);
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    return LogDomainReal::from_log(1, ll * std::log(static_cast<long double>(p->k)) +
                                          ln_gamma_ext(ll + static_cast<long double>(p->alpha)));
  }
  if (const auto* p = std::get_if<H2>(&spec.family)) {
    if (l % 2 == 1) {
      return {};
    }
    const long double j = static_cast<long double>(l / 2);
    return LogDomainReal::from_log(
        1, ln_gamma_ext(j + 0.5L) - ln_gamma_ext(2.0L * static_cast<long double>(p->lambda) + j + 0.5L));
  }
  if (std::holds_alternative<H3>(spec.family)) {
    if (l % 2 == 1) {
      return {};
    }
    return LogDomainReal::from_log(1, ln_gamma_ext(static_cast<long double>(l / 2) + 0.5L));
  }
  const auto& p = std::get<H4>(spec.family);
  const std::size_t N = static_cast<std::size_t>(p.N);
  check_h4_index(spec, l, 2 * N, "symbol");
  return parity_sign(static_cast<long long>(l)) * pochhammer(1.0 + p.gamma, l) *
         pochhammer(1.0 + p.delta, 2 * N - l);
}

inline LogDomainReal raw_weight(const FamilySpec& spec, std::size_t n) {
  const long double nn = static_cast<long double>(n);
  const long long quarter_turn = static_cast<long long>(n * (n == 0 ? 0 : n - 1) / 2);
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    return LogDomainReal::from_log(
        1, -0.5L * (ln_gamma_ext(nn + 1.0L) + ln_gamma_ext(nn + static_cast<long double>(p->alpha))));
  }
  if (const auto* p = std::get_if<H2>(&spec.family)) {
    return parity_sign(quarter_turn) *
           LogDomainReal::from_log(
               1, 0.5L * (ln_gamma_ext(nn + 2.0L * static_cast<long double>(p->lambda)) - ln_gamma_ext(nn + 1.0L)));
  }
  if (std::holds_alternative<H3>(spec.family)) {
    return parity_sign(quarter_turn) * LogDomainReal::from_log(1, -0.5L * ln_gamma_ext(nn + 1.0L));
  }
  const auto& p = std::get<H4>(spec.family);
  const std::size_t N = static_cast<std::size_t>(p.N);
  check_h4_index(spec, n, N, "weight");
  const LogDomainReal d = factorial(n) * factorial(N - n) * pochhammer(1.0 + p.gamma, n) *
                          pochhammer(1.0 + p.delta, N - n);
  return parity_sign(static_cast<long long>(n)) / d.sqrt();
}

}  // namespace detail

/// Hankel symbol h_l; for a sub-block this is the symbol of the block itself.
inline LogDomainReal hankel_symbol(const FamilySpec& spec, std::size_t l) {
  validate(spec);
  switch (spec.block) {
    case Block::even:
      return detail::raw_symbol(spec, 2 * l);
    case Block::odd:
      return detail::raw_symbol(spec, 2 * l + 2);
    default:
      return detail::raw_symbol(spec, l);
  }
}

/// Weight w_n; for a sub-block, the weight of the mapped index.
inline LogDomainReal weights(const FamilySpec& spec, std::size_t n) {
  validate(spec);
  return detail::raw_weight(spec, full_index(spec.block, n));
}

/// Entry from the closed-form matrix definitions (independent of the w/h split).
inline LogDomainReal closed_form_entry(const FamilySpec& spec, std::size_t m, std::size_t n) {
  validate(spec);
  const long double mm = static_cast<long double>(m);
  const long double nn = static_cast<long double>(n);
  auto lg = [](long double x) { return ln_gamma_ext(x); };
  auto quarter = [](std::size_t i) { return static_cast<long long>(i * (i == 0 ? 0 : i - 1) / 2); };
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    const long double k = p->k;
    const long double a = p->alpha;
    return LogDomainReal::from_log(
        1, (mm + nn) * std::log(k) + lg(mm + nn + a) - 0.5L * (lg(mm + 1) + lg(nn + 1) + lg(mm + a) + lg(nn + a)));
  }
  if (const auto* p = std::get_if<H2>(&spec.family)) {
    const long double tl = 2.0L * static_cast<long double>(p->lambda);
    if (spec.block == Block::even) {
      return parity_sign(static_cast<long long>(m + n)) *
             LogDomainReal::from_log(1, 0.5L * (lg(2 * mm + tl) + lg(2 * nn + tl) - lg(2 * mm + 1) - lg(2 * nn + 1)) +
                                            lg(mm + nn + 0.5L) - lg(tl + mm + nn + 0.5L));
    }
    if (spec.block == Block::odd) {
      return parity_sign(static_cast<long long>(m + n)) *
             LogDomainReal::from_log(1, 0.5L * (lg(2 * mm + 1 + tl) + lg(2 * nn + 1 + tl) - lg(2 * mm + 2) -
                                                lg(2 * nn + 2)) +
                                            lg(mm + nn + 1.5L) - lg(tl + mm + nn + 1.5L));
    }
    if ((m + n) % 2 == 1) {
      return {};
    }
    const long double half = (mm + nn + 1.0L) / 2.0L;
    return parity_sign(quarter(m) + quarter(n)) *
           LogDomainReal::from_log(1, 0.5L * (lg(mm + tl) + lg(nn + tl) - lg(mm + 1) - lg(nn + 1)) + lg(half) -
                                          lg(tl + half));
  }
  if (std::holds_alternative<H3>(spec.family)) {
    if (spec.block == Block::even) {
      return parity_sign(static_cast<long long>(m + n)) *
             LogDomainReal::from_log(1, lg(mm + nn + 0.5L) - 0.5L * (lg(2 * mm + 1) + lg(2 * nn + 1)));
    }
    if (spec.block == Block::odd) {
      return parity_sign(static_cast<long long>(m + n)) *
             LogDomainReal::from_log(1, lg(mm + nn + 1.5L) - 0.5L * (lg(2 * mm + 2) + lg(2 * nn + 2)));
    }
    if ((m + n) % 2 == 1) {
      return {};
    }
    return parity_sign(quarter(m) + quarter(n)) *
           LogDomainReal::from_log(1, lg((mm + nn + 1.0L) / 2.0L) - 0.5L * (lg(mm + 1) + lg(nn + 1)));
  }
  const auto& p = std::get<H4>(spec.family);
  const std::size_t N = static_cast<std::size_t>(p.N);
  detail::check_h4_index(spec, std::max(m, n), N, "entry");
  const double g1 = 1.0 + p.gamma;
  const double d1 = 1.0 + p.delta;
  const LogDomainReal num = pochhammer(g1, m + n) * pochhammer(d1, 2 * N - m - n);
  const LogDomainReal den = factorial(m) * factorial(n) * factorial(N - m) * factorial(N - n) * pochhammer(g1, m) *
                            pochhammer(g1, n) * pochhammer(d1, N - m) * pochhammer(d1, N - n);
  return num / den.sqrt();
}

/// Entry w_m w_n h_{m+n}.
inline LogDomainReal entry(const FamilySpec& spec, std::size_t m, std::size_t n) {
  return weights(spec, m) * weights(spec, n) * hankel_symbol(spec, m + n);
}

struct MaterializeOptions {
  bool strip_signs = false;  // conjugate by diag((-1)^n)
};

/// Top-left size x size block of the operator matrix.
template <class Real = double>
DenseMatrix<Real> materialize(const FamilySpec& spec, std::size_t size, MaterializeOptions opts = {}) {
  validate(spec);
  if (size == 0) {
    throw std::invalid_argument(describe(spec) + ": materialize size must be positive");
  }
  if (auto dim = dimension(spec); dim && size > *dim) {
    throw std::out_of_range(describe(spec) + ": size " + std::to_string(size) + " exceeds dimension " +
                            std::to_string(*dim));
  }
  DenseMatrix<Real> M(size);
  auto sign_of = [&](std::size_t m, std::size_t n) { return (opts.strip_signs && (m + n) % 2 == 1) ? -1 : 1; };
  if (const auto* p = std::get_if<H4>(&spec.family);
      p && std::numeric_limits<Real>::max_exponent >= std::numeric_limits<long double>::max_exponent) {
    // Wide exponent range: assemble the rational entries by direct products in Real.
    using std::sqrt;
    const std::size_t N = static_cast<std::size_t>(p->N);
    const Real g1 = Real(1) + Real(p->gamma);
    const Real d1 = Real(1) + Real(p->delta);
    std::vector<Real> w(size);
    for (std::size_t n = 0; n < size; ++n) {
      const Real d = pochhammer_product(Real(1), n) * pochhammer_product(Real(1), N - n) * pochhammer_product(g1, n) *
                     pochhammer_product(d1, N - n);
      w[n] = Real(1) / sqrt(d);
    }
    for (std::size_t m = 0; m < size; ++m) {
      for (std::size_t n = m; n < size; ++n) {
        Real v = w[m] * w[n] * pochhammer_product(g1, m + n) * pochhammer_product(d1, 2 * N - m - n);
        if (sign_of(m, n) < 0) {
          v = -v;
        }
        M(m, n) = v;
        M(n, m) = v;
      }
    }
    return M;
  }
  std::vector<LogDomainReal> w(size);
  for (std::size_t n = 0; n < size; ++n) {
    w[n] = weights(spec, n);
  }
  std::vector<LogDomainReal> h(2 * size - 1);
  for (std::size_t l = 0; l < h.size(); ++l) {
    h[l] = hankel_symbol(spec, l);
  }
  for (std::size_t m = 0; m < size; ++m) {
    for (std::size_t n = m; n < size; ++n) {
      Real v = (w[m] * w[n] * h[m + n]).template value<Real>();
      if (sign_of(m, n) < 0) {
        v = -v;
      }
      M(m, n) = v;
      M(n, m) = v;
    }
  }
  return M;
}

namespace detail {

/// |sum| / max|addend| for addends given in the log domain.
inline double relative_cancellation(const LogDomainReal* terms, std::size_t count) {
  long double top = -std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    if (!terms[i].is_zero()) {
      top = std::max(top, terms[i].log_abs());
    }
  }
  if (top == -std::numeric_limits<long double>::infinity()) {
    return 0.0;
  }
  long double s = 0.0L;
  for (std::size_t i = 0; i < count; ++i) {
    if (!terms[i].is_zero()) {
      s += static_cast<long double>(terms[i].sign()) * std::exp(terms[i].log_abs() - top);
    }
  }
  return static_cast<double>(std::fabs(s));
}

/// Tables for the entrywise commutation identity up to index n_max.
struct CommutationTables {
  std::vector<LogDomainReal> w;  // indices 0..n_max+1 (missing tail entries stay zero)
  std::vector<LogDomainReal> h;  // indices 0..2 n_max+1
  std::vector<double> a;         // a_0..a_{n_max}
  std::vector<double> b;

  CommutationTables(const FamilySpec& spec, std::size_t n_max) {
    const JacobiParams J = jacobi_params(spec);
    const auto dim = dimension(spec);
    w.resize(n_max + 2);
    h.resize(2 * n_max + 2);
    a.resize(n_max + 1);
    b.resize(n_max + 1);
    for (std::size_t n = 0; n < w.size(); ++n) {
      if (!dim || n < *dim) {
        w[n] = weights(spec, n);
      }
    }
    for (std::size_t l = 0; l < h.size(); ++l) {
      if (!dim || l <= 2 * (*dim - 1)) {
        h[l] = hankel_symbol(spec, l);
      }
    }
    for (std::size_t n = 0; n <= n_max; ++n) {
      a[n] = J.a(n);
      b[n] = J.b(n);
    }
  }

  double residual(std::size_t m, std::size_t n) const {
    const auto A = [&](std::size_t i) { return LogDomainReal::from_value(a[i]); };
    LogDomainReal t[5];
    t[0] = LogDomainReal::from_value(b[m] - b[n]) * w[m] * w[n] * h[m + n];
    if (m + n >= 1) {
      if (m >= 1) {
        t[1] = A(m - 1) * w[m - 1] * w[n] * h[m + n - 1];
      }
      if (n >= 1) {
        t[2] = -(A(n - 1) * w[m] * w[n - 1] * h[m + n - 1]);
      }
    }
    if (a[m] != 0.0) {
      t[3] = A(m) * w[m + 1] * w[n] * h[m + n + 1];
    }
    if (a[n] != 0.0) {
      t[4] = -(A(n) * w[m] * w[n + 1] * h[m + n + 1]);
    }
    return relative_cancellation(t, 5);
  }
};

}  // namespace detail

/// Relative residual of the entrywise commutation identity (HJ - JH)_{m,n} = 0,
/// normalized by the largest addend.
inline double commutation_residual(const FamilySpec& spec, std::size_t m, std::size_t n) {
  validate(spec);
  require_full(spec, "commutation_residual");
  if (auto dim = dimension(spec)) {
    detail::check_h4_index(spec, std::max(m, n), *dim - 1, "commutation");
  }
  return detail::CommutationTables(spec, std::max(m, n)).residual(m, n);
}

struct ResidualSweep {
  double max_residual = 0.0;
  std::size_t argmax_m = 0;
  std::size_t argmax_n = 0;
  std::size_t pairs = 0;
};

/// Residual over all 0 <= m < n <= max_index (clamped to N for finite families).
inline ResidualSweep commutation_sweep(const FamilySpec& spec, std::size_t max_index) {
  validate(spec);
  require_full(spec, "commutation_sweep");
  if (auto dim = dimension(spec)) {
    max_index = std::min(max_index, *dim - 1);
  }
  const detail::CommutationTables tables(spec, max_index);
  ResidualSweep out;
  for (std::size_t n = 1; n <= max_index; ++n) {
    for (std::size_t m = 0; m < n; ++m) {
      const double r = tables.residual(m, n);
      ++out.pairs;
      if (r > out.max_residual) {
        out.max_residual = r;
        out.argmax_m = m;
        out.argmax_n = n;
      }
    }
  }
  return out;
}

/// Max deviation, relative to the largest window entry, between H and
/// sum_k H_{k,0} P_k(J) on the leading window x window block. The Jacobi matrix is
/// truncated at window + padding rows (default padding = window, which exceeds
/// the window - 1 needed for the band structure to leave the window exact).
template <class LD = long double>
double commutant_expansion_check(const FamilySpec& spec, std::size_t window,
                                 std::optional<std::size_t> padding = std::nullopt) {
  validate(spec);
  require_full(spec, "commutant_expansion_check");
  if (window == 0) {
    throw std::invalid_argument("commutant_expansion_check: window must be positive");
  }
  std::size_t M = window + padding.value_or(window);
  std::size_t K = 2 * window - 2;
  if (auto dim = dimension(spec)) {
    if (window > *dim) {
      throw std::out_of_range(describe(spec) + ": window exceeds dimension");
    }
    M = std::min(M, *dim);
    K = std::min(K, *dim - 1);
  }
  const std::size_t L = std::max(M, K + 1);
  std::vector<LD> b(L), a(L);
  for (std::size_t i = 0; i < L; ++i) {
    b[i] = jacobi_b<LD>(spec, i);
    a[i] = jacobi_a<LD>(spec, i);
  }
  // P_{k+1}(J) = ((J - b_k) P_k(J) - a_{k-1} P_{k-1}(J)) / a_k, applied column-wise.
  DenseMatrix<LD> prev(M), cur = DenseMatrix<LD>::identity(M), acc(M);
  auto accumulate = [&](const DenseMatrix<LD>& P, LD coef) {
    for (std::size_t i = 0; i < window; ++i) {
      for (std::size_t j = 0; j < window; ++j) {
        acc(i, j) += coef * P(i, j);
      }
    }
  };
  accumulate(cur, closed_form_entry(spec, 0, 0).template value<LD>());
  for (std::size_t k = 0; k < K; ++k) {
    DenseMatrix<LD> next(M);
    for (std::size_t i = 0; i < M; ++i) {
      for (std::size_t j = 0; j < M; ++j) {
        LD v = (b[i] - b[k]) * cur(i, j);
        if (i > 0) {
          v += a[i - 1] * cur(i - 1, j);
        }
        if (i + 1 < M) {
          v += a[i] * cur(i + 1, j);
        }
        if (k > 0) {
          v -= a[k - 1] * prev(i, j);
        }
        next(i, j) = v / a[k];
      }
    }
    prev = std::move(cur);
    cur = std::move(next);
    accumulate(cur, closed_form_entry(spec, k + 1, 0).template value<LD>());
  }
  using std::abs;
  LD scale(0), dev(0);
  for (std::size_t i = 0; i < window; ++i) {
    for (std::size_t j = 0; j < window; ++j) {
      const LD h = entry(spec, i, j).template value<LD>();
      scale = std::max(scale, LD(abs(h)));
      dev = std::max(dev, LD(abs(h - acc(i, j))));
    }
  }
  return scale > 0 ? static_cast<double>(dev / scale) : static_cast<double>(dev);
}

}  // namespace hankel
