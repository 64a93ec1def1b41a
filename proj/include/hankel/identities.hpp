#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hankel/eigen.hpp"
#include "hankel/family.hpp"
#include "hankel/operators.hpp"
#include "hankel/ortho_poly.hpp"
#include "hankel/orthonormal.hpp"
#include "hankel/quadrature.hpp"
#include "hankel/special_fn.hpp"

namespace hankel {

enum class IdentityMethod { gauss_quadrature, adaptive_quadrature, finite_sum, truncated_sum };

inline const char* method_name(IdentityMethod m) {
  switch (m) {
    case IdentityMethod::gauss_quadrature:
      return "gauss-quadrature";
    case IdentityMethod::adaptive_quadrature:
      return "adaptive-quadrature";
    case IdentityMethod::finite_sum:
      return "finite-sum";
    default:
      return "truncated-sum+tail-bound";
  }
}

struct IdentityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;  // |lhs - rhs| / max(|rhs|, 1e-300)
  double abs_err = 0.0;  // |lhs - rhs|
  IdentityMethod method = IdentityMethod::finite_sum;
  double tail_bound = 0.0;
  // lhs and rhs are reported as multiples of 10^exponent10 when the raw values
  // exceed the double range (large determinants).
  int exponent10 = 0;
};

namespace detail {

inline IdentityReport make_report(std::string name, long double lhs, long double rhs, IdentityMethod method,
                                  double tail = 0.0) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = static_cast<double>(lhs);
  r.rhs = static_cast<double>(rhs);
  r.abs_err = static_cast<double>(std::fabs(lhs - rhs));
  r.rel_err = static_cast<double>(std::fabs(lhs - rhs) / std::max(std::fabs(rhs), 1e-300L));
  r.method = method;
  r.tail_bound = tail;
  return r;
}

inline std::string args(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string s = "(";
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) {
      s += ", ";
    }
    first = false;
    s += k;
    s += "=";
    s += shortest(v);
  }
  return s + ")";
}

// P_0..P_{n_max} of the Meixner-Pollaczek family by the classical recurrence
// (n+1) P_{n+1} = 2 (x sin phi + (n+lambda) cos phi) P_n - (n+2 lambda-1) P_{n-1}.
inline std::vector<long double> meixner_pollaczek_sequence(double lambda, double phi, long double x,
                                                           std::size_t n_max) {
  std::vector<long double> p(n_max + 1);
  p[0] = 1.0L;
  const long double s = std::sin(static_cast<long double>(phi));
  const long double c = phi == std::numbers::pi / 2 ? 0.0L : std::cos(static_cast<long double>(phi));
  for (std::size_t n = 0; n < n_max; ++n) {
    const long double nn = static_cast<long double>(n);
    const long double prev = n > 0 ? (nn + 2.0L * lambda - 1.0L) * p[n - 1] : 0.0L;
    p[n + 1] = (2.0L * (x * s + (nn + lambda) * c) * p[n] - prev) / (nn + 1.0L);
  }
  return p;
}

// Integral over the line of a smooth integrand via its log-envelope.
template <class F, class LogF>
IntegralResult integrate_real_line(F&& f, LogF&& log_env, double scale, double tol) {
  return integrate_line(std::forward<F>(f), std::forward<LogF>(log_env), -std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(), scale, tol, 1.0, 1e5);
}

}  // namespace detail

/// int e^{(4 phi - pi) x} P_m P_n |Gamma(lambda + i x)|^2 dx against its closed form.
inline IdentityReport mp_integral_identity(std::size_t m, std::size_t n, double lambda, double phi) {
  if (!(lambda > 0.0) || !(phi > 0.0 && phi < std::numbers::pi / 2)) {
    throw std::invalid_argument("mp_integral_identity: need lambda > 0 and phi in (0, pi/2)");
  }
  constexpr double pi = std::numbers::pi;
  const std::size_t top = std::max(m, n);
  const double mn = static_cast<double>(m + n);
  const long double log_rhs = std::log(pi) + ln_gamma_ext(mn + 2.0 * lambda) -
                              (mn + 2.0 * lambda - 1.0) * std::log(2.0L) -
                              2.0 * lambda * std::log(std::sin(2.0 * phi)) - mn * std::log(std::cos(phi)) -
                              ln_gamma_ext(m + 1.0L) - ln_gamma_ext(n + 1.0L);
  const long double rhs = std::exp(log_rhs);
  auto f = [&](double x) {
    const auto p = detail::meixner_pollaczek_sequence(lambda, phi, x, top);
    return static_cast<double>(std::exp((4.0 * phi - pi) * x + 2.0L * ln_gamma_abs(lambda, x)) * p[m] * p[n]);
  };
  auto env = [&](double x) {
    const auto p = detail::meixner_pollaczek_sequence(lambda, phi, x, top);
    return static_cast<double>((4.0 * phi - pi) * x + 2.0L * ln_gamma_abs(lambda, x) +
                               std::log1p(std::fabs(p[m] * p[n])) + mn * std::log1p(std::fabs(x)));
  };
  const IntegralResult res = detail::integrate_real_line(f, env, static_cast<double>(rhs), 1e-12);
  return detail::make_report("mp_integral" + detail::args({{"m", static_cast<double>(m)}, {"n", static_cast<double>(n)}, {"lambda", lambda}, {"phi", phi}}),
                             res.value, rhs, IdentityMethod::adaptive_quadrature,
                             res.tail_bound + res.error_estimate);
}

/// int_0^inf L_m^(a) L_n^(a) x^a e^{-2x} dx by a Gauss rule for x^a e^{-2x}.
inline IdentityReport laguerre_integral_identity(std::size_t m, std::size_t n, double a) {
  if (!(a > -1.0)) {
    throw std::invalid_argument("laguerre_integral_identity: need alpha > -1");
  }
  // The k = 1/2 family with parameter a + 1 has the probability measure
  // 2^{a+1} / Gamma(a+1) x^a e^{-2x} dx; its Jacobi matrix gives the rule.
  const FamilySpec spec = h1(0.5, a + 1.0);
  const std::size_t points = (m + n + 2) / 2 + 1;
  const GaussRule rule = gauss_quadrature(spectral_jacobi(spec), points);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < points; ++i) {
    const long double x = rule.nodes[i];
    sum += rule.weights[i] * eval_classical<long double>(Laguerre{a}, m, x) *
           eval_classical<long double>(Laguerre{a}, n, x);
  }
  const long double norm = std::exp(ln_gamma_ext(a + 1.0L) - (a + 1.0L) * std::log(2.0L));
  const double mn = static_cast<double>(m + n);
  const long double rhs = std::exp(ln_gamma_ext(mn + a + 1.0L) - (mn + a + 1.0L) * std::log(2.0L) -
                                   ln_gamma_ext(m + 1.0L) - ln_gamma_ext(n + 1.0L));
  return detail::make_report("laguerre_integral" + detail::args({{"m", static_cast<double>(m)}, {"n", static_cast<double>(n)}, {"alpha", a}}), sum * norm, rhs,
                             IdentityMethod::gauss_quadrature);
}

/// sum_x (beta)_x / x! c^{2x} M_m(x) M_n(x) with a geometric tail bound.
inline IdentityReport meixner_sum_identity(std::size_t m, std::size_t n, double beta, double c) {
  if (!(beta > 0.0) || !(c > 0.0 && c < 1.0)) {
    throw std::invalid_argument("meixner_sum_identity: need beta > 0 and c in (0, 1)");
  }
  const double mn = static_cast<double>(m + n);
  const LogDomainReal rhs_log = pochhammer(beta, m + n) /
                                (LogDomainReal::from_log(1, beta * std::log1p(-c) + (mn + beta) * std::log1p(c)) *
                                 pochhammer(beta, m) * pochhammer(beta, n));
  const long double rhs = rhs_log.value<long double>();
  const Meixner fam{beta, c};
  long double sum = 0.0L;
  long double weight = 1.0L;  // (beta)_x / x! c^{2x}
  // Polynomial growth constant: |M_m M_n| <= K (1 + x)^{m+n} on the sampled range.
  long double K = 0.0L;
  const long double c2 = static_cast<long double>(c) * c;
  for (std::size_t x = 0; x < 10'000'000; ++x) {
    const long double xl = static_cast<long double>(x);
    const long double pm = eval_classical<long double>(fam, m, xl) * eval_classical<long double>(fam, n, xl);
    sum += weight * pm;
    K = std::max(K, std::fabs(pm) / std::pow(1.0L + xl, mn));
    const long double next_weight = weight * (beta + xl) / (xl + 1.0L) * c2;
    // Envelope ratio of weight * (1+x)^{m+n}; once below 1 and decreasing the
    // remainder is bounded by a geometric series.
    // (beta+x)/(x+1) is monotone with limit 1, so this bounds every later ratio.
    const long double ratio = std::max(1.0L, (beta + xl + 1.0L) / (xl + 2.0L)) * c2 *
                              std::pow((xl + 3.0L) / (xl + 2.0L), mn);
    if (x > m + n && ratio < 1.0L) {
      const long double head = next_weight * K * std::pow(xl + 2.0L, mn);
      const long double tail = head / (1.0L - ratio);
      if (tail < 1e-15L * std::fabs(rhs)) {
        return detail::make_report("meixner_sum" + detail::args({{"m", static_cast<double>(m)}, {"n", static_cast<double>(n)}, {"beta", beta}, {"c", c}}), sum,
                                   rhs, IdentityMethod::truncated_sum, static_cast<double>(tail));
      }
    }
    weight = next_weight;
  }
  throw inconclusive_error("meixner_sum_identity: tail bound not reached (c too close to 1)");
}

/// int P_m(x; pi/2) P_n(x; pi/2) |Gamma(lambda + i x)|^4 dx; zero when m + n is odd.
inline IdentityReport mp_gamma4_integral_identity(std::size_t m, std::size_t n, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("mp_gamma4_integral_identity: need lambda > 0");
  }
  constexpr double pi = std::numbers::pi;
  const std::size_t top = std::max(m, n);
  const double mn = static_cast<double>(m + n);
  long double rhs = 0.0L;
  if ((m + n) % 2 == 0) {
    const long double half = (mn + 1.0L) / 2.0L;
    const long double log_rhs = std::log(pi) + ln_gamma_ext(2.0L * lambda) + ln_gamma_ext(2.0L * lambda + m) +
                                ln_gamma_ext(2.0L * lambda + n) + ln_gamma_ext(half) -
                                (2.0L * lambda - 1.0L) * std::log(4.0L) - ln_gamma_ext(m + 1.0L) -
                                ln_gamma_ext(n + 1.0L) - ln_gamma_ext(2.0L * lambda + half);
    const int sign = ((m + 1) / 2 + (n + 1) / 2) % 2 == 0 ? 1 : -1;
    rhs = sign * std::exp(log_rhs);
  }
  auto f = [&](double x) {
    const auto p = detail::meixner_pollaczek_sequence(lambda, pi / 2, x, top);
    return static_cast<double>(std::exp(4.0L * ln_gamma_abs(lambda, x)) * p[m] * p[n]);
  };
  auto env = [&](double x) {
    const auto p = detail::meixner_pollaczek_sequence(lambda, pi / 2, x, top);
    return static_cast<double>(4.0L * ln_gamma_abs(lambda, x) + std::log1p(std::fabs(p[m] * p[n])) +
                               mn * std::log1p(std::fabs(x)));
  };
  const double scale = rhs != 0.0L ? static_cast<double>(std::fabs(rhs)) : 1.0;
  const IntegralResult res = detail::integrate_real_line(f, env, scale, 1e-12);
  return detail::make_report("mp_gamma4_integral" + detail::args({{"m", static_cast<double>(m)}, {"n", static_cast<double>(n)}, {"lambda", lambda}}),
                             res.value, rhs, IdentityMethod::adaptive_quadrature,
                             res.tail_bound + res.error_estimate);
}

/// int e^{-2x^2} H_m H_n dx; zero when m + n is odd.
inline IdentityReport hermite_integral_identity(std::size_t m, std::size_t n) {
  // x = y / sqrt(2) turns the weight into e^{-y^2}; Gauss rule of that measure.
  const std::size_t points = (m + n + 2) / 2 + 1;
  const GaussRule rule = gauss_quadrature(spectral_jacobi(h3()), points);
  const long double r2 = std::sqrt(2.0L);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < points; ++i) {
    const long double x = rule.nodes[i] / r2;
    sum += rule.weights[i] * eval_classical<long double>(Hermite{}, m, x) * eval_classical<long double>(Hermite{}, n, x);
  }
  const long double lhs = sum * std::sqrt(std::numbers::pi_v<long double>) / r2;
  long double rhs = 0.0L;
  if ((m + n) % 2 == 0) {
    const long double mn = static_cast<long double>(m + n);
    const int sign = ((m + 1) / 2 + (n + 1) / 2) % 2 == 0 ? 1 : -1;
    rhs = sign * std::exp((mn - 1.0L) / 2.0L * std::log(2.0L) + ln_gamma_ext((mn + 1.0L) / 2.0L));
  }
  return detail::make_report("hermite_integral" + detail::args({{"m", static_cast<double>(m)}, {"n", static_cast<double>(n)}}), lhs, rhs,
                             IdentityMethod::gauss_quadrature);
}

/// Weighted sum of R_m R_n over the dual Hahn lattice against its closed form.
inline IdentityReport dual_hahn_sum_identity(std::size_t m, std::size_t n, int N, double gamma, double delta) {
  const FamilySpec spec = h4(N, gamma, delta);
  validate(spec);
  const std::size_t NN = static_cast<std::size_t>(N);
  if (m > NN || n > NN) {
    throw std::out_of_range(describe(spec) + ": polynomial index exceeds N");
  }
  const double s = gamma + delta + 1.0;
  const DualHahn fam{gamma, delta, N};
  long double sum = 0.0L;
  for (std::size_t x = 0; x <= NN; ++x) {
    // (2x+s)/(1+x+gamma+delta)_{N+1} = [(2x+s)/(x+s)] / (x+s+1)_N, the bracket being 1 at x = 0.
    const double ratio = x == 0 ? 1.0 : (2.0 * static_cast<double>(x) + s) / (static_cast<double>(x) + s);
    const LogDomainReal w = binomial_general_log(2.0 * N + s, NN - x) * pochhammer(1.0 + gamma, x) /
                            (pochhammer(static_cast<double>(x) + s + 1.0, NN) * pochhammer(1.0 + delta, x) *
                             factorial(NN - x) * factorial(x));
    const long double xl = static_cast<long double>(x);
    sum += w.value<long double>() * ratio * eval_classical<long double>(fam, m, xl) *
           eval_classical<long double>(fam, n, xl);
  }
  const LogDomainReal rhs = pochhammer(1.0 + gamma, m + n) * pochhammer(1.0 + delta, 2 * NN - m - n) /
                            (factorial(NN) * factorial(NN) * pochhammer(1.0 + gamma, m) * pochhammer(1.0 + gamma, n) *
                             pochhammer(1.0 + delta, NN - m) * pochhammer(1.0 + delta, NN - n));
  return detail::make_report(
      "dual_hahn_sum" + detail::args({{"m", static_cast<double>(m)}, {"n", static_cast<double>(n)}, {"N", static_cast<double>(N)}, {"gamma", gamma}, {"delta", delta}}), sum,
      rhs.value<long double>(), IdentityMethod::finite_sum);
}

/// det of G_{mn} = (1+gamma)_{m+n} (1+delta)_{2N-m-n} against the product formula.
/// When the formula gives exactly zero the error is measured relative to the
/// Hadamard bound prod_i ||G_i||, the natural scale of a vanishing determinant.
inline IdentityReport determinant_identity(int N, double gamma, double delta) {
  if (N < 0) {
    throw std::invalid_argument("determinant_identity: need N >= 0");
  }
  const std::size_t NN = static_cast<std::size_t>(N);
  const std::size_t size = NN + 1;
  DenseMatrix<quad> G(size);
  const quad g1 = quad(1) + quad(gamma);
  const quad d1 = quad(1) + quad(delta);
  for (std::size_t m = 0; m < size; ++m) {
    for (std::size_t n = 0; n < size; ++n) {
      G(m, n) = pochhammer_product(g1, m + n) * pochhammer_product(d1, 2 * NN - m - n);
    }
  }
  using std::abs;
  using std::sqrt;
  quad hadamard(1);
  for (std::size_t m = 0; m < size; ++m) {
    quad row(0);
    for (std::size_t n = 0; n < size; ++n) {
      row += G(m, n) * G(m, n);
    }
    hadamard *= sqrt(row);
  }
  const quad det = determinant(G);
  quad rhs(1);
  for (std::size_t s = 0; s <= NN; ++s) {
    rhs *= pochhammer_product(quad(1), s) * pochhammer_product(g1, s) * pochhammer_product(d1, s) *
           pochhammer_product(quad(static_cast<long long>(2 * NN - s + 2)) + quad(gamma) + quad(delta), s);
  }
  IdentityReport r;
  r.name = "determinant" + detail::args({{"N", static_cast<double>(N)}, {"gamma", gamma}, {"delta", delta}});
  const quad big = rhs != quad(0) ? abs(rhs) : abs(det);
  if (big > quad(1e300)) {
    r.exponent10 = static_cast<int>(floor(log10(big)));
  }
  const quad unit = pow(quad(10), r.exponent10);
  r.lhs = static_cast<double>(det / unit);
  r.rhs = static_cast<double>(rhs / unit);
  r.abs_err = static_cast<double>(abs(det - rhs) / unit);
  const quad denom = rhs != quad(0) ? abs(rhs) : hadamard;
  r.rel_err = denom > quad(0) ? static_cast<double>(abs(det - rhs) / denom) : static_cast<double>(abs(det - rhs));
  r.method = IdentityMethod::finite_sum;
  return r;
}

/// Tr H and Tr H^2 of the dual Hahn matrix against the binomial sums of its eigenvalues.
inline std::pair<IdentityReport, IdentityReport> trace_identities(int N, double gamma, double delta) {
  const FamilySpec spec = h4(N, gamma, delta);
  validate(spec);
  const std::size_t size = static_cast<std::size_t>(N) + 1;
  const DenseMatrix<quad> H = materialize<quad>(spec, size);
  quad tr(0), hs(0);
  for (std::size_t m = 0; m < size; ++m) {
    tr += H(m, m);
    for (std::size_t n = 0; n < size; ++n) {
      hs += H(m, n) * H(m, n);
    }
  }
  long double ev = 0.0L, ev2 = 0.0L;
  for (std::size_t x = 0; x < size; ++x) {
    const long double b = binomial_general_log(2.0 * N + 1.0 + gamma + delta, x).value<long double>();
    ev += b;
    ev2 += b * b;
  }
  const std::string a = detail::args({{"N", static_cast<double>(N)}, {"gamma", gamma}, {"delta", delta}});
  return {detail::make_report("trace" + a, static_cast<long double>(tr), ev, IdentityMethod::finite_sum),
          detail::make_report("trace_square" + a, static_cast<long double>(hs), ev2, IdentityMethod::finite_sum)};
}

/// Trace and Hilbert-Schmidt norm of the trace-class h1 operator (k < 1/2)
/// against the sums of its eigenvalues A^alpha c^j.
inline std::pair<IdentityReport, IdentityReport> h1_trace_class_checks(double k, double alpha) {
  if (!(k > 0.0 && k < 0.5) || !(alpha > 0.0)) {
    throw std::invalid_argument("h1_trace_class_checks: need k in (0, 1/2) and alpha > 0");
  }
  const FamilySpec spec = h1(k, alpha);
  const auto pc = point_regime_constants(k);
  const long double rho = 4.0L * k * k;  // limiting ratio of consecutive terms
  const std::string a = detail::args({{"k", k}, {"alpha", alpha}});
  constexpr long double target = 1e-14L;
  constexpr std::size_t limit = 200'000;

  long double trace = 0.0L;
  long double trace_tail = -1.0L;
  std::size_t n = 0;
  long double prev = entry(spec, 0, 0).value<long double>();
  trace += prev;
  for (n = 1; n < limit; ++n) {
    const long double t = entry(spec, n, n).value<long double>();
    trace += t;
    const long double r = std::max(rho, t / prev);
    if (r < 1.0L && n > 8) {
      const long double tail = t * r / (1.0L - r);
      if (tail < target * trace) {
        trace_tail = tail;
        break;
      }
    }
    prev = t;
  }
  if (trace_tail < 0.0L) {
    throw inconclusive_error("h1_trace_class_checks: trace tail not below target (k too close to 1/2)");
  }
  const long double tr_rhs = std::pow(static_cast<long double>(pc.A), alpha) / (1.0L - pc.c);

  // Hilbert-Schmidt norm summed along anti-diagonals l = m + n.
  long double hs = 0.0L;
  long double hs_tail = -1.0L;
  long double prev_diag = 0.0L;
  for (std::size_t l = 0; l < limit; ++l) {
    long double d = 0.0L;
    for (std::size_t m = 0; m <= l; ++m) {
      const long double v = entry(spec, m, l - m).value<long double>();
      d += v * v;
    }
    hs += d;
    if (l > 8 && prev_diag > 0.0L) {
      const long double r = std::max(rho, d / prev_diag);
      if (r < 1.0L) {
        const long double tail = d * r / (1.0L - r);
        if (tail < target * hs) {
          hs_tail = tail;
          break;
        }
      }
    }
    prev_diag = d;
  }
  if (hs_tail < 0.0L) {
    throw inconclusive_error("h1_trace_class_checks: Hilbert-Schmidt tail not below target");
  }
  const long double hs_rhs = std::pow(static_cast<long double>(pc.A), 2.0L * alpha) / (1.0L - pc.c * pc.c);
  return {detail::make_report("h1_trace" + a, trace, tr_rhs, IdentityMethod::truncated_sum,
                              static_cast<double>(trace_tail)),
          detail::make_report("h1_hilbert_schmidt" + a, hs, hs_rhs, IdentityMethod::truncated_sum,
                              static_cast<double>(hs_tail))};
}

/// Cosh-integral form of the h2 multiplier:
/// 2 int_0^inf cos(2 x t) / cosh^{2 lambda}(t) dt.
inline double h2_multiplier_cosh_integral(double lambda, double x) {
  auto f = [=](double t) { return std::cos(2.0 * x * t) * std::exp(-2.0 * lambda * std::log(std::cosh(t))); };
  auto env = [=](double t) { return -2.0 * lambda * (std::fabs(t) - std::log(2.0)); };
  const IntegralResult r = integrate_line(f, env, 0.0, std::numeric_limits<double>::infinity(), 1.0, 1e-15, 1.0);
  return 2.0 * r.value;
}

}  // namespace hankel
