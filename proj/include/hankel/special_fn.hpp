#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include "hankel/log_real.hpp"

namespace hankel {

using quad = boost::multiprecision::float128;
using complex_quad = boost::multiprecision::complex128;

template <class Real>
struct complex_of {
  using type = std::complex<Real>;
};
template <>
struct complex_of<quad> {
  using type = complex_quad;
};
template <class Real>
using complex_t = typename complex_of<Real>::type;

namespace detail {

inline long double lgamma_positive(long double x) {
  int sign = 0;
  return ::lgammal_r(x, &sign);
}

}  // namespace detail

/// ln Gamma(x) for x > 0.
inline double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("ln_gamma: argument must be positive and finite, got " + std::to_string(x));
  }
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

/// Extended precision variant used by the log-domain assembly.
inline long double ln_gamma_ext(long double x) {
  if (!(x > 0.0L) || !std::isfinite(x)) {
    throw std::domain_error("ln_gamma: argument must be positive and finite");
  }
  return detail::lgamma_positive(x);
}

/// Re ln Gamma(a + iy) for a > 0, even in y.
inline long double ln_gamma_abs(long double a, long double y) {
  if (!(a > 0.0L)) {
    throw std::domain_error("gamma_abs_sq: real part must be positive");
  }
  y = std::fabs(y);
  // Shift up until Stirling is accurate to long double precision.
  long double shift = 0.0L;
  while (a < 16.0L) {
    shift += 0.5L * std::log(a * a + y * y);
    a += 1.0L;
  }
  static constexpr long double kStirling[] = {
      1.0L / 12.0L,          -1.0L / 360.0L,        1.0L / 1260.0L,     -1.0L / 1680.0L,
      1.0L / 1188.0L,        -691.0L / 360360.0L,   1.0L / 156.0L,      -3617.0L / 122400.0L,
      43867.0L / 244188.0L,  -174611.0L / 125400.0L};
  static constexpr long double kHalfLog2Pi = 0.918938533204672741780329736405617639861L;
  const std::complex<long double> w(a, y);
  const std::complex<long double> lw = std::log(w);
  std::complex<long double> s = (w - 0.5L) * lw - w + kHalfLog2Pi;
  const std::complex<long double> inv = 1.0L / w;
  const std::complex<long double> inv2 = inv * inv;
  std::complex<long double> p = inv;
  for (long double c : kStirling) {
    s += c * p;
    p *= inv2;
  }
  return s.real() - shift;
}

/// |Gamma(a + iy)|^2 for a > 0.
inline double gamma_abs_sq(double a, double y) {
  if (!(a > 0.0)) {
    throw std::domain_error("gamma_abs_sq: a must be positive, got " + std::to_string(a));
  }
  return static_cast<double>(std::exp(2.0L * ln_gamma_abs(a, y)));
}

/// (a)_n in the log domain; a zero factor yields exact zero.
inline LogDomainReal pochhammer(double a, std::size_t n) {
  if (n == 0) {
    return LogDomainReal::one();
  }
  const long double al = a;
  if (al > 0.0L && n > 1024) {
    return LogDomainReal::from_log(1, detail::lgamma_positive(al + static_cast<long double>(n)) -
                                          detail::lgamma_positive(al));
  }
  int sign = 1;
  long double prod = 1.0L;
  long double acc = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double f = al + static_cast<long double>(i);
    if (f == 0.0L) {
      return {};
    }
    if (f < 0.0L) {
      sign = -sign;
      f = -f;
    }
    prod *= f;
    if (prod > 1e300L || prod < 1e-300L) {
      acc += std::log(prod);
      prod = 1.0L;
    }
  }
  return LogDomainReal::from_log(sign, acc + std::log(prod));
}

/// (a)_n as a plain product in Real (for extended precision paths).
template <class Real>
Real pochhammer_product(Real a, std::size_t n) {
  Real p(1);
  for (std::size_t i = 0; i < n; ++i) {
    p *= a + Real(static_cast<long long>(i));
  }
  return p;
}

inline LogDomainReal factorial(std::size_t n) {
  return LogDomainReal::from_log(1, detail::lgamma_positive(static_cast<long double>(n) + 1.0L));
}

/// Gamma(z+1) / (k! Gamma(z-k+1)) in the log domain; requires z - k + 1 > 0.
inline LogDomainReal binomial_general_log(double z, std::size_t k) {
  const double base = z - static_cast<double>(k) + 1.0;
  if (!(base > 0.0)) {
    throw std::domain_error("binomial_general: requires z - k + 1 > 0 (z=" + std::to_string(z) +
                            ", k=" + std::to_string(k) + ")");
  }
  return pochhammer(base, k) / factorial(k);
}

inline double binomial_general(double z, std::size_t k) {
  return binomial_general_log(z, k).value();
}

template <class T>
struct HypergeometricResult {
  T value{};
  std::size_t terms = 0;
  double max_term = 0.0;
  bool reduced_precision = false;
};

namespace detail {

template <class T>
struct scalar_traits {
  static double magnitude(const T& v) {
    using std::abs;
    return static_cast<double>(abs(v));
  }
  // Returns -p if p is a non-positive integer with zero imaginary part, else -1.
  static long long terminating_index(const T& p) {
    using std::floor;
    if constexpr (requires { p.imag(); }) {
      if (p.imag() != 0) {
        return -1;
      }
      const auto r = p.real();
      if (r <= 0 && floor(r) == r) {
        return static_cast<long long>(-r);
      }
      return -1;
    } else {
      if (p <= 0 && floor(p) == p) {
        return static_cast<long long>(-p);
      }
      return -1;
    }
  }
};

}  // namespace detail

/// Terminating pFq sum by forward term recursion.
template <class T>
HypergeometricResult<T> hypergeometric_terminating(std::span<const T> numerator, std::span<const T> denominator,
                                                   const T& z) {
  using traits = detail::scalar_traits<T>;
  long long n_term = -1;
  for (const T& p : numerator) {
    const long long idx = traits::terminating_index(p);
    if (idx >= 0 && (n_term < 0 || idx < n_term)) {
      n_term = idx;
    }
  }
  if (n_term < 0) {
    throw std::domain_error("hypergeometric_terminating: no non-positive integer numerator parameter");
  }
  HypergeometricResult<T> out;
  T term(1);
  T sum(1);
  double max_term = 1.0;
  for (long long j = 0; j < n_term; ++j) {
    const T jj(static_cast<double>(j));
    T num(1);
    for (const T& p : numerator) {
      num *= p + jj;
    }
    T den(static_cast<double>(j + 1));
    for (const T& q : denominator) {
      const T d = q + jj;
      if (d == T(0)) {
        throw std::domain_error("hypergeometric_terminating: denominator pole reached before termination");
      }
      den *= d;
    }
    term = term * num / den * z;
    sum += term;
    max_term = std::max(max_term, traits::magnitude(term));
  }
  out.value = sum;
  out.terms = static_cast<std::size_t>(n_term) + 1;
  out.max_term = max_term;
  out.reduced_precision = traits::magnitude(sum) < 1e-6 * max_term;
  return out;
}

template <class T>
HypergeometricResult<T> hypergeometric_terminating(std::initializer_list<T> numerator,
                                                   std::initializer_list<T> denominator, const T& z) {
  return hypergeometric_terminating<T>(std::span<const T>(numerator.begin(), numerator.size()),
                                       std::span<const T>(denominator.begin(), denominator.size()), z);
}

}  // namespace hankel
