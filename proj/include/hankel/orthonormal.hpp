#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "hankel/family.hpp"
#include "hankel/operators.hpp"
#include "hankel/ortho_poly.hpp"

namespace hankel {

// The orthonormal polynomials are eigenvector components of an affine shift of
// the commuting Jacobi matrix J; the shift makes the eigenvalue coincide with
// the variable in which the measure and the multiplier are written:
//   h1, k > 1/2 : -J - (alpha/2) I
//   h1, k = 1/2 :  J + (alpha/2) I
//   h1, k < 1/2 :  J + c alpha/(1+c) I
//   h2, h3, h4  :  J  (for h4 the eigenvalue is lambda(x) = x(x+gamma+delta+1))

template <class Real>
Real spectral_b(const FamilySpec& spec, std::size_t n) {
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    const Real nn(static_cast<long long>(n));
    switch (h1_regime(*p).regime) {
      case H1Regime::unbounded:
        return -(nn + Real(p->alpha) / Real(2));
      case H1Regime::laguerre:
        return nn + Real(p->alpha) / Real(2);
      case H1Regime::point: {
        const auto pc = point_regime_constants(p->k);
        return nn + Real(pc.c) * Real(p->alpha) / Real(pc.A);
      }
    }
  }
  return jacobi_b<Real>(spec, n);
}

template <class Real>
Real spectral_a(const FamilySpec& spec, std::size_t n) {
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    const Real a = jacobi_a<Real>(spec, n);
    if (h1_regime(*p).regime == H1Regime::unbounded) {
      return -a;
    }
    if (h1_regime(*p).regime == H1Regime::laguerre && h1_regime(*p).snapped) {
      using std::sqrt;
      const Real nn(static_cast<long long>(n));
      return -sqrt((nn + Real(1)) * (nn + Real(p->alpha))) / Real(2);
    }
    return a;
  }
  return jacobi_a<Real>(spec, n);
}

/// Jacobi matrix whose spectral variable is the variable of the measure.
inline JacobiParams spectral_jacobi(const FamilySpec& spec) {
  validate(spec);
  require_full(spec, "spectral_jacobi");
  JacobiParams J;
  J.diag = [spec](std::size_t n) { return spectral_b<double>(spec, n); };
  J.offdiag = [spec](std::size_t n) { return spectral_a<double>(spec, n); };
  J.size = dimension(spec);
  return J;
}

/// Recurrence variable for a point x of the measure.
template <class Real>
Real recurrence_variable(const FamilySpec& spec, Real x) {
  if (const auto* p = std::get_if<H4>(&spec.family)) {
    return x * (x + Real(p->gamma) + Real(p->delta) + Real(1));
  }
  return x;
}

namespace detail {

// Index j when x is the atom j * s of the h1 point-spectrum measure.
inline std::optional<std::size_t> meixner_atom_index(const FamilySpec& spec, double x) {
  const auto* h = std::get_if<H1>(&spec.family);
  if (!h || h1_regime(*h).regime != H1Regime::point || x < 0.0) {
    return std::nullopt;
  }
  const double j = x / point_regime_constants(h->k).s;
  const double r = std::round(j);
  if (std::fabs(j - r) > 1e-9 * std::max(1.0, r)) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(r);
}

}  // namespace detail

/// [P_0(x), ..., P_{n_max}(x)] of the family; for a sub-block the sequence
/// sqrt(2) P_{2n} (even) or sqrt(2) P_{2n+1} (odd).
template <class Real = double>
std::vector<Real> eval_orthonormal_sequence(const FamilySpec& spec, Real x, std::size_t n_max) {
  validate(spec);
  using W = std::conditional_t<std::is_same_v<Real, double>, long double, Real>;
  const std::size_t top = full_index(spec.block, n_max);
  if (auto dim = dimension(spec); dim && top >= *dim) {
    throw std::out_of_range(describe(spec) + ": polynomial degree " + std::to_string(top) + " exceeds N");
  }
  FamilySpec full = spec;
  full.block = Block::full;
  std::vector<W> p(top + 1);
  if (const auto atom = detail::meixner_atom_index(spec, static_cast<double>(x))) {
    // At an atom of the discrete measure the wanted solution is the minimal
    // one, which forward recurrence cannot follow; the terminating Meixner sum
    // has no cancellation there.
    const auto& h = std::get<H1>(spec.family);
    const auto pc = point_regime_constants(h.k);
    const W j(static_cast<long double>(*atom));
    for (std::size_t n = 0; n <= top; ++n) {
      const LogDomainReal norm = LogDomainReal::from_log(1, 0.5L * static_cast<long double>(n) *
                                                                std::log(static_cast<long double>(pc.c))) *
                                 (pochhammer(h.alpha, n) / factorial(n)).sqrt();
      p[n] = norm.template value<W>() * eval_classical<W>(Meixner{h.alpha, pc.c}, n, j);
    }
  } else {
    const W y = recurrence_variable<W>(full, W(x));
    p[0] = W(1);
    for (std::size_t n = 0; n < top; ++n) {
      const W prev = n > 0 ? spectral_a<W>(full, n - 1) * p[n - 1] : W(0);
      p[n + 1] = ((y - spectral_b<W>(full, n)) * p[n] - prev) / spectral_a<W>(full, n);
    }
  }
  std::vector<Real> out(n_max + 1);
  if (spec.block == Block::full) {
    for (std::size_t n = 0; n <= n_max; ++n) {
      out[n] = Real(p[n]);
    }
  } else {
    using std::sqrt;
    const W r2 = sqrt(W(2));
    for (std::size_t n = 0; n <= n_max; ++n) {
      out[n] = Real(r2 * p[full_index(spec.block, n)]);
    }
  }
  return out;
}

/// Orthonormal polynomial from the classical hypergeometric definition with
/// its normalization (independent oracle for the recurrence). Full block only.
template <class Real = double>
Real classical_orthonormal(const FamilySpec& spec, std::size_t n, Real x) {
  validate(spec);
  require_full(spec, "classical_orthonormal");
  using std::sqrt;
  const long double nn = static_cast<long double>(n);
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    const long double a = p->alpha;
    const auto regime = h1_regime(*p).regime;
    if (regime == H1Regime::point) {
      const auto pc = point_regime_constants(p->k);
      // c^{n/2} sqrt((alpha)_n / n!)
      const LogDomainReal norm =
          LogDomainReal::from_log(1, 0.5L * nn * std::log(static_cast<long double>(pc.c))) *
          (pochhammer(p->alpha, n) / factorial(n)).sqrt();
      // Snap atoms so the series terminates exactly as it does at the lattice.
      const auto j = detail::meixner_atom_index(spec, static_cast<double>(x));
      const Real u = j ? Real(static_cast<long double>(*j)) : x / Real(pc.s);
      return norm.template value<Real>() * eval_classical<Real>(Meixner{p->alpha, pc.c}, n, u);
    }
    const LogDomainReal norm =
        LogDomainReal::from_log(1, 0.5L * (ln_gamma_ext(a) + ln_gamma_ext(nn + 1) - ln_gamma_ext(nn + a)));
    if (regime == H1Regime::laguerre) {
      return norm.template value<Real>() * eval_classical<Real>(Laguerre{p->alpha - 1.0}, n, Real(2) * x);
    }
    const double k = p->k;
    const double phi = std::acos(1.0 / (2.0 * k));
    const Real t = Real(1) / sqrt(Real(4) * Real(k) * Real(k) - Real(1));
    return norm.template value<Real>() * eval_classical<Real>(MeixnerPollaczek{p->alpha / 2.0, phi}, n, x * t);
  }
  if (const auto* p = std::get_if<H2>(&spec.family)) {
    const long double tl = 2.0L * p->lambda;
    const LogDomainReal norm =
        LogDomainReal::from_log(1, 0.5L * (ln_gamma_ext(tl) + ln_gamma_ext(nn + 1) - ln_gamma_ext(nn + tl)));
    return norm.template value<Real>() *
           eval_classical<Real>(MeixnerPollaczek{p->lambda, std::numbers::pi / 2}, n, x);
  }
  if (std::holds_alternative<H3>(spec.family)) {
    const LogDomainReal norm =
        LogDomainReal::from_log(1, -0.5L * (nn * std::log(2.0L) + ln_gamma_ext(nn + 1)));
    return norm.template value<Real>() * eval_classical<Real>(Hermite{}, n, x);
  }
  const auto& p = std::get<H4>(spec.family);
  const std::size_t N = static_cast<std::size_t>(p.N);
  if (n > N) {
    throw std::out_of_range(describe(spec) + ": degree exceeds N");
  }
  const LogDomainReal norm = (factorial(N) * pochhammer(1.0 + p.gamma, n) * pochhammer(1.0 + p.delta, N - n) /
                              (factorial(n) * factorial(N - n) * pochhammer(1.0 + p.delta, N)))
                                 .sqrt();
  return norm.template value<Real>() * eval_classical<Real>(DualHahn{p.gamma, p.delta, p.N}, n, x);
}

}  // namespace hankel
