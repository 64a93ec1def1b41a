#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <numbers>
#include <variant>

#include "hankel/special_fn.hpp"

namespace hankel {

struct MeixnerPollaczek {
  double lambda = 1.0;
  double phi = 1.5707963267948966;
};
struct Laguerre {
  double a = 0.0;
};
struct Meixner {
  double beta = 1.0;
  double c = 0.5;
};
struct Hermite {};
struct DualHahn {
  double gamma = 0.0;
  double delta = 0.0;
  int N = 0;
};

using PolyFamily = std::variant<MeixnerPollaczek, Laguerre, Meixner, Hermite, DualHahn>;

inline void validate(const PolyFamily& family) {
  struct V {
    void operator()(const MeixnerPollaczek& p) const {
      if (!(p.lambda > 0.0) || !(p.phi > 0.0 && p.phi < std::numbers::pi)) {
        throw std::invalid_argument("Meixner-Pollaczek: need lambda > 0 and phi in (0, pi)");
      }
    }
    void operator()(const Laguerre& p) const {
      if (!(p.a > -1.0)) {
        throw std::invalid_argument("Laguerre: need a > -1");
      }
    }
    void operator()(const Meixner& p) const {
      if (!(p.beta > 0.0) || !(p.c > 0.0 && p.c < 1.0)) {
        throw std::invalid_argument("Meixner: need beta > 0 and c in (0, 1)");
      }
    }
    void operator()(const Hermite&) const {}
    void operator()(const DualHahn& p) const {
      if (p.N < 0 || !(p.gamma > -1.0) || !(p.delta > -1.0)) {
        throw std::invalid_argument("dual Hahn: need N >= 0, gamma > -1, delta > -1");
      }
    }
  };
  std::visit(V{}, family);
}

namespace detail {

template <class Real>
Real ratio_product(Real a, std::size_t n) {
  // (a)_n / n!
  Real p(1);
  for (std::size_t i = 0; i < n; ++i) {
    p *= (a + Real(static_cast<long long>(i))) / Real(static_cast<long long>(i + 1));
  }
  return p;
}

}  // namespace detail

/// Classical polynomial in its hypergeometric normalization. For the dual Hahn
/// family the argument is the lattice variable x; lambda(x) is implied.
template <class Real = double>
Real eval_classical(const PolyFamily& family, std::size_t n, Real x) {
  validate(family);
  using C = complex_t<Real>;
  using std::cos;
  using std::sin;
  if (const auto* p = std::get_if<MeixnerPollaczek>(&family)) {
    const Real lam(p->lambda);
    const Real phi(p->phi);
    const C e_minus(cos(Real(-2) * phi), sin(Real(-2) * phi));
    const std::array<C, 2> num{C(-Real(static_cast<long long>(n))), C(lam, x)};
    const std::array<C, 1> den{C(Real(2) * lam)};
    const C f = hypergeometric_terminating<C>(num, den, C(Real(1)) - e_minus).value;
    const Real nphi = Real(static_cast<long long>(n)) * phi;
    const C phase(cos(nphi), sin(nphi));
    return detail::ratio_product(Real(2) * lam, n) * (phase * f).real();
  }
  if (const auto* p = std::get_if<Laguerre>(&family)) {
    const Real a1 = Real(p->a) + Real(1);
    const std::array<Real, 1> num{-Real(static_cast<long long>(n))};
    const std::array<Real, 1> den{a1};
    return detail::ratio_product(a1, n) * hypergeometric_terminating<Real>(num, den, x).value;
  }
  if (const auto* p = std::get_if<Meixner>(&family)) {
    const std::array<Real, 2> num{-Real(static_cast<long long>(n)), -x};
    const std::array<Real, 1> den{Real(p->beta)};
    return hypergeometric_terminating<Real>(num, den, Real(1) - Real(1) / Real(p->c)).value;
  }
  if (std::holds_alternative<Hermite>(family)) {
    if (x == Real(0)) {
      if (n % 2 == 1) {
        return Real(0);
      }
      // (-1)^{n/2} n! / (n/2)!
      Real v(1);
      for (std::size_t i = n / 2 + 1; i <= n; ++i) {
        v *= Real(static_cast<long long>(i));
      }
      return (n / 2) % 2 == 0 ? v : -v;
    }
    const Real nn(static_cast<long long>(n));
    const std::array<Real, 2> num{-nn / Real(2), -(nn - Real(1)) / Real(2)};
    const Real s = hypergeometric_terminating<Real>(num, std::span<const Real>{}, Real(-1) / (x * x)).value;
    Real pw(1);
    for (std::size_t i = 0; i < n; ++i) {
      pw *= Real(2) * x;
    }
    return pw * s;
  }
  const auto& p = std::get<DualHahn>(family);
  if (n > static_cast<std::size_t>(p.N)) {
    throw std::out_of_range("dual Hahn: degree " + std::to_string(n) + " exceeds N=" + std::to_string(p.N));
  }
  const Real g(p.gamma);
  const Real d(p.delta);
  const std::array<Real, 3> num{-Real(static_cast<long long>(n)), -x, x + g + d + Real(1)};
  const std::array<Real, 2> den{g + Real(1), -Real(p.N)};
  return hypergeometric_terminating<Real>(num, den, Real(1)).value;
}

}  // namespace hankel
