#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hankel/eigen.hpp"

namespace hankel {

/// Raised when a numerical procedure cannot establish its own accuracy
/// (tail not decaying, truncation radius not found, ...).
class inconclusive_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double tail_bound = 0.0;
  double lower = 0.0;  // truncated integration range
  double upper = 0.0;
};

/// Adaptive Gauss-Kronrod (61 points) on a finite interval.
template <class F>
double integrate_gk(F&& f, double a, double b, double rel_tol, double* error = nullptr) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, rel_tol, &err);
  if (error) {
    *error = err;
  }
  return v;
}

/// First radius r >= r_min (from origin along direction) beyond which
/// log_abs_f stays below log_threshold on a probe of the next doubling.
template <class LogF>
double decay_radius(LogF&& log_abs_f, double origin, int direction, double log_threshold, double r_min, double r_max) {
  double r = std::max(r_min, 1e-3);
  while (r <= r_max) {
    bool below = true;
    for (double t : {1.0, 1.125, 1.25, 1.5, 1.75, 2.0}) {
      const double v = log_abs_f(origin + direction * r * t);
      if (!(v < log_threshold)) {
        below = false;
        break;
      }
    }
    if (below) {
      return r;
    }
    r *= 1.25;
  }
  throw inconclusive_error("integrand envelope did not fall below the truncation threshold by radius " +
                           std::to_string(r_max));
}

/// Integral of f over [a, b] as a sum of GK panels of width <= panel.
template <class F>
IntegralResult integrate_panels(F&& f, double a, double b, double panel, double rel_tol) {
  IntegralResult out;
  out.lower = a;
  out.upper = b;
  if (!(b > a)) {
    return out;
  }
  const std::size_t count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / panel)));
  const double width = (b - a) / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == count) ? b : lo + width;
    double err = 0.0;
    out.value += integrate_gk(f, lo, hi, rel_tol, &err);
    out.error_estimate += err;
  }
  return out;
}

/// Integral of f over the whole line (or a half line) with truncation where the
/// log-envelope drops 5 nats below log(tol * scale). log_abs_f bounds log|f|.
template <class F, class LogF>
IntegralResult integrate_line(F&& f, LogF&& log_abs_f, double lower, double upper, double scale, double tol,
                              double panel = 1.0, double r_max = 1e4) {
  const double threshold = std::log(tol * scale) - 5.0;
  double lo = lower;
  double hi = upper;
  const double origin = std::isfinite(lower) && !std::isfinite(upper) ? lower
                        : std::isfinite(upper) && !std::isfinite(lower) ? upper
                                                                        : 0.0;
  double tail = 0.0;
  // Tail mass of a log-concave-like envelope beyond r is bounded crudely by
  // envelope(r) times the local decay length; a unit length is used.
  if (!std::isfinite(upper)) {
    const double r = decay_radius(log_abs_f, origin, +1, threshold, panel, r_max);
    hi = origin + 2.0 * r;
    tail += std::exp(log_abs_f(hi)) * std::max(1.0, r);
  }
  if (!std::isfinite(lower)) {
    const double r = decay_radius(log_abs_f, origin, -1, threshold, panel, r_max);
    lo = origin - 2.0 * r;
    tail += std::exp(log_abs_f(lo)) * std::max(1.0, r);
  }
  // Per-panel tolerance near machine precision is unreachable and only drives
  // the recursion to full depth.
  IntegralResult out = integrate_panels(f, lo, hi, panel, std::max(tol, 1e-13));
  out.tail_bound = tail;
  return out;
}

/// Nodes and weights of a composite Gauss-Legendre rule; weights already
/// include the measure density.
struct WeightedGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

template <class Visit>
void gauss_legendre_panels(double a, double b, double panel, Visit&& visit) {
  using rule = boost::math::quadrature::gauss<double, 30>;
  const auto& xs = rule::abscissa();
  const auto& ws = rule::weights();
  const std::size_t count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / panel)));
  const double width = (b - a) / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double mid = a + width * (static_cast<double>(i) + 0.5);
    const double half = width / 2;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (xs[j] == 0.0) {
        visit(mid, half * ws[j]);
      } else {
        visit(mid - half * xs[j], half * ws[j]);
        visit(mid + half * xs[j], half * ws[j]);
      }
    }
  }
}

}  // namespace detail

/// Gauss rule for the weight t^(power - 1) on [0, 1] (shifted Jacobi).
inline GaussRule gauss_jacobi_unit(double power, std::size_t n_points) {
  // Jacobi weight (1 - y)^0 (1 + y)^beta on [-1, 1] with beta = power - 1.
  const double beta = power - 1.0;
  JacobiParams J;
  J.diag = [beta](std::size_t n) {
    const double s = 2.0 * static_cast<double>(n) + beta;
    return n == 0 ? beta / (beta + 2.0) : beta * beta / (s * (s + 2.0));
  };
  J.offdiag = [beta](std::size_t n) {
    const double m = static_cast<double>(n) + 1.0;
    const double s = 2.0 * m + beta;
    return std::sqrt(4.0 * m * m * (m + beta) * (m + beta) / ((s - 1.0) * s * s * (s + 1.0)));
  };
  GaussRule rule = gauss_quadrature(J, n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    rule.nodes[i] = 0.5 * (rule.nodes[i] + 1.0);
    rule.weights[i] /= power;  // total mass of t^(power-1) on [0, 1]
  }
  return rule;
}

/// Composite Gauss-Legendre grid for a density on [a, b]. If power > 0 the
/// density is (x - a)^(power - 1) cofactor(x) and the piece [a, a + 1] uses a
/// Gauss-Jacobi rule for the endpoint factor, so only the smooth cofactor is
/// sampled there.
inline WeightedGrid make_grid(const std::function<double(double)>& density, double a, double b, double panel,
                              double power = 0.0, const std::function<double(double)>& cofactor = nullptr) {
  WeightedGrid g;
  double start = a;
  if (power > 0.0 && cofactor) {
    const double end = std::min(b, a + 1.0);
    const double len = end - a;
    const GaussRule rule = gauss_jacobi_unit(power, 80);
    const double scale = std::pow(len, power);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = a + len * rule.nodes[i];
      g.nodes.push_back(x);
      g.weights.push_back(scale * rule.weights[i] * cofactor(x));
    }
    start = end;
  }
  if (b > start) {
    detail::gauss_legendre_panels(start, b, panel, [&](double x, double w) {
      g.nodes.push_back(x);
      g.weights.push_back(w * density(x));
    });
  }
  return g;
}

}  // namespace hankel
