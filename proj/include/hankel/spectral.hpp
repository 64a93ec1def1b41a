#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hankel/eigen.hpp"
#include "hankel/family.hpp"
#include "hankel/operators.hpp"
#include "hankel/orthonormal.hpp"
#include "hankel/quadrature.hpp"
#include "hankel/special_fn.hpp"

namespace hankel {

struct AbsolutelyContinuous {
  std::function<double(double)> density;
  std::function<double(double)> log_density;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  double scale = 1.0;  // length scale on which the density varies
  // density = (x - lower)^(power - 1) * cofactor(x) with a smooth cofactor;
  // unused when power == 0.
  double endpoint_power = 0.0;
  std::function<double(double)> cofactor;
};

struct Discrete {
  std::function<double(std::size_t)> location;
  std::function<double(std::size_t)> log_mass;
  std::optional<std::size_t> count;  // finite number of atoms, or infinitely many

  double mass(std::size_t j) const { return std::exp(log_mass(j)); }
};

using Measure = std::variant<AbsolutelyContinuous, Discrete>;

struct SpectralRep {
  FamilySpec spec;
  Measure measure;
  std::function<double(double)> multiplier;      // h at a point of the support
  std::function<double(double)> log_multiplier;  // log h
  double h_inf = 0.0;
  double h_sup = std::numeric_limits<double>::infinity();
  std::vector<std::string> warnings;

  std::vector<double> polys(double x, std::size_t n_max) const { return eval_orthonormal_sequence(spec, x, n_max); }
  bool discrete() const { return std::holds_alternative<Discrete>(measure); }
};

namespace detail {

inline double log_gamma_abs_sq(double a, double y) { return static_cast<double>(2.0L * ln_gamma_abs(a, y)); }

// Even/odd blocks use the same measure restricted to (0, inf); the block
// polynomials carry the factor sqrt(2).
inline void restrict_to_half_line(AbsolutelyContinuous& ac) { ac.lower = 0.0; }

}  // namespace detail

/// The measure, multiplier and orthonormal basis diagonalizing the family.
inline SpectralRep spectral_rep(const FamilySpec& spec) {
  validate(spec);
  SpectralRep rep;
  rep.spec = spec;
  constexpr double pi = std::numbers::pi;
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    const double k = p->k;
    const double alpha = p->alpha;
    const auto info = h1_regime(*p);
    if (info.snapped) {
      rep.warnings.push_back("k within 1e-12 of 1/2; treated as k = 1/2");
    }
    if (info.regime == H1Regime::unbounded) {
      const double q = 4.0 * k * k - 1.0;
      const double t = 1.0 / std::sqrt(q);
      const double phi = std::acos(1.0 / (2.0 * k));
      const double asn = std::asin(1.0 / (2.0 * k));
      const double log_c = 0.5 * (alpha - 1.0) * std::log(q) - std::log(2.0 * pi) - alpha * std::log(k) - ln_gamma(alpha);
      AbsolutelyContinuous ac;
      ac.log_density = [=](double x) { return log_c - 2.0 * x * t * asn + detail::log_gamma_abs_sq(alpha / 2.0, x * t); };
      ac.density = [f = ac.log_density](double x) { return std::exp(f(x)); };
      ac.scale = std::min(1.0, std::sqrt(q));
      rep.measure = ac;
      rep.log_multiplier = [=](double x) { return -alpha * std::log(k) + 2.0 * x * t * phi; };
      rep.h_inf = 0.0;
      rep.h_sup = std::numeric_limits<double>::infinity();
    } else if (info.regime == H1Regime::laguerre) {
      const double log_c = alpha * std::log(2.0) - ln_gamma(alpha);
      AbsolutelyContinuous ac;
      ac.lower = 0.0;
      ac.log_density = [=](double x) { return log_c + (alpha - 1.0) * std::log(x) - 2.0 * x; };
      ac.density = [f = ac.log_density](double x) { return x > 0.0 ? std::exp(f(x)) : 0.0; };
      ac.scale = 0.5;
      if (alpha != 1.0) {
        ac.endpoint_power = alpha;
        ac.cofactor = [=](double x) { return std::exp(log_c - 2.0 * x); };
      }
      rep.measure = ac;
      rep.log_multiplier = [=](double x) { return alpha * std::log(2.0) - 2.0 * x; };
      rep.h_inf = 0.0;
      rep.h_sup = std::pow(2.0, alpha);
    } else {
      const auto pc = point_regime_constants(k);
      Discrete dm;
      const double s = pc.s;
      const double log_1mc = std::log(2.0 * s / (1.0 + s));
      const double log_c = std::log(pc.c);
      dm.location = [s](std::size_t j) { return static_cast<double>(j) * s; };
      dm.log_mass = [=](std::size_t j) {
        return alpha * log_1mc + static_cast<double>((pochhammer(alpha, j) / factorial(j)).log_abs()) +
               static_cast<double>(j) * log_c;
      };
      rep.measure = dm;
      const double log_top = alpha * std::log(pc.A);
      rep.log_multiplier = [=](double x) { return log_top + (x / s) * log_c; };
      rep.h_inf = 0.0;
      rep.h_sup = std::exp(log_top);
    }
  } else if (const auto* p = std::get_if<H2>(&spec.family)) {
    const double lam = p->lambda;
    const double log_h0 = (2.0 * lam - 1.0) * std::log(2.0) - ln_gamma(2.0 * lam);
    AbsolutelyContinuous ac;
    ac.log_density = [=](double x) { return log_h0 - std::log(pi) + detail::log_gamma_abs_sq(lam, x); };
    ac.density = [f = ac.log_density](double x) { return std::exp(f(x)); };
    ac.scale = 1.0;
    if (spec.block != Block::full) {
      detail::restrict_to_half_line(ac);
    }
    rep.measure = ac;
    rep.log_multiplier = [=](double x) { return log_h0 + detail::log_gamma_abs_sq(lam, x); };
    rep.h_inf = 0.0;
    rep.h_sup = std::exp(0.5 * std::log(pi) + ln_gamma(lam) - ln_gamma(lam + 0.5));
  } else if (std::holds_alternative<H3>(spec.family)) {
    AbsolutelyContinuous ac;
    ac.log_density = [=](double x) { return -0.5 * std::log(pi) - x * x; };
    ac.density = [](double x) { return std::exp(-x * x) / std::sqrt(pi); };
    ac.scale = 1.0;
    if (spec.block != Block::full) {
      detail::restrict_to_half_line(ac);
    }
    rep.measure = ac;
    rep.log_multiplier = [](double x) { return 0.5 * std::log(2.0 * pi) - x * x; };
    rep.h_inf = 0.0;
    rep.h_sup = std::sqrt(2.0 * pi);
  } else {
    const H4 p = std::get<H4>(spec.family);
    const std::size_t N = static_cast<std::size_t>(p.N);
    const double s = p.gamma + p.delta + 1.0;
    Discrete dm;
    dm.count = N + 1;
    dm.location = [](std::size_t x) { return static_cast<double>(x); };
    dm.log_mass = [=](std::size_t x) {
      // (2x+s)/(x+s) is 1 at x = 0 for every s (removes 0/0 at s = 0).
      const double ratio = x == 0 ? 1.0 : (2.0 * static_cast<double>(x) + s) / (static_cast<double>(x) + s);
      const LogDomainReal m = pochhammer(1.0 + p.delta, N) * factorial(N) * pochhammer(1.0 + p.gamma, x) /
                              (pochhammer(1.0 + p.delta, x) * factorial(N - x) * factorial(x) *
                               pochhammer(static_cast<double>(x) + s + 1.0, N));
      return static_cast<double>(m.log_abs()) + std::log(ratio);
    };
    rep.measure = dm;
    rep.log_multiplier = [=](double x) {
      const double xr = std::round(x);
      if (xr < 0 || xr > static_cast<double>(N) || std::fabs(x - xr) > 1e-9) {
        throw std::domain_error(describe(spec) + ": multiplier defined on {0..N} only");
      }
      return static_cast<double>(binomial_general_log(2.0 * static_cast<double>(N) + s, N - static_cast<std::size_t>(xr)).log_abs());
    };
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t x = 0; x <= N; ++x) {
      const double v = std::exp(rep.log_multiplier(static_cast<double>(x)));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    rep.h_inf = lo;
    rep.h_sup = hi;
  }
  rep.multiplier = [f = rep.log_multiplier](double x) { return std::exp(f(x)); };
  return rep;
}

/// Sample grid (weights include the density) resolving integrands whose
/// log grows at most like extra_log(x) on top of the density.
inline WeightedGrid measure_grid(const AbsolutelyContinuous& ac, double tol,
                                 const std::function<double(double)>& extra_log = nullptr) {
  auto envelope = [&](double x) {
    const double base = ac.log_density(x);
    return extra_log ? base + extra_log(x) : base;
  };
  const double threshold = std::log(tol) - 5.0;
  double lo = ac.lower, hi = ac.upper;
  const double origin = std::isfinite(ac.lower) ? ac.lower : 0.0;
  if (!std::isfinite(hi)) {
    hi = origin + decay_radius(envelope, origin, +1, threshold, ac.scale, 1e5);
  }
  if (!std::isfinite(lo)) {
    lo = origin - decay_radius(envelope, origin, -1, threshold, ac.scale, 1e5);
  }
  const double panel = 0.5 * ac.scale;
  if (ac.endpoint_power > 0.0) {
    return make_grid(ac.density, lo, hi, panel, ac.endpoint_power, ac.cofactor);
  }
  return make_grid(ac.density, lo, hi, panel);
}

/// Total mass of the measure.
inline double total_mass(const SpectralRep& rep, double tol = 1e-14) {
  if (const auto* ac = std::get_if<AbsolutelyContinuous>(&rep.measure)) {
    const WeightedGrid g = measure_grid(*ac, tol);
    long double s = 0.0L;
    for (double w : g.weights) {
      s += w;
    }
    return static_cast<double>(s);
  }
  const auto& dm = std::get<Discrete>(rep.measure);
  long double s = 0.0L;
  for (std::size_t j = 0;; ++j) {
    if (dm.count && j >= *dm.count) {
      break;
    }
    const double m = dm.mass(j);
    s += m;
    if (!dm.count && j > 20 && m < 1e-18 * static_cast<double>(s)) {
      break;
    }
    if (j > 10'000'000) {
      throw inconclusive_error("total_mass: atom masses not decaying");
    }
  }
  return static_cast<double>(s);
}

enum class OrthonormalityMethod { measure, gauss };

/// max_{m,n <= n_max} |<P_m, P_n>_mu - delta_{mn}|.
inline double orthonormality_check(const FamilySpec& spec, std::size_t n_max,
                                   OrthonormalityMethod method = OrthonormalityMethod::measure) {
  const SpectralRep rep = spectral_rep(spec);
  const std::size_t n = n_max + 1;
  std::vector<long double> gram(n * n, 0.0L);
  auto add = [&](double x, double w) {
    const std::vector<double> p = eval_orthonormal_sequence(spec, x, n_max);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        gram[i * n + j] += static_cast<long double>(w) * p[i] * p[j];
      }
    }
  };
  // Gauss nodes for h4 live in the lambda(x) variable; its measure is finite anyway.
  if (method == OrthonormalityMethod::gauss && !std::holds_alternative<H4>(spec.family)) {
    FamilySpec full = spec;
    full.block = Block::full;
    std::size_t points = std::max<std::size_t>(64, full_index(spec.block, n_max) + 2);
    if (auto dim = dimension(spec)) {
      points = *dim;
    }
    const GaussRule rule = gauss_quadrature(spectral_jacobi(full), points);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = rule.nodes[i];
      if (spec.block != Block::full) {
        // Folded measure: the half-line integral equals the full-line one.
        if (x < 0.0) {
          continue;
        }
        add(x, x == 0.0 ? rule.weights[i] / 2.0 : rule.weights[i]);
      } else {
        add(x, rule.weights[i]);
      }
    }
  } else if (const auto* ac = std::get_if<AbsolutelyContinuous>(&rep.measure)) {
    const double deg = static_cast<double>(2 * full_index(spec.block, n_max));
    const WeightedGrid g = measure_grid(*ac, 1e-16, [deg](double x) { return deg * std::log1p(std::fabs(x)) + 5.0; });
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      add(g.nodes[i], g.weights[i]);
    }
  } else {
    const auto& dm = std::get<Discrete>(rep.measure);
    long double total = 0.0L;
    for (std::size_t j = 0;; ++j) {
      if (dm.count && j >= *dm.count) {
        break;
      }
      const double m = dm.mass(j);
      add(dm.location(j), m);
      total += m;
      if (!dm.count && j > 50 + 4 * n_max) {
        // Stop once the remaining atoms cannot matter at double precision.
        const double x = dm.location(j);
        const std::vector<double> p = eval_orthonormal_sequence(spec, x, n_max);
        double mx = 0.0;
        for (double v : p) {
          mx = std::max(mx, v * v);
        }
        if (m * mx < 1e-20) {
          break;
        }
      }
      if (j > 10'000'000) {
        throw inconclusive_error("orthonormality_check: atom contributions not decaying");
      }
    }
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      dev = std::max(dev, static_cast<double>(std::fabs(gram[i * n + j] - target)));
    }
  }
  return dev;
}

struct FunctionalResidual {
  double residual = 0.0;    // |sum - h P_m| / max(|h P_m|, 1)
  double tail_bound = 0.0;  // estimated |omitted tail| in the same units
  double lhs = 0.0;
  double rhs = 0.0;
  std::size_t terms = 0;
};

/// Row sums sum_{n <= trunc} H_{m,n} P_n(x) against h(x) P_m(x) for all m <= m_max
/// at one point x, sharing the weight/symbol tables and the polynomial sequence.
inline std::vector<FunctionalResidual> functional_equation_rows(const FamilySpec& spec, std::size_t m_max, double x,
                                                                std::size_t trunc) {
  const SpectralRep rep = spectral_rep(spec);
  if (auto dim = dimension(spec)) {
    trunc = std::min(trunc, *dim - 1);
    if (m_max > *dim - 1) {
      throw std::out_of_range(describe(spec) + ": row index exceeds N");
    }
  }
  if (trunc < m_max) {
    throw std::invalid_argument("functional_equation: truncation below the row index");
  }
  const std::vector<double> p = eval_orthonormal_sequence(spec, x, trunc);
  std::vector<LogDomainReal> w(trunc + 1);
  for (std::size_t n = 0; n <= trunc; ++n) {
    w[n] = weights(spec, n);
  }
  std::vector<LogDomainReal> hs(trunc + m_max + 1);
  for (std::size_t l = 0; l < hs.size(); ++l) {
    hs[l] = hankel_symbol(spec, l);
  }
  const double h = rep.multiplier(x);
  const bool finite = dimension(spec).has_value();
  std::vector<FunctionalResidual> out(m_max + 1);
  constexpr int blocks = 4;
  for (std::size_t m = 0; m <= m_max; ++m) {
    long double sum = 0.0L;
    // Maxima of |term| over the dyadic blocks (T/2^(i+1), T/2^i].
    std::array<double, blocks> mx{};
    for (std::size_t n = 0; n <= trunc; ++n) {
      const long double t = (w[m] * w[n] * hs[m + n]).value<long double>() * p[n];
      sum += t;
      const double at = static_cast<double>(std::fabs(t));
      for (int i = 0; i < blocks; ++i) {
        if (n > (trunc >> (i + 1)) && n <= (trunc >> i)) {
          mx[i] = std::max(mx[i], at);
          break;
        }
      }
    }
    FunctionalResidual& r = out[m];
    r.terms = trunc + 1;
    r.lhs = static_cast<double>(sum);
    r.rhs = h * p[m];
    const double denom = std::max(std::fabs(r.rhs), 1.0);
    r.residual = static_cast<double>(std::fabs(sum - static_cast<long double>(r.rhs))) / denom;
    if (finite || mx[0] == 0.0) {
      r.tail_bound = 0.0;
      continue;
    }
    // Power-law envelope: least-squares slope of the block maxima (robust to
    // terms oscillating in log n) over the blocks above T/16 only, so a peak
    // at small n does not dominate a geometrically decaying tail. A block
    // maximum sits at the block start, hence the extra factor 2^-pw; the
    // factor 2 in the bound absorbs slope misfit from the oscillation.
    auto slope = [&](int count) {
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      int used = 0;
      for (int i = 0; i < count; ++i) {
        if (mx[i] > 0.0) {
          const double xi = i, yi = std::log2(mx[i]);
          sx += xi;
          sy += yi;
          sxx += xi * xi;
          sxy += xi * yi;
          ++used;
        }
      }
      return used >= 2 ? (used * sxy - sx * sy) / (used * sxx - sx * sx) : std::numeric_limits<double>::infinity();
    };
    const double pw = slope(blocks);
    const double T = static_cast<double>(trunc);
    double env = 0.0;
    for (int i = 0; i < blocks; ++i) {
      env = std::max(env, mx[i] * std::exp2(-pw * (i + 1)));
    }
    if (env * T < 1e-17 * denom) {
      r.tail_bound = env * T / denom;
      continue;
    }
    if (!(pw > 1.05)) {
      throw inconclusive_error(describe(spec) + ": functional equation terms not decaying at x=" + std::to_string(x) +
                               " (trunc " + std::to_string(trunc) + ")");
    }
    r.tail_bound = std::isfinite(pw) ? 2.0 * env * T / (pw - 1.0) / denom : 0.0;
  }
  return out;
}

inline FunctionalResidual functional_equation_residual(const FamilySpec& spec, std::size_t m, double x,
                                                       std::size_t trunc) {
  return functional_equation_rows(spec, m, x, trunc)[m];
}

enum class ProperStatus { finite, divergent, inconclusive };

inline const char* status_name(ProperStatus s) {
  switch (s) {
    case ProperStatus::finite:
      return "finite";
    case ProperStatus::divergent:
      return "divergent";
    default:
      return "inconclusive";
  }
}

struct ProperResult {
  ProperStatus status = ProperStatus::inconclusive;
  double value = std::numeric_limits<double>::quiet_NaN();
  double tail_bound = 0.0;
  double frontier = 0.0;  // furthest point sampled
  std::string note;
};

/// int e^{eps|x|} (|h(x)| + 1)^2 dmu(x).
inline ProperResult properness_integral(const FamilySpec& spec, double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("properness_integral: epsilon must be positive");
  }
  const SpectralRep rep = spectral_rep(spec);
  auto log_h1 = [&](double x) {
    const double lh = rep.log_multiplier(x);
    return 2.0 * (lh > 0.0 ? lh + std::log1p(std::exp(-lh)) : std::log1p(std::exp(lh)));
  };
  ProperResult out;
  constexpr double r_max = 1e4;
  if (const auto* ac = std::get_if<AbsolutelyContinuous>(&rep.measure)) {
    auto logf = [&](double x) { return eps * std::fabs(x) + log_h1(x) + ac->log_density(x); };
    auto f = [&](double x) { return std::exp(logf(x)); };
    // Classify each open end by the slope of log f on a geometric frontier.
    double lo = ac->lower, hi = ac->upper;
    const double origin = std::isfinite(ac->lower) ? ac->lower : 0.0;
    const double threshold = std::log(1e-15) - 5.0;
    for (int dir : {+1, -1}) {
      if ((dir > 0 && std::isfinite(ac->upper)) || (dir < 0 && std::isfinite(ac->lower))) {
        continue;
      }
      double r = 1.0;
      double prev = logf(origin + dir * r);
      int rising = 0;
      bool decided = false;
      while (r < r_max) {
        const double next_r = r * 1.5;
        const double cur = logf(origin + dir * next_r);
        out.frontier = std::max(out.frontier, next_r);
        if (cur < threshold) {
          try {
            const double R = decay_radius(logf, origin, dir, threshold, r, r_max);
            (dir > 0 ? hi : lo) = origin + dir * 2.0 * R;
            out.tail_bound += std::exp(logf(origin + dir * 2.0 * R)) * R;
            decided = true;
          } catch (const inconclusive_error&) {
          }
          break;
        }
        rising = (cur > prev + 1e-9 * std::fabs(prev)) ? rising + 1 : 0;
        if (rising >= 6 && next_r > 50.0) {
          out.status = ProperStatus::divergent;
          out.note = "log-integrand grows linearly at the frontier";
          return out;
        }
        prev = cur;
        r = next_r;
      }
      if (!decided) {
        out.status = ProperStatus::inconclusive;
        out.note = "neither decay nor growth established by |x| = " + std::to_string(r_max);
        return out;
      }
    }
    double err = 0.0;
    double value = 0.0;
    if (ac->endpoint_power > 0.0) {
      // Gauss-Jacobi for the endpoint factor on [a, a + 1], panels beyond.
      const double a = ac->lower;
      const double split = std::min(hi, a + 1.0);
      const WeightedGrid g = make_grid(ac->density, a, split, 1.0, ac->endpoint_power, ac->cofactor);
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double x = g.nodes[i];
        value += g.weights[i] * std::exp(eps * std::fabs(x) + log_h1(x));
      }
      const IntegralResult rest = integrate_panels(f, split, hi, 4.0 * ac->scale, 1e-13);
      value += rest.value;
      err += rest.error_estimate;
    } else {
      const IntegralResult res = integrate_panels(f, lo, hi, 4.0 * ac->scale, 1e-13);
      value = res.value;
      err = res.error_estimate;
    }
    out.status = ProperStatus::finite;
    out.value = value;
    out.tail_bound += err;
    return out;
  }
  const auto& dm = std::get<Discrete>(rep.measure);
  auto logt = [&](std::size_t j) {
    const double x = dm.location(j);
    return eps * std::fabs(x) + log_h1(x) + dm.log_mass(j);
  };
  long double sum = 0.0L;
  if (dm.count) {
    for (std::size_t j = 0; j < *dm.count; ++j) {
      sum += std::exp(static_cast<long double>(logt(j)));
    }
    out.status = ProperStatus::finite;
    out.value = static_cast<double>(sum);
    return out;
  }
  double prev = logt(0);
  sum += std::exp(static_cast<long double>(prev));
  int rising = 0;
  for (std::size_t j = 1; j < 1'000'000; ++j) {
    const double cur = logt(j);
    sum += std::exp(static_cast<long double>(cur));
    out.frontier = dm.location(j);
    rising = cur > prev ? rising + 1 : 0;
    if (rising >= 200) {
      out.status = ProperStatus::divergent;
      out.note = "atom contributions increase geometrically";
      return out;
    }
    const double ratio = std::exp(cur - prev);
    if (j > 20 && ratio < 1.0 && std::exp(cur) * ratio / (1.0 - ratio) < 1e-17 * static_cast<double>(sum)) {
      out.status = ProperStatus::finite;
      out.value = static_cast<double>(sum);
      out.tail_bound = std::exp(cur) * ratio / (1.0 - ratio);
      return out;
    }
    prev = cur;
  }
  out.status = ProperStatus::inconclusive;
  out.note = "atom contributions neither summable nor growing within 1e6 atoms";
  return out;
}

struct SpectrumReport {
  FamilySpec spec;
  bool strip_signs = false;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<double>> eigenvalues;  // ascending, one list per size
  std::vector<double> lambda_max;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool enclosure_ok = true;
  bool lambda_max_monotone = true;
};

/// Eigenvalues of the leading truncation in the best precision available.
inline std::vector<double> truncation_eigenvalues(const FamilySpec& spec, std::size_t size, bool strip_signs = false) {
  MaterializeOptions opts;
  opts.strip_signs = strip_signs;
  std::vector<double> out;
  if (std::holds_alternative<H4>(spec.family)) {
    // The dual Hahn entries span many orders of magnitude; float128 keeps
    // the small eigenvalues accurate.
    for (const quad& v : dense_sym_eigen(materialize<quad>(spec, size, opts))) {
      out.push_back(static_cast<double>(v));
    }
  } else {
    out = dense_sym_eigen(materialize<double>(spec, size, opts));
  }
  return out;
}

/// Spectra of nested truncations with enclosure and interlacing diagnostics.
inline SpectrumReport truncated_spectrum_report(const FamilySpec& spec, const std::vector<std::size_t>& sizes,
                                                bool strip_signs = false) {
  const SpectralRep rep = spectral_rep(spec);
  SpectrumReport r;
  r.spec = spec;
  r.strip_signs = strip_signs;
  r.sizes = sizes;
  constexpr double slack = 1e-9;
  r.lower_bound = std::min(0.0, rep.h_inf) - slack;
  r.upper_bound = rep.h_sup + slack;
  double prev_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    std::vector<double> ev = truncation_eigenvalues(spec, sizes[i], strip_signs);
    for (double v : ev) {
      if (v < r.lower_bound || v > r.upper_bound) {
        r.enclosure_ok = false;
      }
    }
    const double mx = ev.empty() ? 0.0 : ev.back();
    // Interlacing makes lambda_max nondecreasing; allow rounding at the 1e-12 level.
    if (i > 0 && sizes[i] >= sizes[i - 1] && mx < prev_max - 1e-12 * std::fabs(prev_max)) {
      r.lambda_max_monotone = false;
    }
    prev_max = mx;
    r.lambda_max.push_back(mx);
    r.eigenvalues.push_back(std::move(ev));
  }
  return r;
}

}  // namespace hankel
