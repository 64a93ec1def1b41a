#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

namespace hankel {

struct H1 {
  double k = 0.5;
  double alpha = 1.0;
};
struct H2 {
  double lambda = 0.5;
};
struct H3 {};
struct H4 {
  int N = 0;
  double gamma = 0.0;
  double delta = 0.0;
};

enum class Block { full, even, odd };

struct FamilySpec {
  std::variant<H1, H2, H3, H4> family;
  Block block = Block::full;
};

inline FamilySpec h1(double k, double alpha) { return {H1{k, alpha}, Block::full}; }
inline FamilySpec h2(double lambda, Block block = Block::full) { return {H2{lambda}, block}; }
inline FamilySpec h3(Block block = Block::full) { return {H3{}, block}; }
inline FamilySpec h4(int N, double gamma, double delta) { return {H4{N, gamma, delta}, Block::full}; }

inline const char* block_name(Block b) {
  switch (b) {
    case Block::even:
      return "even";
    case Block::odd:
      return "odd";
    default:
      return "full";
  }
}

inline std::string family_name(const FamilySpec& spec) {
  static const char* names[] = {"h1", "h2", "h3", "h4"};
  return names[spec.family.index()];
}

/// Shortest decimal string that reads back to the same double.
inline std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string describe(const FamilySpec& spec) {
  std::ostringstream os;
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    os << "h1(k=" << shortest(p->k) << ", alpha=" << shortest(p->alpha) << ")";
  } else if (const auto* p = std::get_if<H2>(&spec.family)) {
    os << "h2(lambda=" << shortest(p->lambda) << ")";
  } else if (std::holds_alternative<H3>(spec.family)) {
    os << "h3";
  } else {
    const auto& q = std::get<H4>(spec.family);
    os << "h4(N=" << q.N << ", gamma=" << shortest(q.gamma) << ", delta=" << shortest(q.delta) << ")";
  }
  if (spec.block != Block::full) {
    os << "[" << block_name(spec.block) << "]";
  }
  return os.str();
}

inline void validate(const FamilySpec& spec) {
  auto fail = [&](const std::string& what) { throw std::invalid_argument(describe(spec) + ": " + what); };
  if (const auto* p = std::get_if<H1>(&spec.family)) {
    if (!(p->k > 0.0 && p->k < 1.0)) {
      fail("k must lie in (0, 1)");
    }
    if (!(p->alpha > 0.0) || !std::isfinite(p->alpha)) {
      fail("alpha must be positive");
    }
  } else if (const auto* p = std::get_if<H2>(&spec.family)) {
    if (!(p->lambda > 0.0) || !std::isfinite(p->lambda)) {
      fail("lambda must be positive");
    }
  } else if (const auto* p = std::get_if<H4>(&spec.family)) {
    if (p->N < 0) {
      fail("N must be non-negative");
    }
    if (!(p->gamma > -1.0) || !(p->delta > -1.0)) {
      fail("gamma and delta must exceed -1");
    }
  }
  const bool checkerboard = std::holds_alternative<H2>(spec.family) || std::holds_alternative<H3>(spec.family);
  if (spec.block != Block::full && !checkerboard) {
    fail("even/odd blocks exist only for h2 and h3");
  }
}

/// Finite dimension of the operator, if any.
inline std::optional<std::size_t> dimension(const FamilySpec& spec) {
  if (const auto* p = std::get_if<H4>(&spec.family)) {
    return static_cast<std::size_t>(p->N) + 1;
  }
  return std::nullopt;
}

inline void require_full(const FamilySpec& spec, const char* op) {
  if (spec.block != Block::full) {
    throw std::invalid_argument(describe(spec) + ": " + op + " requires block=full");
  }
}

/// Map a block index to the index of the full matrix.
inline std::size_t full_index(Block b, std::size_t n) {
  switch (b) {
    case Block::even:
      return 2 * n;
    case Block::odd:
      return 2 * n + 1;
    default:
      return n;
  }
}

enum class H1Regime { unbounded, laguerre, point };

struct H1RegimeInfo {
  H1Regime regime = H1Regime::laguerre;
  bool snapped = false;  // k was within 1e-12 of 1/2 and treated as 1/2
};

inline H1RegimeInfo h1_regime(const H1& p) {
  if (p.k == 0.5) {
    return {H1Regime::laguerre, false};
  }
  if (std::fabs(p.k - 0.5) <= 1e-12) {
    return {H1Regime::laguerre, true};
  }
  return {p.k > 0.5 ? H1Regime::unbounded : H1Regime::point, false};
}

/// Constants of the point-spectrum regime k < 1/2, in cancellation-free form:
/// s = sqrt(1-4k^2), c = 4k^2/(1+s)^2, A = 1+c = 2/(1+s).
struct PointRegimeConstants {
  double s;
  double c;
  double A;
};

inline PointRegimeConstants point_regime_constants(double k) {
  const double s = std::sqrt((1.0 - 2.0 * k) * (1.0 + 2.0 * k));
  const double c = 4.0 * k * k / ((1.0 + s) * (1.0 + s));
  return {s, c, 2.0 / (1.0 + s)};
}

}  // namespace hankel
