#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace hankel {

/// Real number held as a sign and the natural log of its magnitude.
///
/// Gamma ratios such as Gamma(m+n+alpha) overflow a double near m+n = 170
/// while the matrix entries built from them stay modest, so every such
/// product is assembled here and materialized once. The log is kept in
/// long double: at |log| ~ 2000 a double log would only carry ~1e-13
/// relative precision in the value it encodes.
class LogDomainReal {
public:
  using log_type = long double;

  constexpr LogDomainReal() = default;

  static LogDomainReal from_log(int sign, log_type log_abs) {
    if (sign == 0 || log_abs == -std::numeric_limits<log_type>::infinity()) {
      return {};
    }
    LogDomainReal r;
    r.sign_ = sign > 0 ? 1 : -1;
    r.log_abs_ = log_abs;
    return r;
  }

  static LogDomainReal from_value(long double v) {
    if (v == 0.0L) {
      return {};
    }
    return from_log(v > 0 ? 1 : -1, std::log(std::fabs(v)));
  }

  static LogDomainReal one() { return from_log(1, 0.0L); }

  int sign() const { return sign_; }
  log_type log_abs() const { return log_abs_; }
  bool is_zero() const { return sign_ == 0; }

  template <class Real = double>
  Real value() const {
    if (sign_ == 0) {
      return Real(0);
    }
    return Real(static_cast<long double>(sign_) * std::exp(log_abs_));
  }

  LogDomainReal operator-() const {
    LogDomainReal r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  friend LogDomainReal operator*(const LogDomainReal& x, const LogDomainReal& y) {
    if (x.is_zero() || y.is_zero()) {
      return {};
    }
    return from_log(x.sign_ * y.sign_, x.log_abs_ + y.log_abs_);
  }

  friend LogDomainReal operator/(const LogDomainReal& x, const LogDomainReal& y) {
    if (y.is_zero()) {
      throw std::domain_error("LogDomainReal: division by zero");
    }
    if (x.is_zero()) {
      return {};
    }
    return from_log(x.sign_ * y.sign_, x.log_abs_ - y.log_abs_);
  }

  LogDomainReal& operator*=(const LogDomainReal& y) { return *this = *this * y; }
  LogDomainReal& operator/=(const LogDomainReal& y) { return *this = *this / y; }

  /// Product with a plain real factor.
  friend LogDomainReal operator*(const LogDomainReal& x, long double f) {
    return x * from_value(f);
  }

  LogDomainReal sqrt() const {
    if (sign_ < 0) {
      throw std::domain_error("LogDomainReal: sqrt of a negative value");
    }
    if (sign_ == 0) {
      return {};
    }
    return from_log(1, 0.5L * log_abs_);
  }

  /// Real power of a positive value (zero stays zero for p > 0).
  LogDomainReal pow(long double p) const {
    if (sign_ < 0) {
      throw std::domain_error("LogDomainReal: real power of a negative value");
    }
    if (sign_ == 0) {
      if (p > 0) {
        return {};
      }
      throw std::domain_error("LogDomainReal: non-positive power of zero");
    }
    return from_log(1, p * log_abs_);
  }

  friend std::ostream& operator<<(std::ostream& os, const LogDomainReal& x) {
    return os << (x.sign_ < 0 ? "-" : x.sign_ > 0 ? "+" : "0") << "exp(" << static_cast<double>(x.log_abs_)
              << ")";
  }

private:
  int sign_ = 0;
  log_type log_abs_ = -std::numeric_limits<log_type>::infinity();
};

/// (-1)^e as a LogDomainReal.
inline LogDomainReal parity_sign(long long e) {
  return LogDomainReal::from_log((e % 2 == 0) ? 1 : -1, 0.0L);
}

}  // namespace hankel
