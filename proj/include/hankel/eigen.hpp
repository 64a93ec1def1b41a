#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hankel/matrix.hpp"
#include "hankel/operators.hpp"

namespace hankel {

class eigen_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal d and
/// off-diagonal e (e[i] couples i and i+1; e may have length n or n-1).
/// Implicit QL with Wilkinson-type shifts.
template <class Real>
std::vector<Real> tridiagonal_eigenvalues(std::vector<Real> d, std::vector<Real> e) {
  using std::abs;
  using std::sqrt;
  const int n = static_cast<int>(d.size());
  e.resize(d.size(), Real(0));
  if (n > 0) {
    e[n - 1] = Real(0);
  }
  // QL converges reliably on graded matrices when the large entries sit at
  // the bottom; reverse the ordering otherwise.
  if (n > 1 && abs(d[0]) > abs(d[n - 1])) {
    std::reverse(d.begin(), d.end());
    std::reverse(e.begin(), e.end() - 1);
  }
  const Real eps = std::numeric_limits<Real>::epsilon();
  // Couplings below eps * ||T|| are negligible (backward stable deflation);
  // without this floor, blocks at rounding-noise level can stall.
  Real anorm(0);
  for (int i = 0; i < n; ++i) {
    anorm = std::max(anorm, abs(d[i]) + Real(2) * abs(e[i]));
  }
  const Real tiny = std::max(eps * anorm, std::numeric_limits<Real>::min());
  auto hyp = [](Real a, Real b) {
    using std::abs;
    using std::sqrt;
    a = abs(a);
    b = abs(b);
    if (a > b) {
      const Real r = b / a;
      return a * sqrt(Real(1) + r * r);
    }
    if (b == Real(0)) {
      return Real(0);
    }
    const Real r = a / b;
    return b * sqrt(Real(1) + r * r);
  };
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const Real dd = abs(d[m]) + abs(d[m + 1]);
        if (abs(e[m]) <= eps * dd || abs(e[m]) <= tiny) {
          break;
        }
      }
      if (m != l) {
        if (iter++ == 60) {
          throw eigen_error("tridiagonal eigensolver: no convergence within 60 iterations at index " +
                            std::to_string(l) + " (size " + std::to_string(n) + ")");
        }
        Real g = (d[l + 1] - d[l]) / (Real(2) * e[l]);
        Real r = hyp(g, Real(1));
        g = d[m] - d[l] + e[l] / (g + (g >= Real(0) ? abs(r) : -abs(r)));
        Real s(1), c(1), p(0);
        int i;
        bool underflow = false;
        for (i = m - 1; i >= l; --i) {
          const Real f = s * e[i];
          const Real b = c * e[i];
          r = hyp(f, g);
          e[i + 1] = r;
          if (r == Real(0)) {
            d[i + 1] -= p;
            e[m] = Real(0);
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + Real(2) * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) {
          continue;
        }
        d[l] -= p;
        e[l] = g;
        e[m] = Real(0);
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

/// Eigenvalues of the size x size truncation of J, ascending.
inline std::vector<double> sym_tridiag_eigen(const JacobiParams& J, std::size_t size) {
  if (size == 0) {
    throw std::invalid_argument("sym_tridiag_eigen: size must be positive");
  }
  std::vector<double> d(size), e(size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    d[i] = J.b(i);
    if (i + 1 < size) {
      e[i] = J.a(i);
    }
  }
  return tridiagonal_eigenvalues(std::move(d), std::move(e));
}

/// Householder reduction of a symmetric matrix to tridiagonal form; only the
/// lower triangle of M is read.
template <class Real>
void householder_tridiagonalize(DenseMatrix<Real> A, std::vector<Real>& d, std::vector<Real>& e) {
  using std::sqrt;
  const std::size_t n = A.size();
  d.assign(n, Real(0));
  e.assign(n, Real(0));
  std::vector<Real> v(n), p(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t lo = k + 1;
    using std::abs;
    d[k] = A(k, k);
    // Work with the column scaled by its largest entry so that squares of
    // tiny entries do not underflow.
    Real amax(0);
    for (std::size_t i = lo; i < n; ++i) {
      amax = std::max(amax, abs(A(i, k)));
    }
    if (amax == Real(0)) {
      e[k] = Real(0);
      continue;
    }
    Real norm2(0);
    for (std::size_t i = lo; i < n; ++i) {
      v[i] = A(i, k) / amax;
      norm2 += v[i] * v[i];
    }
    const Real x0 = v[lo];
    const Real alpha = x0 >= Real(0) ? -sqrt(norm2) : sqrt(norm2);
    v[lo] -= alpha;
    const Real vnorm2 = norm2 - x0 * x0 + v[lo] * v[lo];
    e[k] = alpha * amax;
    if (vnorm2 == Real(0)) {
      continue;
    }
    const Real beta = Real(2) / vnorm2;
    for (std::size_t i = lo; i < n; ++i) {
      p[i] = Real(0);
    }
    for (std::size_t i = lo; i < n; ++i) {
      Real acc(0);
      const Real vi = v[i];
      for (std::size_t j = lo; j < i; ++j) {
        const Real aij = A(i, j);
        acc += aij * v[j];
        p[j] += aij * vi;
      }
      p[i] += acc + A(i, i) * vi;
    }
    Real vp(0);
    for (std::size_t i = lo; i < n; ++i) {
      p[i] *= beta;
      vp += v[i] * p[i];
    }
    const Real K = beta * vp / Real(2);
    for (std::size_t i = lo; i < n; ++i) {
      w[i] = p[i] - K * v[i];
    }
    for (std::size_t i = lo; i < n; ++i) {
      const Real vi = v[i];
      const Real wi = w[i];
      for (std::size_t j = lo; j <= i; ++j) {
        A(i, j) -= vi * w[j] + wi * v[j];
      }
    }
  }
  if (n >= 2) {
    d[n - 2] = A(n - 2, n - 2);
    e[n - 2] = A(n - 1, n - 2);
  }
  if (n >= 1) {
    d[n - 1] = A(n - 1, n - 1);
  }
}

/// Ascending eigenvalues of a dense symmetric matrix.
template <class Real>
std::vector<Real> dense_sym_eigen(const DenseMatrix<Real>& M) {
  if (M.size() == 0) {
    return {};
  }
  std::vector<Real> d, e;
  householder_tridiagonalize(M, d, e);
  return tridiagonal_eigenvalues(std::move(d), std::move(e));
}

/// Determinant by LU with partial pivoting.
template <class Real>
Real determinant(DenseMatrix<Real> A) {
  using std::abs;
  const std::size_t n = A.size();
  Real det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (abs(A(i, k)) > abs(A(piv, k))) {
        piv = i;
      }
    }
    if (A(piv, k) == Real(0)) {
      return Real(0);
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(A(k, j), A(piv, j));
      }
      det = -det;
    }
    det *= A(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real f = A(i, k) / A(k, k);
      for (std::size_t j = k + 1; j < n; ++j) {
        A(i, j) -= f * A(k, j);
      }
    }
  }
  return det;
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss rule of the orthogonality measure of J. Nodes are the eigenvalues of
/// the n-point truncation; weights are the squared first components of the
/// normalized eigenvectors, evaluated as 1 / sum_k P_k(x_i)^2 from the
/// recurrence at each node, which keeps small weights relatively accurate.
inline GaussRule gauss_quadrature(const JacobiParams& J, std::size_t n_points) {
  if (n_points == 0) {
    throw std::invalid_argument("gauss_quadrature: need at least one point");
  }
  using LD = long double;
  std::vector<LD> d(n_points), e(n_points, 0.0L);
  bool symmetric = true;
  for (std::size_t i = 0; i < n_points; ++i) {
    d[i] = J.b(i);
    symmetric = symmetric && d[i] == 0.0L;
    if (i + 1 < n_points) {
      e[i] = J.a(i);
    }
  }
  std::vector<LD> x = tridiagonal_eigenvalues(d, e);
  if (symmetric) {
    // Zero diagonal: the rule is symmetric about 0; enforce it exactly.
    for (std::size_t i = 0; i < n_points / 2; ++i) {
      const LD s = (x[n_points - 1 - i] - x[i]) / 2;
      x[i] = -s;
      x[n_points - 1 - i] = s;
    }
    if (n_points % 2 == 1) {
      x[n_points / 2] = 0.0L;
    }
  }
  GaussRule rule;
  rule.nodes.resize(n_points);
  rule.weights.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    LD pm1 = 0.0L, p = 1.0L, sum = 1.0L;
    for (std::size_t k = 0; k + 1 < n_points; ++k) {
      const LD am1 = k > 0 ? static_cast<LD>(J.a(k - 1)) : 0.0L;
      const LD next = ((x[i] - d[k]) * p - am1 * pm1) / e[k];
      pm1 = p;
      p = next;
      sum += p * p;
    }
    rule.nodes[i] = static_cast<double>(x[i]);
    rule.weights[i] = static_cast<double>(1.0L / sum);
  }
  if (symmetric) {
    for (std::size_t i = 0; i < n_points / 2; ++i) {
      const double w = 0.5 * (rule.weights[i] + rule.weights[n_points - 1 - i]);
      rule.weights[i] = w;
      rule.weights[n_points - 1 - i] = w;
    }
  }
  return rule;
}

}  // namespace hankel
