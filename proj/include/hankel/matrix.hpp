#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hankel {

/// Square dense matrix, row-major.
template <class Real = double>
class DenseMatrix {
public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, Real fill = Real(0)) : n_(n), data_(n * n, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = Real(1);
    }
    return m;
  }

  std::size_t size() const { return n_; }
  Real& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Real& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  template <class Other>
  DenseMatrix<Other> cast() const {
    DenseMatrix<Other> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        out(i, j) = Other((*this)(i, j));
      }
    }
    return out;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if ((*this)(i, j) != (*this)(j, i)) {
          return false;
        }
      }
    }
    return true;
  }

private:
  std::size_t n_ = 0;
  std::vector<Real> data_;
};

}  // namespace hankel
