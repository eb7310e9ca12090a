#pragma once

#include <vector>

#include "rational.hpp"

namespace matinv {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, Rational(0)) {}

  static RationalMatrix identity(int n) {
    RationalMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int n() const { return n_; }
  Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  RationalMatrix operator+(const RationalMatrix& o) const {
    RationalMatrix r(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }
  RationalMatrix operator-(const RationalMatrix& o) const {
    RationalMatrix r(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }
  RationalMatrix operator*(const RationalMatrix& o) const {
    RationalMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        const Rational& x = (*this)(i, k);
        if (x == 0) continue;
        for (int j = 0; j < n_; ++j) {
          if (o(k, j) == 0) continue;
          r(i, j) += x * o(k, j);
        }
      }
    return r;
  }
  RationalMatrix operator*(const Rational& c) const {
    RationalMatrix r(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
    return r;
  }
  RationalMatrix transposed() const {
    RationalMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Rational trace() const {
    Rational t(0);
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }
  RationalMatrix traceless_part() const {
    RationalMatrix r = *this;
    Rational shift = trace() / n_;
    for (int i = 0; i < n_; ++i) r(i, i) -= shift;
    return r;
  }

  int rank() const {
    RationalMatrix m = *this;
    int rank = 0;
    for (int col = 0; col < n_ && rank < n_; ++col) {
      int piv = -1;
      for (int i = rank; i < n_; ++i)
        if (m(i, col) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      for (int j = 0; j < n_; ++j) std::swap(m(rank, j), m(piv, j));
      for (int i = 0; i < n_; ++i) {
        if (i == rank || m(i, col) == 0) continue;
        Rational f = m(i, col) / m(rank, col);
        for (int j = 0; j < n_; ++j) m(i, j) -= f * m(rank, j);
      }
      ++rank;
    }
    return rank;
  }

  Rational det() const {
    RationalMatrix m = *this;
    Rational d(1);
    for (int col = 0; col < n_; ++col) {
      int piv = -1;
      for (int i = col; i < n_; ++i)
        if (m(i, col) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return Rational(0);
      if (piv != col) {
        for (int j = 0; j < n_; ++j) std::swap(m(col, j), m(piv, j));
        d = -d;
      }
      d *= m(col, col);
      for (int i = col + 1; i < n_; ++i) {
        if (m(i, col) == 0) continue;
        Rational f = m(i, col) / m(col, col);
        for (int j = col; j < n_; ++j) m(i, j) -= f * m(col, j);
      }
    }
    return d;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<Rational> a_;
};

}  // namespace matinv
