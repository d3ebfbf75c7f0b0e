#pragma once

// Small dense matrices over exact rings (Integer, LaurentPoly).  Eigen is
// used for floating point work; its scalar plumbing does not accept
// cpp_int with the Boost version we build against.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "heckecells/laurent.hpp"

namespace heckecells {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not match");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (x == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
      }
    }
    return out;
  }
  friend Matrix operator*(const T& s, Matrix m) {
    for (auto& x : m.a_) x = s * x;
    return m;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;

  bool is_zero() const {
    for (const auto& x : a_) {
      if (!(x == T(0))) return false;
    }
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Integer>;
using LaurentMatrix = Matrix<LaurentPoly>;

IntMatrix eval_at_one(const LaurentMatrix& m);
Eigen::MatrixXd to_eigen(const IntMatrix& m);

}  // namespace heckecells
