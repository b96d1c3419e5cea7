#pragma once

// Exact scalars, vectors and dense matrices over Z and Q.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gbs/error.hpp"

namespace gbs {

using Integer = mpz_class;
/// Always canonical (lowest terms, positive denominator) as long as values are
/// built through make_rat() or arithmetic on canonical operands.
using Rat = mpq_class;

Rat make_rat(const Integer& num, const Integer& den);
Rat make_rat(long num, long den = 1);

using ZVector = std::vector<Integer>;
using QVector = std::vector<Rat>;

ZVector zvector(std::initializer_list<long> values);
ZVector zero_zvector(std::size_t n);
bool is_zero(const ZVector& v);
bool is_zero(const QVector& v);
ZVector operator+(const ZVector& a, const ZVector& b);
ZVector operator-(const ZVector& a, const ZVector& b);
ZVector operator-(const ZVector& a);
ZVector& operator+=(ZVector& a, const ZVector& b);
QVector to_rational(const ZVector& v);
std::optional<ZVector> to_integral(const QVector& v);

std::string to_string(const Rat& r);
std::string to_string(const ZVector& v);
std::string to_string(const QVector& v);

/// Appends a compact, injective serialization of v to out (hash keys).
void append_key(std::string& out, const ZVector& v);

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  bool is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    std::vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ZMatrix = Matrix<Integer>;
using QMatrix = Matrix<Rat>;

QMatrix to_rational(const ZMatrix& m);
std::optional<ZMatrix> to_integral(const QMatrix& m);

/// Bareiss fraction-free determinant.
Integer determinant(const ZMatrix& m);
Rat determinant(const QMatrix& m);

/// Exact inverse; throws SingularMatrix.
QMatrix inverse(const QMatrix& m);
/// Adjugate, so that m * adjugate(m) = det(m) * I.
ZMatrix adjugate(const ZMatrix& m);

QMatrix power(const QMatrix& m, long exponent);

/// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
/// Basis (as columns of the returned matrix list) of {x : m x = 0}.
std::vector<QVector> nullspace(const QMatrix& m);
std::size_t rank(const QMatrix& m);
/// Solves m x = v for square nonsingular m.
QVector solve(const QMatrix& m, const QVector& v);

std::string to_string(const ZMatrix& m);
std::string to_string(const QMatrix& m);

std::ostream& operator<<(std::ostream& os, const ZMatrix& m);
std::ostream& operator<<(std::ostream& os, const QMatrix& m);

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0), data_(rows_ * cols_) {
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    std::size_t j = 0;
    for (long x : r) (*this)(i, j++) = x;
    ++i;
  }
}

}  // namespace gbs
