#include "gbs/numeric.hpp"

#include <sstream>
#include <utility>

namespace gbs {

Rat make_rat(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::DomainError, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat make_rat(long num, long den) { return make_rat(Integer(num), Integer(den)); }

ZVector zvector(std::initializer_list<long> values) {
  ZVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

ZVector zero_zvector(std::size_t n) { return ZVector(n, Integer(0)); }

bool is_zero(const ZVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

ZVector operator+(const ZVector& a, const ZVector& b) {
  ZVector c = a;
  c += b;
  return c;
}

ZVector& operator+=(ZVector& a, const ZVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

ZVector operator-(const ZVector& a, const ZVector& b) {
  ZVector c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

ZVector operator-(const ZVector& a) {
  ZVector c = a;
  for (auto& x : c) x = -x;
  return c;
}

QVector to_rational(const ZVector& v) {
  QVector q;
  q.reserve(v.size());
  for (const auto& x : v) q.emplace_back(x);
  return q;
}

std::optional<ZVector> to_integral(const QVector& v) {
  ZVector z;
  z.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) return std::nullopt;
    z.push_back(x.get_num());
  }
  return z;
}

std::string to_string(const Rat& r) { return r.get_str(); }

std::string to_string(const ZVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string to_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

void append_key(std::string& out, const ZVector& v) {
  for (const auto& x : v) {
    if (x.fits_slong_p()) {
      long value = x.get_si();
      out.append(reinterpret_cast<const char*>(&value), sizeof value);
    } else {
      out.push_back('\x7f');
      out += x.get_str(36);
      out.push_back('\0');
    }
  }
}

QMatrix to_rational(const ZMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
  return q;
}

std::optional<ZMatrix> to_integral(const QMatrix& m) {
  ZMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) return std::nullopt;
      z(i, j) = m(i, j).get_num();
    }
  return z;
}

Integer determinant(const ZMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  ZMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rat determinant(const QMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix a = m;
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

QMatrix inverse(const QMatrix& m) {
  if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

ZMatrix adjugate(const ZMatrix& m) {
  const std::size_t n = m.rows();
  ZMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ZMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      Integer cof = determinant(minor);
      adj(i, j) = ((i + j) % 2 == 0) ? cof : Integer(-cof);
    }
  return adj;
}

QMatrix power(const QMatrix& m, long exponent) {
  QMatrix base = exponent < 0 ? inverse(m) : m;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  QMatrix result = QMatrix::identity(m.rows());
  while (e) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<QVector> nullspace(const QMatrix& m) {
  QMatrix a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(a.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const QMatrix& m) {
  QMatrix a = m;
  return rref(a).size();
}

QVector solve(const QMatrix& m, const QVector& v) { return inverse(m) * v; }

namespace {

template <typename T>
std::string matrix_string(const Matrix<T>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += m(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace

std::string to_string(const ZMatrix& m) { return matrix_string(m); }
std::string to_string(const QMatrix& m) { return matrix_string(m); }

std::ostream& operator<<(std::ostream& os, const ZMatrix& m) { return os << to_string(m); }
std::ostream& operator<<(std::ostream& os, const QMatrix& m) { return os << to_string(m); }

}  // namespace gbs
