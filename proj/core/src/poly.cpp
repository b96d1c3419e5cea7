#include "gbs/poly.hpp"

#include <stdexcept>
#include <utility>

namespace gbs {

QPoly::QPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPoly QPoly::monomial(const Rat& c, std::size_t degree) {
  std::vector<Rat> v(degree + 1);
  v[degree] = c;
  return QPoly(std::move(v));
}

QPoly QPoly::linear(const Rat& root) { return QPoly({-root, Rat(1)}); }

void QPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat QPoly::operator()(const Rat& x) const {
  Rat acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  Rat inv = 1 / leading();
  return inv * *this;
}

QPoly QPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rat> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return QPoly(std::move(d));
}

QPoly QPoly::reversal() const {
  std::vector<Rat> r(coeffs_.rbegin(), coeffs_.rend());
  std::size_t lead_zeros = 0;
  while (lead_zeros < r.size() && r[lead_zeros] == 0) ++lead_zeros;
  r.erase(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(lead_zeros));
  return QPoly(std::move(r));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rat> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rat> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a) {
  std::vector<Rat> c = a.coeffs_;
  for (auto& x : c) x = -x;
  return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return QPoly(std::move(c));
}

QPoly operator*(const Rat& s, const QPoly& a) {
  std::vector<Rat> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return QPoly(std::move(c));
}

std::string QPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rat& c = coeffs_[i];
    if (c == 0) continue;
    Rat mag = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    bool show_coeff = i == 0 || mag != 1;
    if (show_coeff) s += mag.get_str();
    if (i >= 1) s += var;
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

DivMod divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DomainError, "polynomial division by zero");
  std::vector<Rat> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rat> quot(static_cast<std::size_t>(a.degree() - db + 1));
  Rat inv_lead = 1 / b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    Rat q = rem[static_cast<std::size_t>(k + db)] * inv_lead;
    quot[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a.monic();
  QPoly y = b.monic();
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).remainder.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

QPoly exact_div(const QPoly& a, const QPoly& b) {
  auto dm = divmod(a, b);
  if (!dm.remainder.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
  return dm.quotient;
}

std::vector<QPoly> squarefree_decomposition(const QPoly& p) {
  std::vector<QPoly> parts;
  if (p.degree() <= 0) return parts;
  QPoly f = p.monic();
  QPoly fp = f.derivative();
  QPoly a = gcd(f, fp);
  QPoly b = exact_div(f, a);
  QPoly c = exact_div(fp, a);
  QPoly d = c - b.derivative();
  while (b.degree() > 0) {
    QPoly ai = gcd(b, d);
    parts.push_back(ai);
    b = exact_div(b, ai);
    c = exact_div(d, ai);
    d = c - b.derivative();
  }
  return parts;
}

namespace {

int sign(const Rat& x) { return sgn(x); }

/// Sign of p at ±infinity.
int sign_at_infinity(const QPoly& p, bool positive) {
  if (p.is_zero()) return 0;
  int s = sign(p.leading());
  if (!positive && p.degree() % 2 == 1) s = -s;
  return s;
}

int variations(const std::vector<int>& signs) {
  int v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

std::vector<QPoly> sturm_chain(QPoly f0, QPoly f1) {
  std::vector<QPoly> chain;
  chain.push_back(std::move(f0));
  if (f1.is_zero()) return chain;
  chain.push_back(std::move(f1));
  while (true) {
    QPoly r = divmod(chain[chain.size() - 2], chain.back()).remainder;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

}  // namespace

int count_real_roots(const QPoly& p, const Rat& lo, const Rat& hi) {
  if (p.is_zero()) throw Error(ErrorCode::DomainError, "root count of the zero polynomial");
  auto chain = sturm_chain(p, p.derivative());
  std::vector<int> at_lo, at_hi;
  for (const auto& q : chain) {
    at_lo.push_back(sign(q(lo)));
    at_hi.push_back(sign(q(hi)));
  }
  return variations(at_lo) - variations(at_hi);
}

int cauchy_index(const QPoly& num, const QPoly& den) {
  if (den.is_zero()) throw Error(ErrorCode::DomainError, "Cauchy index with zero denominator");
  QPoly reduced = divmod(num, den).remainder;
  auto chain = sturm_chain(den, reduced);
  std::vector<int> neg, pos;
  for (const auto& q : chain) {
    neg.push_back(sign_at_infinity(q, false));
    pos.push_back(sign_at_infinity(q, true));
  }
  return variations(neg) - variations(pos);
}

namespace {

// Coefficients high to low of det(x I - M) for an integer matrix.
std::vector<Integer> berkowitz(const ZMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return {Integer(1)};
  if (n == 1) return {Integer(1), Integer(-m(0, 0))};

  ZMatrix sub(n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) sub(i - 1, j - 1) = m(i, j);

  // Toeplitz column: 1, -a, -R C, -R A C, ..., -R A^{n-2} C.
  std::vector<Integer> diag;
  diag.reserve(n + 1);
  diag.emplace_back(1);
  diag.emplace_back(-m(0, 0));
  ZVector col(n - 1);
  for (std::size_t i = 1; i < n; ++i) col[i - 1] = m(i, 0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    Integer acc = 0;
    for (std::size_t j = 1; j < n; ++j) acc += m(0, j) * col[j - 1];
    diag.push_back(-acc);
    col = sub * col;
  }

  std::vector<Integer> inner = berkowitz(sub);  // length n
  std::vector<Integer> out(n + 1);
  for (std::size_t row = 0; row <= n; ++row)
    for (std::size_t c = 0; c < n && c <= row; ++c) out[row] += diag[row - c] * inner[c];
  return out;
}

}  // namespace

QPoly char_poly(const QMatrix& a) {
  if (!a.square()) throw std::invalid_argument("char_poly: square matrix expected");
  const std::size_t n = a.rows();
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = lcm(scale, Integer(a(i, j).get_den()));
  ZMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat scaled = a(i, j) * Rat(scale);
      m(i, j) = scaled.get_num();
    }
  std::vector<Integer> high_to_low = berkowitz(m);
  // chi_A(x) = scale^{-n} chi_M(scale x)
  std::vector<Rat> coeffs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    Integer c = high_to_low[n - k];
    Integer den;
    mpz_pow_ui(den.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(n - k));
    coeffs[k] = make_rat(c, den);
  }
  return QPoly(std::move(coeffs));
}

QMatrix evaluate(const QPoly& p, const QMatrix& a) {
  const std::size_t n = a.rows();
  QMatrix acc(n, n);
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * a;
    for (std::size_t d = 0; d < n; ++d) acc(d, d) += p.coeffs()[i];
  }
  return acc;
}

namespace {

QPoly x_minus(long c) { return QPoly::linear(Rat(c)); }

/// For a palindromic polynomial g of degree 2k, the degree-k polynomial G
/// with g(z) = z^k G(z + 1/z).
QPoly trace_polynomial(const QPoly& g) {
  const int deg = g.degree();
  if (deg % 2 != 0) throw std::logic_error("trace_polynomial: even degree expected");
  const std::size_t k = static_cast<std::size_t>(deg / 2);
  for (std::size_t j = 0; j <= 2 * k; ++j)
    if (g.coeff(j) != g.coeff(2 * k - j)) throw std::logic_error("trace_polynomial: not palindromic");
  QPoly y({Rat(0), Rat(1)});
  QPoly prev = QPoly::constant(2);  // z^0 + z^0
  QPoly cur = y;                    // z + 1/z
  QPoly out = QPoly::constant(g.coeff(k));
  for (std::size_t j = 1; j <= k; ++j) {
    out = out + g.coeff(k + j) * cur;
    QPoly next = y * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

/// Roots of a polynomial without roots on the unit circle that lie inside
/// the unit disk: Möbius map to the left half plane, then Routh-Hurwitz via
/// a Cauchy index.
int count_inside_disk(const QPoly& h) {
  const int m = h.degree();
  if (m <= 0) return 0;
  QPoly one_plus({Rat(1), Rat(1)});
  QPoly one_minus({Rat(1), Rat(-1)});
  std::vector<QPoly> plus_pow{QPoly::constant(1)};
  std::vector<QPoly> minus_pow{QPoly::constant(1)};
  for (int j = 1; j <= m; ++j) {
    plus_pow.push_back(plus_pow.back() * one_plus);
    minus_pow.push_back(minus_pow.back() * one_minus);
  }
  QPoly q;
  for (int j = 0; j <= m; ++j)
    q = q + h.coeff(static_cast<std::size_t>(j)) *
                (plus_pow[static_cast<std::size_t>(j)] * minus_pow[static_cast<std::size_t>(m - j)]);
  // q(iy) = re(y) + i im(y)
  std::vector<Rat> re(static_cast<std::size_t>(m) + 1), im(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= q.degree(); ++j) {
    const Rat& c = q.coeffs()[static_cast<std::size_t>(j)];
    switch (j % 4) {
      case 0: re[static_cast<std::size_t>(j)] = c; break;
      case 1: im[static_cast<std::size_t>(j)] = c; break;
      case 2: re[static_cast<std::size_t>(j)] = -c; break;
      case 3: im[static_cast<std::size_t>(j)] = -c; break;
    }
  }
  QPoly real_part(std::move(re));
  QPoly imag_part(std::move(im));
  int left_minus_right = (q.degree() % 2 == 1) ? cauchy_index(real_part, imag_part)
                                                : -cauchy_index(imag_part, real_part);
  int total = q.degree();
  return (total + left_minus_right) / 2;
}

QPoly strip_zero_roots(const QPoly& p, int& zeros) {
  zeros = 0;
  std::vector<Rat> c = p.coeffs();
  std::size_t k = 0;
  while (k < c.size() && c[k] == 0) ++k;
  zeros = static_cast<int>(k);
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
  return QPoly(std::move(c));
}

struct ReciprocalSplit {
  int at_plus_one = 0;
  int at_minus_one = 0;
  int trace_degree = 0;      // k
  int trace_on_circle = 0;   // real roots of G in (-2, 2)
  QPoly reciprocal_rest;     // g / ((z-1)^a (z+1)^b), palindromic
  QPoly remainder;           // h = a / g, no unit-circle roots
};

ReciprocalSplit split_squarefree(const QPoly& a) {
  ReciprocalSplit s;
  QPoly g = gcd(a, a.reversal());
  s.remainder = exact_div(a.monic(), g);
  if (g(Rat(1)) == 0) {
    s.at_plus_one = 1;
    g = exact_div(g, x_minus(1));
  }
  if (g(Rat(-1)) == 0) {
    s.at_minus_one = 1;
    g = exact_div(g, x_minus(-1));
  }
  if (g.degree() > 0) {
    QPoly trace = trace_polynomial(g);
    s.trace_degree = trace.degree();
    s.trace_on_circle = count_real_roots(trace, Rat(-2), Rat(2));
  }
  s.reciprocal_rest = std::move(g);
  return s;
}

}  // namespace

RootModuli classify_root_moduli(const QPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::DomainError, "root moduli of the zero polynomial");
  RootModuli out;
  int zeros = 0;
  QPoly f = strip_zero_roots(p, zeros);
  out.count_lt1 += zeros;
  auto parts = squarefree_decomposition(f);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const int mult = static_cast<int>(i + 1);
    if (parts[i].degree() <= 0) continue;
    ReciprocalSplit s = split_squarefree(parts[i]);
    int k = s.trace_degree;
    int on = s.trace_on_circle;
    int inside = count_inside_disk(s.remainder);
    out.count_eq1 += mult * (s.at_plus_one + s.at_minus_one + 2 * on);
    out.count_lt1 += mult * ((k - on) + inside);
    out.count_gt1 += mult * ((k - on) + (s.remainder.degree() - inside));
  }
  return out;
}

std::optional<QPoly> unit_circle_factor(const QPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::DomainError, "unit-circle factor of the zero polynomial");
  int zeros = 0;
  QPoly f = strip_zero_roots(p, zeros);
  QPoly u = QPoly::constant(1);
  auto parts = squarefree_decomposition(f);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() <= 0) continue;
    ReciprocalSplit s = split_squarefree(parts[i]);
    QPoly piece = QPoly::constant(1);
    if (s.at_plus_one) piece = piece * x_minus(1);
    if (s.at_minus_one) piece = piece * x_minus(-1);
    if (s.trace_degree > 0) {
      if (s.trace_on_circle == s.trace_degree)
        piece = piece * s.reciprocal_rest;
      else if (s.trace_on_circle != 0)
        return std::nullopt;
    }
    for (std::size_t m = 0; m <= i; ++m) u = u * piece;
  }
  return u;
}

}  // namespace gbs
