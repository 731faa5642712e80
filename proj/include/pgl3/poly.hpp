#pragma once

// Dense univariate polynomials over an exact commutative ring, plus
// Sylvester resultants and fraction-free determinants.
//
// The coefficient ring R must provide +, -, *, unary -, == and the free
// functions is_zero(const R&) and zero_like(const R&). Division-based
// routines (divmod, gcd) additionally need R to be a field with operator/.
// exact_quotient(a, b) is required by the Bareiss determinant.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "pgl3/error.hpp"

namespace pgl3 {

using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational exact_quotient(const Rational& a, const Rational& b) {
  if (is_zero(b))
    fail(ErrorKind::DivisionByZero, "rational division by zero");
  return a / b;
}

namespace detail {
// Unqualified call so that coefficient types declared later are found by ADL.
template <class T>
bool coeff_is_zero(const T& x) { return is_zero(x); }
} // namespace detail

template <class R>
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(R c) { return Poly(std::vector<R>{std::move(c)}); }

  /// c * x^k
  static Poly monomial(const R& c, int k) {
    std::vector<R> v(static_cast<std::size_t>(k) + 1, zero_like(c));
    v.back() = c;
    return Poly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<R>& coeffs() const { return c_; }
  const R& leading() const { return c_.back(); }

  // Coefficient of x^i; `zero` is returned past the degree.
  R coeff(int i, const R& zero) const {
    if (i < 0 || i > degree()) return zero;
    return c_[static_cast<std::size_t>(i)];
  }

  Poly operator-() const {
    std::vector<R> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(-x);
    return Poly(std::move(v));
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return a.combine(b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return a.combine(b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<R> v(a.c_.size() + b.c_.size() - 1, zero_like(a.c_.front()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }

  friend Poly operator*(const Poly& a, const R& s) {
    std::vector<R> v;
    v.reserve(a.c_.size());
    for (const auto& x : a.c_) v.push_back(x * s);
    return Poly(std::move(v));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  R eval(const R& x) const {
    if (c_.empty()) return zero_like(x);
    R acc = c_.back();
    for (auto it = std::next(c_.rbegin()); it != c_.rend(); ++it)
      acc = acc * x + *it;
    return acc;
  }

  Poly pow(unsigned e) const {
    if (is_zero()) {
      if (e == 0) fail(ErrorKind::InvalidInput, "0^0 is undefined");
      return *this;
    }
    Poly base = *this;
    Poly acc = Poly::constant(one_like(c_.front()));
    while (e) {
      if (e & 1u) acc = acc * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return acc;
  }

  /// Quotient and remainder; requires a field of coefficients.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero())
      fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (degree() < d.degree()) return {Poly(), *this};
    std::vector<R> rem = c_;
    std::vector<R> q(static_cast<std::size_t>(degree() - d.degree()) + 1,
                     zero_like(d.leading()));
    const R lead_inv = one_like(d.leading()) / d.leading();
    for (int k = degree(); k >= d.degree(); --k) {
      const R& top = rem[static_cast<std::size_t>(k)];
      if (detail::coeff_is_zero(top)) continue;
      R f = top * lead_inv;
      int shift = k - d.degree();
      for (int j = 0; j <= d.degree(); ++j) {
        auto idx = static_cast<std::size_t>(j + shift);
        rem[idx] = rem[idx] - f * d.c_[static_cast<std::size_t>(j)];
      }
      q[static_cast<std::size_t>(shift)] = std::move(f);
    }
    rem.resize(static_cast<std::size_t>(d.degree()));
    return {Poly(std::move(q)), Poly(std::move(rem))};
  }

  Poly monic() const {
    if (is_zero()) return *this;
    const R inv = one_like(leading()) / leading();
    return (*this) * inv;
  }

private:
  Poly combine(const Poly& b, bool subtract) const {
    const auto n = std::max(c_.size(), b.c_.size());
    if (n == 0) return Poly();
    const R zero = zero_like(c_.empty() ? b.c_.front() : c_.front());
    std::vector<R> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const R& x = i < c_.size() ? c_[i] : zero;
      const R& y = i < b.c_.size() ? b.c_[i] : zero;
      v.push_back(subtract ? R(x - y) : R(x + y));
    }
    return Poly(std::move(v));
  }

  void trim() {
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
};

template <class R>
bool is_zero(const Poly<R>& p) { return p.is_zero(); }
template <class R>
Poly<R> zero_like(const Poly<R>&) { return Poly<R>(); }

/// Exact division in R[x]; fails unless the remainder vanishes.
template <class R>
Poly<R> exact_quotient(const Poly<R>& a, const Poly<R>& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero())
    fail(ErrorKind::InvalidInput, "polynomial quotient is not exact");
  return q;
}

/// Monic gcd over a field of coefficients.
template <class R>
Poly<R> gcd(Poly<R> a, Poly<R> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns s with s*a = g mod m, where g = gcd(a, m) is returned alongside.
template <class R>
std::pair<Poly<R>, Poly<R>> inverse_mod(const Poly<R>& a, const Poly<R>& m) {
  Poly<R> r0 = m, r1 = a;
  Poly<R> s0, s1 = Poly<R>::constant(one_like(m.leading()));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    Poly<R> s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 = s0 * a (mod m); normalize so that the gcd is monic.
  const R inv = one_like(r0.leading()) / r0.leading();
  return {s0 * inv, r0 * inv};
}

template <class R>
using Matrix = std::vector<std::vector<R>>;

/// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
/// Every intermediate division is exact in an integral domain.
template <class R>
R determinant(Matrix<R> m, const R& zero, const R& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  R prev = one;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && is_zero(m[p][k])) ++p;
    if (p == n) return zero;
    if (p != k) {
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_quotient(R(m[i][j] * m[k][k] - m[i][k] * m[k][j]), prev);
      m[i][k] = zero;
    }
    prev = m[k][k];
  }
  R d = m[n - 1][n - 1];
  return negate ? R(-d) : d;
}

/// Sylvester matrix of two coefficient lists (low degree first) taken at
/// their formal degrees len-1. A vanishing top coefficient is allowed, which
/// gives the homogeneous resultant of binary forms.
template <class R>
Matrix<R> sylvester_matrix(const std::vector<R>& f, const std::vector<R>& g,
                           const R& zero) {
  if (f.empty() || g.empty())
    fail(ErrorKind::ZeroLeadingCoefficient, "empty coefficient list");
  const std::size_t m = f.size() - 1, n = g.size() - 1, size = m + n;
  Matrix<R> s(size, std::vector<R>(size, zero));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= m; ++j) s[r][r + j] = f[m - j];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= n; ++j) s[n + r][r + j] = g[n - j];
  return s;
}

/// Res(p, q) as the Sylvester determinant.
template <class R>
R resultant(const Poly<R>& p, const Poly<R>& q, const R& zero, const R& one) {
  if (p.is_zero() || q.is_zero())
    fail(ErrorKind::ZeroLeadingCoefficient, "resultant of a zero polynomial");
  return determinant(sylvester_matrix(p.coeffs(), q.coeffs(), zero), zero, one);
}

} // namespace pgl3
