#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// An element is a rational coefficient vector of length phi(N), read as a
// polynomial in zeta_N = exp(2*pi*i/N) reduced modulo the N-th cyclotomic
// polynomial. The reduced form is unique, so equality is coefficient
// equality. Elements of different conductors never mix implicitly; use
// embed() to move both into a common field first.

#include <cstddef>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pgl3/error.hpp"
#include "pgl3/numeric.hpp"
#include "pgl3/poly.hpp"

namespace pgl3 {

using QPoly = Poly<Rational>;

inline long lcm_conductor(long a, long b) { return std::lcm(a, b); }

class CycloField {
public:
  using Ptr = std::shared_ptr<const CycloField>;

  /// Shared, cached instance of Q(zeta_n).
  static Ptr get(long n) {
    if (n < 1) fail(ErrorKind::InvalidInput, "conductor must be >= 1, got " + std::to_string(n));
    {
      std::lock_guard<std::mutex> lock(registry_mutex());
      auto it = registry().find(n);
      if (it != registry().end()) return it->second;
    }
    // Built outside the lock: the modulus recursively needs proper divisors.
    Ptr built(new CycloField(n, compute_modulus(n)));
    std::lock_guard<std::mutex> lock(registry_mutex());
    return registry().emplace(n, std::move(built)).first->second;
  }

  long conductor() const { return n_; }
  int degree() const { return modulus_.degree(); }
  const QPoly& modulus() const { return modulus_; }

  /// Reduced coefficients of zeta^k; k is taken modulo the conductor.
  const std::vector<Rational>& power(long k) const {
    k %= n_;
    if (k < 0) k += n_;
    return powers_[static_cast<std::size_t>(k)];
  }

private:
  CycloField(long n, QPoly modulus) : n_(n), modulus_(std::move(modulus)) {
    const auto d = static_cast<std::size_t>(degree());
    powers_.reserve(static_cast<std::size_t>(n_));
    for (std::size_t k = 0; k < static_cast<std::size_t>(n_); ++k) {
      std::vector<Rational> v(d, Rational(0));
      if (k < d) {
        v[k] = 1;
      } else {
        // zeta * zeta^(k-1), folding the x^d term back with the monic modulus
        const auto& prev = powers_.back();
        const Rational top = prev[d - 1];
        for (std::size_t j = d - 1; j > 0; --j) v[j] = prev[j - 1];
        v[0] = 0;
        if (sgn(top) != 0)
          for (std::size_t j = 0; j < d; ++j)
            v[j] -= top * modulus_.coeffs()[j];
      }
      powers_.push_back(std::move(v));
    }
  }

  static QPoly compute_modulus(long n) {
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    std::vector<Rational> xn(static_cast<std::size_t>(n) + 1, Rational(0));
    xn.front() = -1;
    xn.back() = 1;
    QPoly acc(std::move(xn));
    for (long d = 1; d < n; ++d)
      if (n % d == 0) acc = exact_quotient(acc, get(d)->modulus());
    return acc;
  }

  static std::map<long, Ptr>& registry() {
    static std::map<long, Ptr> r;
    return r;
  }
  static std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
  }

  long n_;
  QPoly modulus_;
  std::vector<std::vector<Rational>> powers_;
};

class Cyclo {
public:
  using FieldPtr = CycloField::Ptr;

  /// Zero of Q (conductor 1).
  Cyclo() : Cyclo(CycloField::get(1)) {}

  explicit Cyclo(FieldPtr field)
      : field_(std::move(field)),
        c_(static_cast<std::size_t>(field_->degree()), Rational(0)) {}

  /// sum_k poly[k] * zeta^k for a coefficient list of any length.
  Cyclo(FieldPtr field, std::vector<Rational> poly) : Cyclo(std::move(field)) {
    for (auto& q : poly) q.canonicalize();
    accumulate(poly);
  }

  static Cyclo zero(long n) { return Cyclo(CycloField::get(n)); }
  static Cyclo rational(long n, const Rational& q) {
    Cyclo r = zero(n);
    r.c_[0] = q;
    r.c_[0].canonicalize();
    return r;
  }
  static Cyclo one(long n) { return rational(n, 1); }

  /// zeta_n^k
  static Cyclo zeta(long n, long k) {
    Cyclo r = zero(n);
    r.c_ = r.field_->power(k);
    return r;
  }

  long conductor() const { return field_->conductor(); }
  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (sgn(q) != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (sgn(c_[k]) != 0) return false;
    return true;
  }
  bool is_one() const { return is_rational() && c_[0] == 1; }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    a.check_same(b);
    Cyclo r = a;
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
    return r;
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    a.check_same(b);
    Cyclo r = a;
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= b.c_[k];
    return r;
  }
  Cyclo operator-() const {
    Cyclo r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
  }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    a.check_same(b);
    const std::size_t d = a.c_.size();
    std::vector<Rational> prod(2 * d - 1, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (sgn(b.c_[j]) != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    Cyclo r(a.field_);
    r.accumulate(prod);
    return r;
  }

  friend Cyclo operator*(const Cyclo& a, const Rational& q) {
    Cyclo r = a;
    for (auto& x : r.c_) x *= q;
    return r;
  }
  friend Cyclo operator*(const Rational& q, const Cyclo& a) { return a * q; }

  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
  friend Cyclo operator/(const Cyclo& a, const Rational& q) {
    if (sgn(q) == 0) fail(ErrorKind::DivisionByZero, "division by rational zero");
    return a * Rational(1 / q);
  }

  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  /// Equality of reduced forms; conductors must agree.
  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    a.check_same(b);
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  /// Inverse via the extended Euclidean algorithm modulo Phi_N.
  Cyclo inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero in Q(zeta_" + std::to_string(conductor()) + ")");
    // c * zeta^k has inverse c^-1 * zeta^-k
    std::size_t lead = c_.size(), nonzero = 0;
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (sgn(c_[k]) != 0) {
        lead = k;
        ++nonzero;
      }
    if (nonzero == 1) {
      const Rational inv = 1 / c_[lead];
      Cyclo r(field_);
      r.c_ = field_->power(-static_cast<long>(lead));
      for (auto& x : r.c_) x *= inv;
      return r;
    }
    auto [s, g] = inverse_mod(QPoly(c_), field_->modulus());
    if (g.degree() != 0)
      fail(ErrorKind::DivisionByZero, "element not invertible modulo Phi_N");
    return Cyclo(field_, s.coeffs());
  }

  Cyclo pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclo acc = one(conductor()), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }

  /// Complex conjugation: zeta_N -> zeta_N^(N-1).
  Cyclo conj() const {
    std::vector<Rational> v(c_.size(), Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0) continue;
      const auto& p = field_->power(-static_cast<long>(k));
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += c_[k] * p[j];
    }
    Cyclo r(field_);
    r.c_ = std::move(v);
    return r;
  }

  bool is_real() const { return conj().c_ == c_; }

  /// Image in Q(zeta_m) under zeta_N -> zeta_m^(m/N).
  Cyclo embed(long m) const {
    if (m == conductor()) return *this;
    if (m < 1 || m % conductor() != 0)
      fail(ErrorKind::NotASubfield, "Q(zeta_" + std::to_string(conductor()) +
                                        ") does not embed in Q(zeta_" + std::to_string(m) + ")");
    const long step = m / conductor();
    Cyclo r = zero(m);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0) continue;
      const auto& p = r.field_->power(static_cast<long>(k) * step);
      for (std::size_t j = 0; j < r.c_.size(); ++j) r.c_[j] += c_[k] * p[j];
    }
    return r;
  }

  /// Inverse of embed(): the preimage in Q(zeta_n) for n | N, if it exists.
  Cyclo restrict_to(long n) const {
    if (n < 1 || conductor() % n != 0)
      fail(ErrorKind::NotASubfield, "Q(zeta_" + std::to_string(n) + ") is not a subfield of Q(zeta_" +
                                        std::to_string(conductor()) + ")");
    const long step = conductor() / n;
    const auto sub = CycloField::get(n);
    const std::size_t rows = c_.size(), cols = static_cast<std::size_t>(sub->degree());
    // Columns are the images of the basis zeta_n^j; solve exactly.
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& p = field_->power(static_cast<long>(j) * step);
      for (std::size_t i = 0; i < rows; ++i) a[i][j] = p[i];
    }
    for (std::size_t i = 0; i < rows; ++i) a[i][cols] = c_[i];
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols && r < rows; ++j) {
      std::size_t p = r;
      while (p < rows && sgn(a[p][j]) == 0) ++p;
      if (p == rows) continue;
      std::swap(a[p], a[r]);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || sgn(a[i][j]) == 0) continue;
        const Rational f = a[i][j] / a[r][j];
        for (std::size_t k = j; k <= cols; ++k) a[i][k] -= f * a[r][k];
      }
      pivot_col.push_back(j);
      ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
      if (sgn(a[i][cols]) != 0)
        fail(ErrorKind::NotASubfield, "element does not lie in Q(zeta_" + std::to_string(n) + ")");
    Cyclo out(sub);
    for (std::size_t i = 0; i < r; ++i) out.c_[pivot_col[i]] = a[i][cols] / a[i][pivot_col[i]];
    return out;
  }

  /// (Re x, Im x), both fixed by conj, in Q(zeta_lcm(4, N)).
  std::pair<Cyclo, Cyclo> re_im() const {
    const long m = lcm_conductor(4, conductor());
    const Cyclo x = embed(m);
    const Cyclo xc = x.conj();
    const Cyclo i = zeta(m, m / 4);
    const Rational half(1, 2);
    return {(x + xc) * half, (x - xc) * (-i) * half};
  }

  /// Numeric value at zeta_N = exp(2*pi*i/N).
  BigComplex to_complex(long bits = 128) const {
    if (bits < 53) fail(ErrorKind::InvalidInput, "numeric precision must be >= 53 bits");
    BigComplex z{BigFloat(bits), BigFloat(bits)};
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0) continue;
      auto [c, s] = BigFloat::unit_root(static_cast<long>(k), conductor(), bits);
      const BigFloat q = BigFloat::from_rational(c_[k], bits);
      z.re = z.re + q * c;
      z.im = z.im + q * s;
    }
    return z;
  }

  std::complex<double> to_cdouble() const {
    auto z = to_complex(64);
    return {z.re.to_double(), z.im.to_double()};
  }

  /// Human-readable form in z = zeta_N, e.g. "-2 + 1/2*z^3".
  std::string str() const {
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      const Rational& q = c_[k];
      if (sgn(q) == 0) continue;
      const bool neg = sgn(q) < 0;
      const Rational mag = abs(q);
      std::string term;
      if (k == 0) {
        term = mag.get_str();
      } else {
        const std::string mono = k == 1 ? "z" : "z^" + std::to_string(k);
        term = mag == 1 ? mono : mag.get_str() + "*" + mono;
      }
      if (out.empty())
        out = neg ? "-" + term : term;
      else
        out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
  }

  /// Stable exact key for hashing.
  std::string key() const {
    std::string s = std::to_string(conductor()) + ":";
    for (const auto& q : c_) {
      s += q.get_str();
      s += ',';
    }
    return s;
  }

private:
  // Adds sum_k poly[k] * zeta^k; entries must already be canonical.
  void accumulate(const std::vector<Rational>& poly) {
    for (std::size_t k = 0; k < poly.size(); ++k) {
      if (sgn(poly[k]) == 0) continue;
      if (k < c_.size()) {
        c_[k] += poly[k];
      } else {
        const auto& p = field_->power(static_cast<long>(k));
        for (std::size_t j = 0; j < c_.size(); ++j)
          if (sgn(p[j]) != 0) c_[j] += poly[k] * p[j];
      }
    }
  }

  void check_same(const Cyclo& o) const {
    if (field_ != o.field_ && conductor() != o.conductor())
      fail(ErrorKind::FieldMismatch, "Q(zeta_" + std::to_string(conductor()) + ") vs Q(zeta_" +
                                         std::to_string(o.conductor()) + ")");
  }

  FieldPtr field_;
  std::vector<Rational> c_;
};

inline bool is_zero(const Cyclo& x) { return x.is_zero(); }
inline Cyclo zero_like(const Cyclo& x) { return Cyclo(x.field()); }
inline Cyclo one_like(const Cyclo& x) { return Cyclo::one(x.conductor()); }
inline Cyclo exact_quotient(const Cyclo& a, const Cyclo& b) { return a / b; }

/// Moves both values into Q(zeta_lcm).
inline std::pair<Cyclo, Cyclo> unify(const Cyclo& a, const Cyclo& b) {
  const long m = lcm_conductor(a.conductor(), b.conductor());
  return {a.embed(m), b.embed(m)};
}

} // namespace pgl3
