#pragma once

// 3x3 matrices over a cyclotomic field and their classes in PGL_3.
//
// Eigenvalues are never materialized. Everything about the spectrum of a
// lift goes through its characteristic polynomial and the scaling action
// f(t) -> c^3 f(t/c), which keeps all computation inside Q(zeta_N).

#include <array>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pgl3/cyclotomic.hpp"
#include "pgl3/error.hpp"

namespace pgl3 {

inline constexpr int kDefaultMaxOrder = 360;

class Matrix3 {
public:
  using Rows = std::array<std::array<Cyclo, 3>, 3>;

  Matrix3() = default;
  explicit Matrix3(Rows rows) : m_(std::move(rows)) { unify_entries(); }

  static Matrix3 identity(long n) {
    return diag(Cyclo::one(n), Cyclo::one(n), Cyclo::one(n));
  }
  static Matrix3 diag(const Cyclo& a, const Cyclo& b, const Cyclo& c) {
    const Cyclo z = Cyclo::zero(a.conductor());
    return Matrix3(Rows{{{a, z, z}, {z, b, z}, {z, z, c}}});
  }
  /// diag(zeta_n^e0, zeta_n^e1, zeta_n^e2)
  static Matrix3 diag_zeta(long n, long e0, long e1, long e2) {
    return diag(Cyclo::zeta(n, e0), Cyclo::zeta(n, e1), Cyclo::zeta(n, e2));
  }
  /// The substitution [X_{p0} : X_{p1} : X_{p2}], e.g. [Y:Z:X] is {1, 2, 0}.
  static Matrix3 permutation(std::array<int, 3> p, long n = 1) {
    Matrix3 r = zero(n);
    for (int i = 0; i < 3; ++i) r(i, p[static_cast<std::size_t>(i)]) = Cyclo::one(n);
    return r;
  }
  static Matrix3 zero(long n) {
    const Cyclo z = Cyclo::zero(n);
    return Matrix3(Rows{{{z, z, z}, {z, z, z}, {z, z, z}}});
  }

  const Cyclo& operator()(int r, int c) const { return m_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  Cyclo& operator()(int r, int c) { return m_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  const Rows& rows() const { return m_; }

  long conductor() const { return m_[0][0].conductor(); }

  Matrix3 embedded(long n) const {
    Matrix3 r = *this;
    for (auto& row : r.m_)
      for (auto& x : row) x = x.embed(n);
    return r;
  }

  friend Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
    if (a.conductor() != b.conductor()) {
      const long n = lcm_conductor(a.conductor(), b.conductor());
      return a.embedded(n) * b.embedded(n);
    }
    Matrix3 r = zero(a.conductor());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Cyclo acc = a(i, 0) * b(0, j);
        acc += a(i, 1) * b(1, j);
        acc += a(i, 2) * b(2, j);
        r(i, j) = std::move(acc);
      }
    return r;
  }
  friend Matrix3 operator*(const Matrix3& a, const Cyclo& s) {
    const long n = lcm_conductor(a.conductor(), s.conductor());
    Matrix3 r = a.embedded(n);
    const Cyclo t = s.embed(n);
    for (auto& row : r.m_)
      for (auto& x : row) x = x * t;
    return r;
  }
  friend Matrix3 operator-(const Matrix3& a, const Matrix3& b) {
    const long n = lcm_conductor(a.conductor(), b.conductor());
    Matrix3 r = a.embedded(n);
    const Matrix3 c = b.embedded(n);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = r(i, j) - c(i, j);
    return r;
  }

  friend bool operator==(const Matrix3& a, const Matrix3& b) {
    if (a.conductor() != b.conductor()) {
      const long n = lcm_conductor(a.conductor(), b.conductor());
      return a.embedded(n) == b.embedded(n);
    }
    return a.m_ == b.m_;
  }
  friend bool operator!=(const Matrix3& a, const Matrix3& b) { return !(a == b); }

  Cyclo minor(int r0, int r1, int c0, int c1) const {
    return (*this)(r0, c0) * (*this)(r1, c1) - (*this)(r0, c1) * (*this)(r1, c0);
  }

  Cyclo det() const {
    const auto& a = *this;
    return a(0, 0) * minor(1, 2, 1, 2) - a(0, 1) * minor(1, 2, 0, 2) + a(0, 2) * minor(1, 2, 0, 1);
  }
  Cyclo trace() const { return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2); }

  /// adj(M) with M * adj(M) = det(M) * I; a projective inverse needing no division.
  Matrix3 adjugate() const {
    Matrix3 r = zero(conductor());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        // cofactor C_ji placed at (i, j)
        int rr[2], cc[2];
        for (int k = 0, t = 0; k < 3; ++k)
          if (k != j) rr[t++] = k;
        for (int k = 0, t = 0; k < 3; ++k)
          if (k != i) cc[t++] = k;
        Cyclo m = minor(rr[0], rr[1], cc[0], cc[1]);
        r(i, j) = ((i + j) % 2 == 0) ? m : -m;
      }
    return r;
  }

  Matrix3 inverse() const {
    const Cyclo d = det();
    if (d.is_zero()) fail(ErrorKind::SingularMatrix, "matrix is not invertible");
    return adjugate() * d.inverse();
  }

  /// Entrywise complex conjugate.
  Matrix3 conj() const {
    Matrix3 r = *this;
    for (auto& row : r.m_)
      for (auto& x : row) x = x.conj();
    return r;
  }

  /// "[[a, b, c], [d, e, f], [g, h, k]]" with exact entries.
  std::string str() const {
    std::string s = "[";
    for (int r = 0; r < 3; ++r) {
      s += r ? ", [" : "[";
      for (int c = 0; c < 3; ++c) s += (c ? ", " : "") + (*this)(r, c).str();
      s += "]";
    }
    return s + "]";
  }

  bool is_real() const {
    for (const auto& row : m_)
      for (const auto& x : row)
        if (!x.is_real()) return false;
    return true;
  }

  bool is_diagonal() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
  }

  bool is_scalar() const {
    return is_diagonal() && (*this)(0, 0) == (*this)(1, 1) && (*this)(1, 1) == (*this)(2, 2);
  }

  Matrix3 pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Matrix3 acc = identity(conductor()), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }

private:
  void unify_entries() {
    long n = 1;
    for (const auto& row : m_)
      for (const auto& x : row) n = lcm_conductor(n, x.conductor());
    for (auto& row : m_)
      for (auto& x : row) x = x.embed(n);
  }

  Rows m_;
};

/// The class of an invertible matrix in PGL_3, kept with the lift it was
/// built from and its canonical scaling (first nonzero entry, row-major, = 1).
class ProjElement {
public:
  explicit ProjElement(Matrix3 lift) : lift_(std::move(lift)) {
    if (lift_.det().is_zero()) fail(ErrorKind::SingularMatrix, "projective element needs det != 0");
    canonical_ = normalize(lift_);
    key_ = make_key(canonical_);
  }

  static ProjElement identity(long n = 1) { return ProjElement(Matrix3::identity(n)); }

  const Matrix3& lift() const { return lift_; }
  const Matrix3& canonical() const { return canonical_; }
  const std::string& key() const { return key_; }
  long conductor() const { return canonical_.conductor(); }

  ProjElement embedded(long n) const {
    ProjElement r = *this;
    r.lift_ = lift_.embedded(n);
    r.canonical_ = canonical_.embedded(n);
    r.key_ = make_key(r.canonical_);
    return r;
  }

  /// Products carry the canonical representative as their lift.
  friend ProjElement operator*(const ProjElement& g, const ProjElement& h) {
    return ProjElement(g.canonical_ * h.canonical_, Canonical{});
  }

  friend bool operator==(const ProjElement& g, const ProjElement& h) {
    if (g.conductor() != h.conductor()) return g.canonical_ == h.canonical_;
    return g.key_ == h.key_;
  }
  friend bool operator!=(const ProjElement& g, const ProjElement& h) { return !(g == h); }

  ProjElement inverse() const { return ProjElement(canonical_.adjugate(), Canonical{}); }

  /// Image under the Galois action (entrywise complex conjugation).
  ProjElement sigma() const {
    ProjElement r = *this;
    r.lift_ = lift_.conj();
    r.canonical_ = canonical_.conj();  // conj keeps the leading 1
    r.key_ = make_key(r.canonical_);
    return r;
  }

  ProjElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    ProjElement acc = identity(conductor()), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }

  bool is_identity() const { return canonical_.is_scalar(); }

  /// True iff the class has a real lift.
  bool is_real() const { return canonical_.is_real(); }

  /// g^-1 * h * g
  ProjElement conjugate(const ProjElement& h) const { return inverse() * h * (*this); }

private:
  struct Canonical {};
  ProjElement(Matrix3 m, Canonical) : ProjElement(std::move(m)) { lift_ = canonical_; }

  static Matrix3 normalize(const Matrix3& m) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!m(i, j).is_zero()) {
          if (m(i, j).is_one()) return m;
          return m * m(i, j).inverse();
        }
    fail(ErrorKind::SingularMatrix, "zero matrix");
  }

  static std::string make_key(const Matrix3& m) {
    std::string s;
    for (const auto& row : m.rows())
      for (const auto& x : row) {
        s += x.key();
        s += '|';
      }
    return s;
  }

  Matrix3 lift_;
  Matrix3 canonical_;
  std::string key_;
};

inline ProjElement proj_mul(const ProjElement& g, const ProjElement& h) { return g * h; }
inline bool proj_eq(const ProjElement& g, const ProjElement& h) { return g == h; }
inline ProjElement galois_sigma(const ProjElement& g) { return g.sigma(); }

/// Least k <= max_order with g^k = 1 in PGL_3.
inline int proj_order(const ProjElement& g, int max_order = kDefaultMaxOrder) {
  if (max_order < 1) fail(ErrorKind::InvalidInput, "max_order must be >= 1");
  ProjElement p = g;
  for (int k = 1; k <= max_order; ++k) {
    if (p.is_identity()) return k;
    p = p * g;
  }
  fail(ErrorKind::OrderNotFound, "no order <= " + std::to_string(max_order));
}

/// det(tI - M) = t^3 - e1 t^2 + e2 t - e3.
struct CharPoly {
  Cyclo e1, e2, e3;

  long conductor() const { return e1.conductor(); }
  CharPoly embedded(long n) const { return {e1.embed(n), e2.embed(n), e3.embed(n)}; }
  bool is_real() const { return e1.is_real() && e2.is_real() && e3.is_real(); }

  /// Coefficients of t^0..t^3.
  std::array<Cyclo, 4> coefficients() const {
    return {-e3, e2, -e1, Cyclo::one(conductor())};
  }

  /// Char poly of c*M, i.e. c^3 f(t/c).
  CharPoly scaled(const Cyclo& c) const {
    const long n = lcm_conductor(conductor(), c.conductor());
    const Cyclo s = c.embed(n);
    return {e1.embed(n) * s, e2.embed(n) * s * s, e3.embed(n) * s * s * s};
  }

  friend bool operator==(const CharPoly& a, const CharPoly& b) {
    const long n = lcm_conductor(a.conductor(), b.conductor());
    const CharPoly x = a.embedded(n), y = b.embedded(n);
    return x.e1 == y.e1 && x.e2 == y.e2 && x.e3 == y.e3;
  }
};

inline CharPoly charpoly(const Matrix3& m) {
  Cyclo e2 = m.minor(0, 1, 0, 1) + m.minor(0, 2, 0, 2) + m.minor(1, 2, 1, 2);
  return {m.trace(), std::move(e2), m.det()};
}

/// True iff q(t) = c^3 p(t/c) for some nonzero complex c.
///
/// Writing e_k for the symmetric functions, the relation reads
/// e_k(q) = c^k e_k(p). When e1(p) != 0 the ratio fixes c; when e1 vanishes
/// but e2, e3 do not, c = (e3 ratio)/(e2 ratio). If at most one of e2, e3 is
/// nonzero a complex root always exists, so matching zero patterns suffice.
/// The identities are cross-multiplied so no inverse is ever taken.
inline bool charpoly_class_eq(const CharPoly& p0, const CharPoly& q0) {
  const long n = lcm_conductor(p0.conductor(), q0.conductor());
  const CharPoly p = p0.embedded(n), q = q0.embedded(n);
  if (p.e1.is_zero() != q.e1.is_zero() || p.e2.is_zero() != q.e2.is_zero() ||
      p.e3.is_zero() != q.e3.is_zero())
    return false;
  if (!p.e1.is_zero()) {
    // c = q1/p1
    const Cyclo p1sq = p.e1 * p.e1, q1sq = q.e1 * q.e1;
    return q.e2 * p1sq == p.e2 * q1sq && q.e3 * p1sq * p.e1 == p.e3 * q1sq * q.e1;
  }
  if (!p.e2.is_zero() && !p.e3.is_zero()) {
    // c = (q3 p2)/(p3 q2), and q2 = c^2 p2 is the only remaining condition
    const Cyclo p2sq = p.e2 * p.e2, q3sq = q.e3 * q.e3;
    return q.e2 * q.e2 * q.e2 * p.e3 * p.e3 == q3sq * p2sq * p.e2;
  }
  return true;
}

using ExponentPair = std::pair<int, int>;

/// All (a, b) in [0, n)^2 such that the eigenvalues of a lift of g are
/// {c, c zeta_n^a, c zeta_n^b} for some c. Requires ord(g) | n.
inline std::set<ExponentPair> eigenratio_class(const ProjElement& g, int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "n must be >= 1");
  int ord = 0;
  try {
    ord = proj_order(g, n);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OrderNotFound) throw;
    fail(ErrorKind::NotFiniteOrder, "element order does not divide " + std::to_string(n));
  }
  if (n % ord != 0)
    fail(ErrorKind::NotFiniteOrder, "element order " + std::to_string(ord) + " does not divide " + std::to_string(n));
  const long cond = lcm_conductor(g.conductor(), n);
  const CharPoly f = charpoly(g.lift().embedded(cond));
  std::set<ExponentPair> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Cyclo za = Cyclo::zeta(cond, a * (cond / n)), zb = Cyclo::zeta(cond, b * (cond / n));
      const Cyclo zab = za * zb;
      const CharPoly d{Cyclo::one(cond) + za + zb, za + zb + zab, zab};
      if (charpoly_class_eq(d, f)) out.emplace(a, b);
    }
  return out;
}

namespace detail {

inline std::multiset<int> exponent_multiset(int n, int a, int b, int shift = 0) {
  auto m = [n](long x) { return static_cast<int>(((x % n) + n) % n); };
  return {m(shift), m(a + shift), m(b + shift)};
}

} // namespace detail

/// Necessary condition for PGL_3-conjugacy: the eigenvalue multisets agree
/// up to one common scalar. Candidate scalars are the ratios between an
/// eigenvalue of g and one of h, i.e. exponent shifts modulo n. A false
/// result certifies non-conjugacy; true is only necessary in general.
inline bool conjugacy_necessary(const ProjElement& g, const ProjElement& h, int n) {
  const auto pg = eigenratio_class(g, n);
  const auto ph = eigenratio_class(h, n);
  const auto [a, b] = *pg.begin();
  const auto [c, d] = *ph.begin();
  const auto target = detail::exponent_multiset(n, c, d);
  for (int x : {0, a, b})
    for (int y : {0, c, d}) {
      // scalar zeta^(y - x) sends the eigenvalue zeta^x to zeta^y
      if (detail::exponent_multiset(n, a, b, y - x) == target) return true;
    }
  return false;
}

} // namespace pgl3
