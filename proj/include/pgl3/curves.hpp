#pragma once

// Plane curves F(X, Y, Z) = 0 with cyclotomic coefficients: projective
// substitution, invariance under finite groups, Galois conjugate curves,
// and the smoothness / field-of-moduli checks for the quintic family
//
//     X^5 + Y^5 + Z^5 + i a X (YZ)^2 + i b X^3 (YZ),   a, b rational, nonzero.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pgl3/cyclotomic.hpp"
#include "pgl3/descent.hpp"
#include "pgl3/error.hpp"
#include "pgl3/finitegroup.hpp"
#include "pgl3/poly.hpp"
#include "pgl3/projlinear.hpp"

namespace pgl3 {

using Exponents = std::array<int, 3>;

class HomogeneousPolynomial {
public:
  using Terms = std::map<Exponents, Cyclo>;

  HomogeneousPolynomial() = default;
  HomogeneousPolynomial(int degree, long conductor) : degree_(degree), conductor_(conductor) {
    if (degree < 0) fail(ErrorKind::InvalidInput, "negative degree");
  }

  static HomogeneousPolynomial monomial(const Exponents& e, const Cyclo& c) {
    HomogeneousPolynomial p(e[0] + e[1] + e[2], c.conductor());
    p.add_term(e, c);
    return p;
  }

  /// X, Y or Z.
  static HomogeneousPolynomial variable(int i, long conductor) {
    Exponents e{0, 0, 0};
    e.at(static_cast<std::size_t>(i)) = 1;
    return monomial(e, Cyclo::one(conductor));
  }

  int degree() const { return degree_; }
  long conductor() const { return conductor_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Cyclo coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Cyclo::zero(conductor_) : it->second;
  }

  void add_term(const Exponents& e, const Cyclo& c) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree_)
      fail(ErrorKind::InvalidInput, "monomial exponents must be >= 0 and sum to the degree");
    lift_to(c.conductor());
    const Cyclo v = coeff(e) + c.embed(conductor_);
    if (v.is_zero())
      terms_.erase(e);
    else
      terms_[e] = v;
  }

  HomogeneousPolynomial embedded(long n) const {
    HomogeneousPolynomial r = *this;
    r.lift_to(n);
    return r;
  }

  friend HomogeneousPolynomial operator+(HomogeneousPolynomial a, const HomogeneousPolynomial& b) {
    if (a.degree_ != b.degree_ && !a.is_zero() && !b.is_zero())
      fail(ErrorKind::InvalidInput, "sum of forms of different degrees");
    if (a.is_zero()) a.degree_ = b.degree_;
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }

  HomogeneousPolynomial operator-() const { return (*this) * Cyclo::rational(conductor_, -1); }

  friend HomogeneousPolynomial operator-(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    return a + (-b);
  }

  friend HomogeneousPolynomial operator*(const HomogeneousPolynomial& a, const Cyclo& s) {
    const long n = lcm_conductor(a.conductor_, s.conductor());
    HomogeneousPolynomial r(a.degree_, n);
    const Cyclo t = s.embed(n);
    for (const auto& [e, c] : a.terms_) r.add_term(e, c.embed(n) * t);
    return r;
  }

  friend HomogeneousPolynomial operator*(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    const long n = lcm_conductor(a.conductor_, b.conductor_);
    HomogeneousPolynomial r(a.degree_ + b.degree_, n);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca.embed(n) * cb.embed(n));
    return r;
  }

  HomogeneousPolynomial pow(int e) const {
    if (e < 0) fail(ErrorKind::InvalidInput, "negative exponent");
    HomogeneousPolynomial acc = monomial({0, 0, 0}, Cyclo::one(conductor_));
    for (int k = 0; k < e; ++k) acc = acc * (*this);
    return acc;
  }

  friend bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) return false;
    const long n = lcm_conductor(a.conductor_, b.conductor_);
    for (const auto& [e, c] : a.terms_) {
      auto it = b.terms_.find(e);
      if (it == b.terms_.end() || c.embed(n) != it->second.embed(n)) return false;
    }
    return true;
  }

  /// c with other = c * this, if any.
  std::optional<Cyclo> proportionality(const HomogeneousPolynomial& other) const {
    if (is_zero() || other.is_zero()) return std::nullopt;
    if (degree_ != other.degree_ || terms_.size() != other.terms_.size()) return std::nullopt;
    const long n = lcm_conductor(conductor_, other.conductor_);
    const auto& [e0, c0] = *terms_.begin();
    const Cyclo c = other.coeff(e0).embed(n) / c0.embed(n);
    if (c.is_zero()) return std::nullopt;
    return (*this) * c == other ? std::optional<Cyclo>(c) : std::nullopt;
  }

  /// Entrywise complex conjugate of the coefficients.
  HomogeneousPolynomial sigma() const {
    HomogeneousPolynomial r(degree_, conductor_);
    for (const auto& [e, c] : terms_) r.add_term(e, c.conj());
    return r;
  }

  /// Partial derivative with respect to variable i (0 = X, 1 = Y, 2 = Z).
  HomogeneousPolynomial partial(int i) const {
    const auto k = static_cast<std::size_t>(i);
    if (i < 0 || i > 2) fail(ErrorKind::InvalidInput, "variable index must be 0, 1 or 2");
    HomogeneousPolynomial r(degree_ > 0 ? degree_ - 1 : 0, conductor_);
    for (const auto& [e, c] : terms_) {
      if (e[k] == 0) continue;
      Exponents f = e;
      --f[k];
      r.add_term(f, c * Rational(e[k]));
    }
    return r;
  }

  Cyclo eval(const std::array<Cyclo, 3>& p) const {
    long n = conductor_;
    for (const auto& x : p) n = lcm_conductor(n, x.conductor());
    Cyclo acc = Cyclo::zero(n);
    for (const auto& [e, c] : terms_) {
      Cyclo t = c.embed(n);
      for (std::size_t i = 0; i < 3; ++i) t *= p[i].embed(n).pow(e[i]);
      acc += t;
    }
    return acc;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << it->second.str() << ")";
      static const char* names[3] = {"X", "Y", "Z"};
      for (std::size_t i = 0; i < 3; ++i)
        if (it->first[i] > 0) os << "*" << names[i] << (it->first[i] > 1 ? "^" + std::to_string(it->first[i]) : "");
    }
    return os.str();
  }

private:
  void lift_to(long n) {
    const long m = lcm_conductor(conductor_, n);
    if (m == conductor_) return;
    for (auto& [e, c] : terms_) c = c.embed(m);
    conductor_ = m;
  }

  int degree_ = 0;
  long conductor_ = 1;
  Terms terms_;
};

/// F(g X): the variables are replaced by the linear forms of the rows of a lift.
inline HomogeneousPolynomial transform(const HomogeneousPolynomial& f, const ProjElement& g) {
  const long n = lcm_conductor(f.conductor(), g.conductor());
  const Matrix3 m = g.lift().embedded(n);
  std::array<std::vector<HomogeneousPolynomial>, 3> powers;
  for (int i = 0; i < 3; ++i) {
    HomogeneousPolynomial form(1, n);
    for (int j = 0; j < 3; ++j) form = form + HomogeneousPolynomial::variable(j, n) * m(i, j);
    auto& pw = powers[static_cast<std::size_t>(i)];
    pw.push_back(HomogeneousPolynomial::monomial({0, 0, 0}, Cyclo::one(n)));
    for (int k = 1; k <= f.degree(); ++k) pw.push_back(pw.back() * form);
  }
  HomogeneousPolynomial out(f.degree(), n);
  for (const auto& [e, c] : f.terms())
    out = out + powers[0][static_cast<std::size_t>(e[0])] * powers[1][static_cast<std::size_t>(e[1])] *
                    powers[2][static_cast<std::size_t>(e[2])] * c;
  return out;
}

inline bool is_invariant(const HomogeneousPolynomial& f, const ProjElement& g) {
  return f.proportionality(transform(f, g)).has_value();
}

inline bool aut_contains(const HomogeneousPolynomial& f, const FiniteSubgroup& g) {
  for (const auto& e : g.generators())
    if (!is_invariant(f, e)) return false;
  for (const auto& e : g.elements())
    if (!is_invariant(f, e)) return false;
  return true;
}

inline HomogeneousPolynomial sigma_curve(const HomogeneousPolynomial& f) { return f.sigma(); }

/// Aut(sigma C) contains sigma G whenever Aut(C) contains G.
inline bool aut_sigma_compat(const HomogeneousPolynomial& f, const FiniteSubgroup& g) {
  if (!aut_contains(f, g)) fail(ErrorKind::PreconditionFailed, "G is not contained in Aut(F)");
  return aut_contains(sigma_curve(f), sigma_image(g));
}

// ---------------------------------------------------------------------------
// Bivariate polynomials and resultants

using ZPoly = Poly<Cyclo>;       // polynomials in Z
using XZPoly = Poly<ZPoly>;      // polynomials in X with coefficients in Z

/// F restricted to Y = 1 as a polynomial in X over Q(zeta)[Z].
inline XZPoly dehomogenize_y(const HomogeneousPolynomial& f) {
  const long n = f.conductor();
  std::vector<std::vector<Cyclo>> grid(static_cast<std::size_t>(f.degree()) + 1,
                                       std::vector<Cyclo>(static_cast<std::size_t>(f.degree()) + 1, Cyclo::zero(n)));
  for (const auto& [e, c] : f.terms())
    grid[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(e[2])] += c;
  std::vector<ZPoly> xs;
  for (auto& row : grid) xs.emplace_back(std::move(row));
  return XZPoly(std::move(xs));
}

/// F restricted to Y = 1, Z = z, as a polynomial in X.
inline ZPoly specialize_y1(const HomogeneousPolynomial& f, const Cyclo& z) {
  const long n = lcm_conductor(f.conductor(), z.conductor());
  std::vector<Cyclo> xs(static_cast<std::size_t>(f.degree()) + 1, Cyclo::zero(n));
  for (const auto& [e, c] : f.terms())
    xs[static_cast<std::size_t>(e[0])] += c.embed(n) * z.embed(n).pow(e[2]);
  return ZPoly(std::move(xs));
}

/// Res_X(p, q) as a polynomial in Z; rows of p come first in the Sylvester matrix.
inline ZPoly resultant_x(const XZPoly& p, const XZPoly& q, long conductor) {
  if (p.is_zero() || q.is_zero())
    fail(ErrorKind::ZeroLeadingCoefficient, "resultant of a zero polynomial");
  return resultant(p, q, ZPoly(), ZPoly::constant(Cyclo::one(conductor)));
}

/// Homogeneous resultant of two binary forms in (X, Z) of the given formal
/// degrees, from the coefficients at Y = 0. Nonzero iff no common zero in P^1.
inline Cyclo binary_form_resultant_y0(const HomogeneousPolynomial& f, const HomogeneousPolynomial& g) {
  const long n = lcm_conductor(f.conductor(), g.conductor());
  auto coeffs = [n](const HomogeneousPolynomial& h) {
    std::vector<Cyclo> v(static_cast<std::size_t>(h.degree()) + 1, Cyclo::zero(n));
    for (const auto& [e, c] : h.terms())
      if (e[1] == 0) v[static_cast<std::size_t>(e[0])] += c.embed(n);
    return v;
  };
  const auto fc = coeffs(f), gc = coeffs(g);
  if (std::all_of(fc.begin(), fc.end(), [](const Cyclo& c) { return c.is_zero(); }) ||
      std::all_of(gc.begin(), gc.end(), [](const Cyclo& c) { return c.is_zero(); }))
    return Cyclo::zero(n);
  return determinant(sylvester_matrix(fc, gc, Cyclo::zero(n)), Cyclo::zero(n), Cyclo::one(n));
}

// ---------------------------------------------------------------------------
// The quintic family

inline constexpr long kCurveConductor = 20;

struct QuinticFamilyMember {
  Rational a, b;
  HomogeneousPolynomial polynomial;

  static QuinticFamilyMember make(const Rational& a, const Rational& b) {
    if (sgn(a) == 0 || sgn(b) == 0) fail(ErrorKind::BadParameters, "a and b must be nonzero");
    const long n = kCurveConductor;
    const Cyclo i = Cyclo::zeta(n, n / 4), one = Cyclo::one(n);
    HomogeneousPolynomial f(5, n);
    f.add_term({5, 0, 0}, one);
    f.add_term({0, 5, 0}, one);
    f.add_term({0, 0, 5}, one);
    f.add_term({1, 2, 2}, i * a);
    f.add_term({3, 1, 1}, i * b);
    return {a, b, f};
  }
};

inline HomogeneousPolynomial fermat(int degree, long conductor = kCurveConductor) {
  HomogeneousPolynomial f(degree, conductor);
  for (int i = 0; i < 3; ++i) {
    Exponents e{0, 0, 0};
    e[static_cast<std::size_t>(i)] = degree;
    f.add_term(e, Cyclo::one(conductor));
  }
  return f;
}

inline ProjElement quintic_rho1() { return ProjElement(Matrix3::diag_zeta(5, 0, 1, -1).embedded(kCurveConductor)); }
inline ProjElement quintic_rho2() { return ProjElement(Matrix3::permutation({0, 2, 1}, kCurveConductor)); }

/// D10 = <diag(1, z5, z5^-1), [X:Z:Y]>.
inline FiniteSubgroup quintic_d10() { return closure({quintic_rho1(), quintic_rho2()}); }

/// -125 i b^3 (Z^5 - 1)^3.
inline ZPoly expected_quintic_resultant(const Rational& b) {
  const long n = kCurveConductor;
  std::vector<Cyclo> z5m1(6, Cyclo::zero(n));
  z5m1[0] = Cyclo::rational(n, -1);
  z5m1[5] = Cyclo::one(n);
  const Rational scale = Rational(-125) * b * b * b;
  return ZPoly(std::move(z5m1)).pow(3) * (Cyclo::zeta(n, n / 4) * scale);
}

inline ZPoly quintic_resultant(const QuinticFamilyMember& m) {
  const XZPoly f1 = dehomogenize_y(m.polynomial.partial(1));
  const XZPoly f2 = dehomogenize_y(m.polynomial.partial(2));
  return resultant_x(f1, f2, m.polynomial.conductor());
}

struct FiberCertificate {
  int k = 0;                 // fibre Z = zeta5^k
  int gcd_fy_fz_degree = 0;  // deg gcd(F_Y, F_Z)
  int gcd_with_f_degree = 0;
  int gcd_with_fx_degree = 0;
  bool smooth() const { return gcd_with_fx_degree == 0; }
};

struct SmoothnessCertificate {
  Cyclo y0_resultant;            // resultant of F_X, F_Z on Y = 0
  bool y0_ok = false;
  ZPoly resultant;               // Res_X(F_Y(X,1,Z), F_Z(X,1,Z))
  bool resultant_matches = false;
  std::vector<FiberCertificate> fibers;
  bool smooth = false;
};

inline SmoothnessCertificate smoothness_check_quintic(const QuinticFamilyMember& m) {
  if (sgn(m.a) == 0 || sgn(m.b) == 0) fail(ErrorKind::BadParameters, "a and b must be nonzero");
  const auto& f = m.polynomial;
  const auto fx = f.partial(0), fy = f.partial(1), fz = f.partial(2);
  SmoothnessCertificate cert;

  // No common zero of F_X and F_Z on the line Y = 0.
  cert.y0_resultant = binary_form_resultant_y0(fx, fz);
  cert.y0_ok = !cert.y0_resultant.is_zero();

  // Off Y = 0 a singular point lies over a root of the resultant, which
  // must be one of the fifth roots of unity.
  cert.resultant = quintic_resultant(m);
  cert.resultant_matches = cert.resultant == expected_quintic_resultant(m.b);

  bool fibers_ok = true;
  for (int k = 0; k < 5; ++k) {
    const Cyclo z = Cyclo::zeta(5, k).embed(kCurveConductor);
    FiberCertificate fc;
    fc.k = k;
    ZPoly g = gcd(specialize_y1(fy, z), specialize_y1(fz, z));
    fc.gcd_fy_fz_degree = g.degree();
    g = gcd(g, specialize_y1(f, z));
    fc.gcd_with_f_degree = g.degree();
    g = gcd(g, specialize_y1(fx, z));
    fc.gcd_with_fx_degree = g.degree();
    fibers_ok = fibers_ok && fc.smooth();
    cert.fibers.push_back(fc);
  }
  cert.smooth = cert.y0_ok && cert.resultant_matches && fibers_ok;
  return cert;
}

struct CandidateTrace {
  std::string shape;   // "diag(1,a,b)" or "[X:aZ:bY]"
  int alpha_exp = 0;   // alpha = zeta5^alpha_exp
  int beta_exp = 0;
  bool isomorphism = false;
  std::string failure;  // first coefficient equation that fails
};

struct ModuliObstructionResult {
  bool obstructed = false;
  std::vector<std::string> checkpoints;
  std::vector<CandidateTrace> trace;
};

namespace detail {

inline std::string monomial_name(const Exponents& e) {
  std::string s;
  static const char* names[3] = {"X", "Y", "Z"};
  for (std::size_t i = 0; i < 3; ++i)
    if (e[i] > 0) s += std::string(names[i]) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  return s.empty() ? "1" : s;
}

// First monomial where transform(F, phi) and target differ, after fixing the
// scale by the X^5 coefficient.
inline std::string first_mismatch(const HomogeneousPolynomial& moved, const HomogeneousPolynomial& target) {
  const long n = lcm_conductor(moved.conductor(), target.conductor());
  const Cyclo cx = moved.coeff({5, 0, 0}).embed(n);
  if (cx.is_zero()) return "X^5 coefficient vanishes";
  const Cyclo c = target.coeff({5, 0, 0}).embed(n) / cx;
  std::map<Exponents, int> keys;
  for (const auto& [e, v] : moved.terms()) keys[e] = 1;
  for (const auto& [e, v] : target.terms()) keys[e] = 1;
  for (const auto& [e, unused] : keys) {
    const Cyclo lhs = moved.coeff(e).embed(n) * c, rhs = target.coeff(e).embed(n);
    if (lhs != rhs) return monomial_name(e) + ": " + lhs.str() + " != " + rhs.str();
  }
  return "";
}

} // namespace detail

/// Search phi = diag(1, a, b) and [X:aZ:bY], a and b fifth roots of unity,
/// for transform(F, phi) proportional to the target form.
inline std::vector<CandidateTrace> normalizer_candidate_search(const HomogeneousPolynomial& f,
                                                               const HomogeneousPolynomial& target) {
  const long n = kCurveConductor;
  std::vector<CandidateTrace> trace;
  for (int shape = 0; shape < 2; ++shape)
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        const Cyclo al = Cyclo::zeta(5, i).embed(n), be = Cyclo::zeta(5, j).embed(n);
        const Cyclo z = Cyclo::zero(n), one = Cyclo::one(n);
        const Matrix3 phi = shape == 0 ? Matrix3::diag(one, al, be)
                                       : Matrix3(Matrix3::Rows{{{one, z, z}, {z, z, al}, {z, be, z}}});
        const HomogeneousPolynomial moved = transform(f, ProjElement(phi));
        CandidateTrace t{shape == 0 ? "diag(1,a,b)" : "[X:aZ:bY]", i, j, false, ""};
        t.isomorphism = moved.proportionality(target).has_value();
        if (!t.isomorphism) t.failure = detail::first_mismatch(moved, target);
        trace.push_back(std::move(t));
      }
  return trace;
}

/// C and sigma C are not isomorphic through the normalizer of D10.
inline ModuliObstructionResult moduli_obstruction_quintic(const QuinticFamilyMember& m) {
  if (!aut_contains(m.polynomial, quintic_d10()))
    fail(ErrorKind::PreconditionFailed, "D10 is not contained in Aut(C)");
  ModuliObstructionResult out;
  const long n = kCurveConductor;

  // rho1 can only be sent to rho1^{+-1}: the other generators of <rho1> have
  // eigenvalue patterns no scalar matches.
  const std::vector<Cyclo> rho{Cyclo::one(n), Cyclo::zeta(5, 1).embed(n), Cyclo::zeta(5, -1).embed(n)};
  for (int k : {2, 3}) {
    const std::vector<Cyclo> other{Cyclo::one(n), Cyclo::zeta(5, k).embed(n), Cyclo::zeta(5, -k).embed(n)};
    out.checkpoints.push_back("{c, c z5, c z5^-1} != {1, z5^" + std::to_string(k) + ", z5^-" +
                              std::to_string(k) + "} for all c: " +
                              (scalar_multiset_match(rho, other) ? "FAILED" : "ok"));
  }
  out.checkpoints.push_back("phi normalizes <rho1>, so phi = diag(1,a,b) or [X:aZ:bY]");
  out.checkpoints.push_back("X^5 coefficient fixes the scalar to 1; Y^5 and Z^5 force a^5 = b^5 = 1");

  out.trace = normalizer_candidate_search(m.polynomial, sigma_curve(m.polynomial));
  out.obstructed = std::none_of(out.trace.begin(), out.trace.end(),
                                [](const CandidateTrace& t) { return t.isomorphism; });
  return out;
}

/// No diagonal diag(1, z5^i, z5^j) outside <rho1> preserves F.
inline bool rho3_diagonal_check(const HomogeneousPolynomial& f) {
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if ((i + j) % 5 == 0) continue;  // inside <rho1>
      if (is_invariant(f, ProjElement(Matrix3::diag_zeta(5, 0, i, j).embedded(kCurveConductor)))) return false;
    }
  return true;
}

} // namespace pgl3
