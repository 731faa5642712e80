#pragma once

// Thin RAII handle over MPFR for the numeric embedding of cyclotomic
// elements. Only the handful of operations the library needs are exposed.

#include <cstdio>

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

namespace pgl3 {

class BigFloat {
public:
  explicit BigFloat(long bits = 128) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_rational(const mpq_class& q, long bits) {
    BigFloat r(bits);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }

  /// 2^e at the given precision.
  static BigFloat pow2(long e, long bits) {
    BigFloat r(bits);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  /// (cos(2*pi*k/n), sin(2*pi*k/n))
  static std::pair<BigFloat, BigFloat> unit_root(long k, long n, long bits) {
    BigFloat angle(bits + 16), c(bits), s(bits);
    mpfr_const_pi(angle.v_, MPFR_RNDN);
    mpfr_mul_si(angle.v_, angle.v_, 2 * k, MPFR_RNDN);
    mpfr_div_si(angle.v_, angle.v_, n, MPFR_RNDN);
    mpfr_sin_cos(s.v_, c.v_, angle.v_, MPFR_RNDN);
    return {std::move(c), std::move(s)};
  }

  long precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  std::string str(int digits = 6) const {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
    return buf;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.precision(), b.precision()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat abs(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }

private:
  mpfr_t v_;
};

/// Complex value carried as a pair of MPFR reals.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  BigComplex conj() const { return {re, -im}; }

  /// max(|re|, |im|), enough for tolerance checks.
  BigFloat max_abs() const {
    BigFloat a = abs(re), b = abs(im);
    return a < b ? b : a;
  }

  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
};

} // namespace pgl3
