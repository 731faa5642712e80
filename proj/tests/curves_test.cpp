#include <gtest/gtest.h>

#include <random>

#include "pgl3/curves.hpp"
#include "support/oracle.hpp"

using namespace pgl3;

namespace {

constexpr long N = kCurveConductor;

HomogeneousPolynomial poly(int degree, std::initializer_list<std::pair<Exponents, Cyclo>> terms) {
  HomogeneousPolynomial f(degree, N);
  for (const auto& [e, c] : terms) f.add_term(e, c);
  return f;
}

Cyclo q(long num, long den = 1) { return Cyclo::rational(N, Rational(num, den)); }

QuinticFamilyMember member(long a, long b) { return QuinticFamilyMember::make(a, b); }

HomogeneousPolynomial random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<int> c(-3, 3), k(0, N - 1);
  HomogeneousPolynomial f(degree, N);
  for (int i = 0; i <= degree; ++i)
    for (int j = 0; i + j <= degree; ++j)
      f.add_term({i, j, degree - i - j}, q(c(rng)) * Cyclo::zeta(N, k(rng)));
  return f;
}

ProjElement random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-2, 2);
  for (;;) {
    Matrix3::Rows r;
    for (auto& row : r)
      for (auto& x : row) x = q(c(rng)) + q(c(rng)) * Cyclo::zeta(N, 5);
    Matrix3 m(r);
    if (!m.det().is_zero()) return ProjElement(m);
  }
}

bool proportional(const HomogeneousPolynomial& f, const HomogeneousPolynomial& g) {
  return f.proportionality(g).has_value();
}

} // namespace

TEST(Transform, Examples) {
  const auto f = fermat(5);
  EXPECT_EQ(transform(f, quintic_rho2()), f);
  EXPECT_EQ(transform(f, quintic_rho1()), f);
  HomogeneousPolynomial x3y(4, 3);
  x3y.add_term({3, 1, 0}, Cyclo::one(3));
  const auto moved = transform(x3y, ProjElement(Matrix3::diag_zeta(3, 0, 1, 0)));
  EXPECT_EQ(moved.coeff({3, 1, 0}), Cyclo::zeta(3, 1).embed(moved.conductor()));
  EXPECT_EQ(moved.terms().size(), 1u);
}

TEST(Invariance, QuinticMember) {
  const auto m = member(1, 2);
  EXPECT_TRUE(is_invariant(m.polynomial, quintic_rho1()));
  EXPECT_TRUE(is_invariant(m.polynomial, quintic_rho2()));
  const ProjElement d(Matrix3::diag_zeta(5, 0, 1, 0).embedded(N));
  EXPECT_FALSE(is_invariant(m.polynomial, d));
  EXPECT_TRUE(aut_contains(m.polynomial, quintic_d10()));
  EXPECT_TRUE(aut_contains(fermat(5), quintic_d10()));
  EXPECT_FALSE(aut_contains(m.polynomial, closure({d})));
  EXPECT_TRUE(rho3_diagonal_check(m.polynomial));
}

TEST(Sigma, Examples) {
  EXPECT_EQ(sigma_curve(fermat(5)), fermat(5));
  const auto m = member(1, 2);
  const auto s = sigma_curve(m.polynomial);
  const Cyclo i = Cyclo::zeta(N, N / 4);
  EXPECT_EQ(s.coeff({1, 2, 2}), -i);
  EXPECT_EQ(s.coeff({3, 1, 1}), -i * q(2));
  EXPECT_EQ(sigma_curve(s), m.polynomial);
}

TEST(Sigma, AutCompat) {
  EXPECT_TRUE(aut_sigma_compat(member(1, 2).polynomial, quintic_d10()));
  EXPECT_TRUE(aut_sigma_compat(fermat(5), quintic_d10()));
  const auto klein = poly(4, {{{3, 1, 0}, q(1)}, {{0, 3, 1}, q(1)}, {{1, 0, 3}, q(1)}});
  EXPECT_TRUE(aut_sigma_compat(klein, closure({ProjElement(Matrix3::permutation({1, 2, 0}, N))})));
  try {
    (void)aut_sigma_compat(klein, quintic_d10());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
  }
}

TEST(Resultant, QuinticFormula) {
  EXPECT_EQ(quintic_resultant(member(1, 1)), expected_quintic_resultant(1));
  EXPECT_EQ(quintic_resultant(member(2, 3)), expected_quintic_resultant(3));
  // -125 i (Z^5 - 1)^3, and b^3 = 27 scales it
  const ZPoly base = expected_quintic_resultant(1);
  EXPECT_EQ(base.degree(), 15);
  EXPECT_EQ(base.coeffs()[15], -q(125) * Cyclo::zeta(N, N / 4));
  EXPECT_EQ(base.coeffs()[0], q(125) * Cyclo::zeta(N, N / 4));
  EXPECT_EQ(expected_quintic_resultant(3), base * ZPoly::constant(q(27)));
}

TEST(Resultant, Multiplicative) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-3, 3);
  auto rnd = [&](int dx, int dz) {
    std::vector<ZPoly> xs;
    for (int i = 0; i <= dx; ++i) {
      std::vector<Cyclo> zs;
      for (int j = 0; j <= dz; ++j) zs.push_back(q(c(rng)) + q(c(rng)) * Cyclo::zeta(N, 1));
      if (i == dx) zs.back() = q(1);
      xs.push_back(ZPoly(zs));
    }
    return XZPoly(xs);
  };
  for (int t = 0; t < 5; ++t) {
    const XZPoly p = rnd(2, 1), a = rnd(1, 1), b = rnd(2, 1);
    EXPECT_EQ(resultant_x(p, a * b, N), resultant_x(p, a, N) * resultant_x(p, b, N));
  }
}

TEST(Smoothness, Examples) {
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 2}, {1, 1}, {2, 1}, {-2, 1}, {3, 7}}) {
    const auto cert = smoothness_check_quintic(member(a, b));
    EXPECT_TRUE(cert.smooth) << a << "," << b;
    EXPECT_TRUE(cert.y0_ok);
    EXPECT_TRUE(cert.resultant_matches);
    ASSERT_EQ(cert.fibers.size(), 5u);
    for (const auto& f : cert.fibers) EXPECT_EQ(f.gcd_with_fx_degree, 0);
  }
  EXPECT_THROW((void)QuinticFamilyMember::make(1, 0), Error);
  QuinticFamilyMember bad = member(1, 2);
  bad.b = 0;
  try {
    (void)smoothness_check_quintic(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadParameters);
  }
}

TEST(Smoothness, NumericOracleAgrees) {
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 2}, {1, 1}, {2, 1}, {-2, 1}, {3, 7}, {4, 2}}) {
    const auto m = member(a, b);
    ASSERT_TRUE(smoothness_check_quintic(m).smooth);
    EXPECT_GT(oracle::min_gradient_norm(m.polynomial, 100), 1e-4) << a << "," << b;
  }
  // negative control: a node at (0:0:1)
  const auto nodal = poly(5, {{{5, 0, 0}, q(1)}, {{0, 5, 0}, q(1)}, {{0, 2, 3}, q(1)}, {{2, 0, 3}, q(-1)}});
  EXPECT_LT(oracle::min_gradient_norm(nodal, 100), 1e-6);
}

TEST(Moduli, Examples) {
  const auto r = moduli_obstruction_quintic(member(1, 2));
  EXPECT_TRUE(r.obstructed);
  ASSERT_EQ(r.trace.size(), 50u);
  for (const auto& t : r.trace) {
    EXPECT_FALSE(t.isomorphism);
    EXPECT_FALSE(t.failure.empty());
  }
  EXPECT_TRUE(moduli_obstruction_quintic(member(1, 1)).obstructed);

  const auto self = normalizer_candidate_search(member(1, 2).polynomial, member(1, 2).polynomial);
  const auto hit = std::find_if(self.begin(), self.end(), [](const CandidateTrace& t) { return t.isomorphism; });
  ASSERT_NE(hit, self.end());
  EXPECT_EQ(hit->shape, "diag(1,a,b)");
  EXPECT_EQ(hit->alpha_exp, 0);
  EXPECT_EQ(hit->beta_exp, 0);

  try {
    QuinticFamilyMember f = member(1, 2);
    f.polynomial = poly(5, {{{5, 0, 0}, q(1)}, {{0, 4, 1}, q(1)}, {{0, 0, 5}, q(1)}});
    (void)moduli_obstruction_quintic(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
  }
}

TEST(Moduli, RandomPairs) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  int done = 0;
  while (done < 10) {
    const long a = num(rng), b = num(rng);
    if (a == 0 || b == 0) continue;
    const auto m = QuinticFamilyMember::make(Rational(a, den(rng)), Rational(b, den(rng)));
    if (!smoothness_check_quintic(m).smooth) continue;
    EXPECT_TRUE(moduli_obstruction_quintic(m).obstructed) << m.a << "," << m.b;
    ++done;
  }
}

TEST(CurveProperties, TransformComposition) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const auto f = random_poly(rng, 3);
    const auto g = random_element(rng), h = random_element(rng);
    EXPECT_TRUE(proportional(transform(transform(f, g), h), transform(f, g * h)));
  }
}

TEST(CurveProperties, InvarianceIsCovariant) {
  std::mt19937_64 rng(4);
  const auto m = member(1, 2).polynomial;
  const std::vector<ProjElement> gs{quintic_rho1(), quintic_rho2(),
                                    ProjElement(Matrix3::diag_zeta(5, 0, 1, 0).embedded(N))};
  for (int t = 0; t < 3; ++t) {
    const auto h = random_element(rng);
    const auto moved = transform(m, h);
    for (const auto& g : gs) EXPECT_EQ(is_invariant(m, g), is_invariant(moved, h.conjugate(g)));
  }
}
