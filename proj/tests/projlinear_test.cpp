#include <gtest/gtest.h>

#include <random>

#include "pgl3/primitive.hpp"
#include "pgl3/projlinear.hpp"
#include "support/oracle.hpp"

using namespace pgl3;

namespace {

Matrix3 random_invertible(std::mt19937_64& rng, long n, bool with_roots = false) {
  std::uniform_int_distribution<int> d(-3, 3), e(0, static_cast<int>(n) - 1);
  for (;;) {
    Matrix3::Rows r;
    for (auto& row : r)
      for (auto& x : row) x = with_roots ? Cyclo::zeta(n, e(rng)) * Rational(d(rng)) : Cyclo::rational(n, d(rng));
    Matrix3 m(r);
    if (!m.det().is_zero()) return m;
  }
}

ProjElement diag(long n, long a, long b, long c) { return ProjElement(Matrix3::diag_zeta(n, a, b, c)); }

} // namespace

TEST(ProjElement, Multiplication) {
  std::mt19937_64 rng(1);
  const ProjElement m(random_invertible(rng, 5, true));
  EXPECT_EQ(ProjElement::identity(5) * m, m);
  EXPECT_TRUE(diag(3, 0, 1, 2).pow(3).is_identity());
  EXPECT_TRUE(ProjElement(Matrix3::permutation({1, 2, 0})).pow(3).is_identity());
}

TEST(ProjElement, Equality) {
  const Cyclo two = Cyclo::rational(1, 2);
  EXPECT_EQ(ProjElement(Matrix3::diag(two, two, two)), ProjElement::identity());
  EXPECT_NE(ProjElement(Matrix3::diag(Cyclo::one(1), Cyclo::one(1), Cyclo::rational(1, -1))), ProjElement::identity());
  // sigma V = 3 V^-1 in PGL3
  const Matrix3 v = HessianGenerators::standard().V.lift();
  EXPECT_EQ(ProjElement(v.adjugate() * Cyclo::rational(v.conductor(), 3)), ProjElement(v.conj()));
  EXPECT_EQ(ProjElement(v).sigma(), ProjElement(v).inverse());
}

TEST(ProjElement, SingularRejected) {
  try {
    ProjElement p(Matrix3::zero(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularMatrix);
  }
}

TEST(ProjElement, GaloisSigma) {
  EXPECT_EQ(galois_sigma(diag(5, 0, 1, -1)), diag(5, 0, -1, 1));
  const ProjElement real(Matrix3::permutation({2, 0, 1}, 7));
  EXPECT_EQ(galois_sigma(real), real);
  const ProjElement s = HessianGenerators::standard().S;
  EXPECT_EQ(galois_sigma(s), s.inverse());
}

TEST(ProjElement, Order) {
  EXPECT_EQ(proj_order(ProjElement::identity(4)), 1);
  EXPECT_EQ(proj_order(ProjElement(Matrix3::diag(Cyclo::one(1), Cyclo::one(1), Cyclo::rational(1, -1)))), 2);
  EXPECT_EQ(proj_order(HessianGenerators::standard().V), 4);
  // [[1,1,0],[0,1,0],[0,0,1]] has infinite order
  Matrix3::Rows r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = Cyclo::rational(1, i == j || (i == 0 && j == 1) ? 1 : 0);
  try {
    (void)proj_order(ProjElement(Matrix3(r)), 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderNotFound);
  }
}

TEST(CharPoly, Examples) {
  const CharPoly id = charpoly(Matrix3::identity(1));
  const auto c = id.coefficients();
  EXPECT_EQ(c[0], Cyclo::rational(1, -1));
  EXPECT_EQ(c[1], Cyclo::rational(1, 3));
  EXPECT_EQ(c[2], Cyclo::rational(1, -3));
  EXPECT_TRUE(c[3].is_one());

  const CharPoly p = charpoly(Matrix3::diag_zeta(5, 0, 1, 4));
  EXPECT_TRUE(p.is_real());
  // (t - 1)(t^2 - (z + z^4) t + 1)
  const Cyclo w = Cyclo::zeta(5, 1) + Cyclo::zeta(5, 4);
  EXPECT_EQ(p.e1, Cyclo::one(5) + w);
  EXPECT_EQ(p.e2, Cyclo::one(5) + w);
  EXPECT_TRUE(p.e3.is_one());

  EXPECT_FALSE(charpoly(Matrix3::diag_zeta(5, 3, 4, 2)).is_real());
}

TEST(CharPoly, ClassEquality) {
  const CharPoly p = charpoly(Matrix3::diag_zeta(5, 0, 1, 4));
  EXPECT_TRUE(charpoly_class_eq(p, p));
  EXPECT_FALSE(charpoly_class_eq(p, charpoly(Matrix3::diag_zeta(5, 0, 2, 3))));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const Matrix3 m = random_invertible(rng, 3, true);
    EXPECT_TRUE(charpoly_class_eq(charpoly(m), charpoly(m * Cyclo::zeta(3, 1))));
  }
}

TEST(CharPoly, ClassDegenerateBranches) {
  // e1 = 0: diag(1, z3, z3^2) and its scalings
  const CharPoly p = charpoly(Matrix3::diag_zeta(3, 0, 1, 2));
  EXPECT_TRUE(p.e1.is_zero());
  EXPECT_TRUE(charpoly_class_eq(p, charpoly(Matrix3::diag_zeta(3, 0, 1, 2).embedded(12) * Cyclo::zeta(12, 1))));
  EXPECT_FALSE(charpoly_class_eq(p, charpoly(Matrix3::identity(3))));
}

TEST(EigenratioClass, Examples) {
  EXPECT_TRUE(eigenratio_class(diag(5, 0, 1, 4), 5).count({1, 4}));
  EXPECT_TRUE(eigenratio_class(diag(5, 3, 4, 2), 5).count({1, 4}));
  EXPECT_TRUE(eigenratio_class(diag(3, 0, 0, 1), 3).count({0, 1}));
  const ProjElement h(Matrix3::diag_zeta(3, 2, 2, 0));
  EXPECT_TRUE(eigenratio_class(h, 3).count({0, 1}));
  try {
    (void)eigenratio_class(diag(7, 0, 1, 3), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFiniteOrder);
  }
}

// Numeric eigenvalues of a conjugated diagonal element give the same pairs.
TEST(EigenratioClass, MatchesNumericEigenvalues) {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 12; ++n) {
    std::uniform_int_distribution<int> e(0, n - 1);
    for (int t = 0; t < 3; ++t) {
      const int a = e(rng), b = e(rng);
      if (std::gcd(std::gcd(a, b), n) != 1) continue;
      const Matrix3 p = random_invertible(rng, n);
      const Matrix3 m = p.adjugate() * Matrix3::diag_zeta(n, 0, a, b) * p;
      const auto exact = eigenratio_class(ProjElement(m), n);
      EXPECT_EQ(exact, oracle::eigen_pairs(m, n)) << n << " " << a << " " << b;
    }
  }
}

TEST(ConjugacyNecessary, Examples) {
  const ProjElement h = diag(3, 0, 0, 1);
  EXPECT_FALSE(conjugacy_necessary(h, h.inverse(), 3));
  const ProjElement a = diag(5, 0, 1, 4);
  EXPECT_TRUE(conjugacy_necessary(a, a.inverse(), 5));
  const ProjElement g = diag(7, 0, 1, 3);
  EXPECT_TRUE(conjugacy_necessary(g, g, 7));
  EXPECT_FALSE(conjugacy_necessary(g, g.inverse(), 7));
}

TEST(ProjlinearProperties, ClassesAndGalois) {
  std::mt19937_64 rng(8);
  const long n = 12;
  for (int t = 0; t < 15; ++t) {
    const Matrix3 m1 = random_invertible(rng, n, true), m2 = random_invertible(rng, n, true);
    const Cyclo c = Cyclo::zeta(n, t) * Rational(t + 2);
    // multiplication is well defined on classes
    EXPECT_EQ(ProjElement(m1 * c) * ProjElement(m2), ProjElement(m1) * ProjElement(m2 * c));
    // sigma is an involutive automorphism
    const ProjElement g(m1), h(m2);
    EXPECT_EQ((g * h).sigma(), g.sigma() * h.sigma());
    EXPECT_EQ(g.sigma().sigma(), g);
    // charpoly class is conjugation invariant
    const Matrix3 p = random_invertible(rng, n);
    EXPECT_TRUE(charpoly_class_eq(charpoly(m1), charpoly(p.adjugate() * m1 * p)));
  }
}

TEST(ProjlinearProperties, EigenratioStableUnderScalingAndConjugation) {
  std::mt19937_64 rng(9);
  for (int n = 3; n <= 12; ++n) {
    const ProjElement g = diag(n, 0, 1, n - 1);
    const ProjElement scaled(g.lift() * (Cyclo::zeta(n, 2) * Rational(5)));
    EXPECT_EQ(eigenratio_class(g, n), eigenratio_class(scaled, n));
    const ProjElement p(random_invertible(rng, n));
    EXPECT_EQ(proj_order(p.conjugate(g)), proj_order(g));
  }
}
