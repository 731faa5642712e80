#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "pgl3/curves.hpp"
#include "pgl3/finitegroup.hpp"
#include "pgl3/primitive.hpp"

using namespace pgl3;

namespace {

const HessianGenerators& gens() {
  static const HessianGenerators g = HessianGenerators::standard();
  return g;
}

const FiniteSubgroup& hess(int which) {
  static const FiniteSubgroup h216 = build_hessian(216), h72 = build_hessian(72), h36 = build_hessian(36);
  return which == 216 ? h216 : which == 72 ? h72 : h36;
}

std::map<int, int> hist(std::initializer_list<std::pair<const int, int>> v) { return std::map<int, int>(v); }

} // namespace

TEST(Closure, Examples) {
  EXPECT_EQ(closure({ProjElement(Matrix3::diag_zeta(3, 0, 1, 2))}).order(), 3u);
  EXPECT_EQ(hess(216).order(), 216u);
  EXPECT_EQ(hess(36).order(), 36u);
  EXPECT_EQ(build_a5().order(), 60u);
}

TEST(Closure, CapSignalsLargeGroups) {
  Matrix3::Rows r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = Cyclo::rational(1, i == j || (i == 0 && j == 1) ? 1 : 0);
  try {
    (void)closure({ProjElement(Matrix3(r))});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ClosureExceedsCap);
  }
  EXPECT_THROW((void)closure({gens().S, gens().T, gens().U, gens().V}, 100), Error);
}

TEST(Fingerprint, Examples) {
  const auto d10 = fingerprint(quintic_d10());
  EXPECT_EQ(d10.order, 10u);
  EXPECT_EQ(d10.order_histogram, hist({{1, 1}, {2, 5}, {5, 4}}));
  EXPECT_FALSE(d10.abelian);
  // B A B = A^-1
  EXPECT_EQ(quintic_rho2() * quintic_rho1() * quintic_rho2(), quintic_rho1().inverse());

  const auto triv = fingerprint(closure({ProjElement::identity()}));
  EXPECT_EQ(triv.order, 1u);
  EXPECT_EQ(triv.order_histogram, hist({{1, 1}}));
  EXPECT_TRUE(triv.abelian);

  EXPECT_EQ(fingerprint(build_a5()).order_histogram, hist({{1, 1}, {2, 15}, {3, 20}, {5, 24}}));
}

TEST(Fingerprint, Hessians) {
  EXPECT_EQ(fingerprint(hess(216)).order_histogram, hist({{1, 1}, {2, 9}, {3, 80}, {4, 54}, {6, 72}}));
  EXPECT_EQ(fingerprint(hess(72)).order_histogram, hist({{1, 1}, {2, 9}, {3, 8}, {4, 54}}));
  EXPECT_EQ(fingerprint(hess(36)).order_histogram, hist({{1, 1}, {2, 9}, {3, 8}, {4, 18}}));
}

TEST(SigmaImage, Examples) {
  EXPECT_EQ(sigma_image(hess(216)), hess(216));
  const auto& g = gens();
  const FiniteSubgroup alt = closure({g.S, g.T, g.V, g.U.inverse() * g.V.inverse() * g.U});
  EXPECT_EQ(sigma_image(hess(72)), alt);
  // and that group is Hess72 itself
  EXPECT_EQ(alt, hess(72));
  const FiniteSubgroup real = closure({ProjElement(Matrix3::permutation({1, 2, 0})),
                                       ProjElement(Matrix3::permutation({0, 2, 1}))});
  EXPECT_EQ(sigma_image(real), real);
}

TEST(FindC3xC3, Examples) {
  const auto st = find_subgroup_C3xC3(hess(36));
  ASSERT_TRUE(st.has_value());
  EXPECT_EQ(st->first * st->second, st->second * st->first);
  EXPECT_EQ(closure({st->first, st->second}).order(), 9u);
  EXPECT_FALSE(find_subgroup_C3xC3(quintic_d10()).has_value());
  EXPECT_FALSE(find_subgroup_C3xC3(build_a5()).has_value());
}

TEST(ConjugacySearch, Examples) {
  const FiniteSubgroup s = closure({gens().S});
  const auto id = subgroup_conjugacy_search(s, s, hess(36));
  ASSERT_TRUE(id.has_value());
  EXPECT_TRUE(s.conjugated_by(*id) == s);

  const FiniteSubgroup sigma72 = sigma_image(hess(72));
  const auto psi = subgroup_conjugacy_search(hess(72), sigma72, hess(216));
  ASSERT_TRUE(psi.has_value());
  EXPECT_EQ(hess(72).conjugated_by(*psi), sigma72);

  // <S> and <T> are conjugate inside Hess36 (18 conjugators, element-wise count)
  const FiniteSubgroup t = closure({gens().T});
  const auto st = subgroup_conjugacy_search(s, t, hess(36));
  ASSERT_TRUE(st.has_value());
  EXPECT_EQ(s.conjugated_by(*st), t);
}

TEST(ConjugacySearch, RequiresSubgroups) {
  try {
    (void)subgroup_conjugacy_search(quintic_d10(), quintic_d10(), hess(36));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSubgroupOfAmbient);
  }
}

TEST(Normalizer, Examples) {
  EXPECT_EQ(normalizer_in(hess(36), hess(36)), hess(36));
  EXPECT_EQ(normalizer_in(closure({ProjElement::identity(12)}), hess(36)), hess(36));
  const FiniteSubgroup n = normalizer_in(closure({gens().S}), hess(36));
  EXPECT_EQ(n.order(), 18u);
  EXPECT_TRUE(n.contains(gens().S));
  EXPECT_TRUE(n.is_closed());
}

TEST(FiniteGroupProperties, Invariants) {
  const auto& g = gens();
  std::vector<ProjElement> v{g.S, g.T, g.V};
  std::mt19937_64 rng(6);
  for (int t = 0; t < 3; ++t) {
    std::shuffle(v.begin(), v.end(), rng);
    EXPECT_EQ(closure(v), hess(36));
  }
  for (int w : {216, 72, 36}) {
    EXPECT_TRUE(hess(w).satisfies_lagrange());
    EXPECT_TRUE(hess(w).is_closed());
    EXPECT_EQ(sigma_image(sigma_image(hess(w))), hess(w));
  }
  // fingerprint is invariant under conjugation
  Matrix3::Rows r;
  const int p[3][3] = {{1, 2, 0}, {0, 1, 1}, {1, 0, 3}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = Cyclo::rational(12, p[i][j]);
  const ProjElement c{Matrix3(r)};
  const auto a = fingerprint(hess(36)), b = fingerprint(hess(36).conjugated_by(c));
  EXPECT_EQ(a.order_histogram, b.order_histogram);
  EXPECT_EQ(a.abelian, b.abelian);
}
