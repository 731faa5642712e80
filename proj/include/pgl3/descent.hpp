#pragma once

// Real descent for finite cyclic and dihedral subgroups of PGL_3(C).
//
// A cyclic group of order n is, up to conjugation, generated by
// diag(1, zeta_n^a, zeta_n^b). It always has a real field of moduli, and it
// has a real model exactly when n = 2 or one of a+b, a-2b, 2a-b vanishes
// mod n. In the definable case the model is built explicitly: permute into
// the a+b = 0 shape, then conjugate by
//
//     phi = [[1, 0, 0], [0, alpha, beta], [0, conj(alpha), conj(beta)]],
//
// using adj(phi) for the inverse so that no division is needed. Dihedral
// groups <[X:Z:Y], diag(1, zeta^a, zeta^-a)> descend through the same phi.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgl3/error.hpp"
#include "pgl3/finitegroup.hpp"
#include "pgl3/projlinear.hpp"

namespace pgl3 {

enum class Tri { yes, no, unknown };

inline std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

enum class Obstruction { homology_period, cyclic_subgroup, c3xc3_rule, criterion_failed };

inline std::string_view to_string(Obstruction o) {
  switch (o) {
    case Obstruction::homology_period: return "homology-period>=3";
    case Obstruction::cyclic_subgroup: return "cyclic-subgroup-obstruction";
    case Obstruction::c3xc3_rule: return "C3xC3-rule";
    case Obstruction::criterion_failed: return "criterion-failed";
  }
  return "unknown";
}

struct Witness {
  std::string description;
  std::vector<Matrix3> generators;      // real model generators
  std::optional<Matrix3> conjugator;    // model = conjugator^-1 * G * conjugator
};

struct DescentVerdict {
  Tri real_field_of_moduli = Tri::unknown;
  Tri definable_over_R = Tri::unknown;
  std::string moduli_reason;
  std::string reason;
  std::optional<Witness> witness;
  std::optional<Obstruction> obstruction;
  std::string obstruction_detail;
  bool obstruction_certified = false;
  std::vector<std::string> diagnostics;

  bool pseudo_real() const {
    return real_field_of_moduli == Tri::yes && definable_over_R == Tri::no;
  }

  /// Structural invariants: witness => definable, witness matrices real,
  /// obstruction => not definable.
  bool consistent() const {
    if (witness) {
      if (definable_over_R != Tri::yes) return false;
      for (const auto& m : witness->generators)
        if (!m.is_real()) return false;
    }
    if (obstruction && definable_over_R != Tri::no) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Normal forms

struct CyclicNormalForm {
  int n = 0;
  int a = 0;
  int b = 0;
  bool homology = false;

  Matrix3 diagonal() const { return Matrix3::diag_zeta(n, 0, a, b); }
  ProjElement element() const { return ProjElement(diagonal()); }

  friend bool operator==(const CyclicNormalForm&, const CyclicNormalForm&) = default;
};

namespace detail {

inline int mod(long x, long n) { return static_cast<int>(((x % n) + n) % n); }

// Lexicographically least (a, b) with 0 <= a < b < n, gcd(a, b) = 1 whose
// triple {0, a, b} lies in the orbit of {0, a0, b0} under anchor shifts,
// permutations and multiplication by units mod n.
inline std::optional<std::pair<int, int>> orbit_minimum(int n, int a0, int b0) {
  std::optional<std::pair<int, int>> best;
  for (int k = 1; k < n; ++k) {
    if (std::gcd(k, n) != 1) continue;
    const std::array<int, 3> t{0, mod(static_cast<long>(k) * a0, n), mod(static_cast<long>(k) * b0, n)};
    for (std::size_t anchor = 0; anchor < 3; ++anchor) {
      std::array<int, 2> rest{};
      for (std::size_t i = 0, r = 0; i < 3; ++i)
        if (i != anchor) rest[r++] = mod(t[i] - t[anchor], n);
      std::sort(rest.begin(), rest.end());
      if (rest[0] < rest[1] && std::gcd(rest[0], rest[1]) == 1) {
        std::pair<int, int> cand{rest[0], rest[1]};
        if (!best || cand < *best) best = cand;
      }
    }
  }
  return best;
}

} // namespace detail

/// Validated normal form (n, a, b) with 0 <= a < b <= n-1, gcd(a, b) = 1.
inline CyclicNormalForm make_normal_form(int n, int a, int b) {
  if (n < 2) fail(ErrorKind::InvalidInput, "cyclic order n must be >= 2");
  if (!(0 <= a && a < b && b <= n - 1))
    fail(ErrorKind::InvalidInput, "need 0 <= a < b <= n-1");
  if (std::gcd(a, b) != 1) fail(ErrorKind::InvalidInput, "need gcd(a, b) = 1");
  return {n, a, b, a == 0};
}

/// Canonical representative of the group generated by diag(1, z^a, z^b),
/// where z is a primitive n-th root and the element has order exactly n.
inline CyclicNormalForm canonical_normal_form(int n, int a, int b) {
  if (n < 2) fail(ErrorKind::InvalidInput, "cyclic order n must be >= 2");
  if (std::gcd(std::gcd(detail::mod(a, n), detail::mod(b, n)), n) != 1)
    fail(ErrorKind::InvalidInput, "diag(1, z^a, z^b) does not have order n");
  auto best = detail::orbit_minimum(n, detail::mod(a, n), detail::mod(b, n));
  if (!best) fail(ErrorKind::InvalidInput, "no normal form with gcd(a, b) = 1 in the orbit");
  return make_normal_form(n, best->first, best->second);
}

/// Normal form of the cyclic group generated by a finite-order element.
inline CyclicNormalForm cyclic_normal_form(const ProjElement& g) {
  int n = 0;
  try {
    n = proj_order(g);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OrderNotFound) throw;
    fail(ErrorKind::NotFiniteOrder, e.detail());
  }
  if (n == 1) fail(ErrorKind::IdentityElement, "the identity generates the trivial group");
  const auto pairs = eigenratio_class(g, n);
  const auto [a, b] = *pairs.begin();
  return canonical_normal_form(n, a, b);
}

// ---------------------------------------------------------------------------
// Decision procedures

/// The cyclic group <g> is sigma-stable as a set; always true for finite cyclic groups.
inline bool cyclic_sigma_stable(const ProjElement& g) {
  const FiniteSubgroup grp = closure({g});
  return sigma_image(grp) == grp;
}

struct ModuliAnswer {
  Tri verdict = Tri::yes;
  bool sigma_stable_checked = false;
};

inline ModuliAnswer has_real_field_of_moduli_cyclic(const CyclicNormalForm& nf) {
  // sigma(diag(1, z^a, z^b)) = diag(1, z^-a, z^-b), the inverse.
  return {Tri::yes, cyclic_sigma_stable(nf.element())};
}

struct Definability {
  bool definable = false;
  std::string reason;
};

inline Definability definable_cyclic(const CyclicNormalForm& nf) {
  const int n = nf.n, a = nf.a, b = nf.b;
  if (n == 2) return {true, "n=2"};
  if (detail::mod(a + b, n) == 0) return {true, "a+b=0 mod n"};
  if (detail::mod(a - 2 * b, n) == 0) return {true, "a-2b=0 mod n"};
  if (detail::mod(2 * a - b, n) == 0) return {true, "2a-b=0 mod n"};
  return {false, nf.homology ? "homology of period n>=3" : "a+b, a-2b, 2a-b all nonzero mod n"};
}

/// Does some scalar c map the multiset lhs onto rhs? Candidate c are the
/// ratios rhs[j]/lhs[i], each checked by exact multiset comparison.
inline bool scalar_multiset_match(const std::vector<Cyclo>& lhs, const std::vector<Cyclo>& rhs) {
  if (lhs.size() != rhs.size()) return false;
  auto keys = [](const std::vector<Cyclo>& v) {
    std::multiset<std::string> k;
    for (const auto& x : v) k.insert(x.key());
    return k;
  };
  const auto target = keys(rhs);
  for (const auto& l : lhs)
    for (const auto& r : rhs) {
      const Cyclo c = r / l;
      std::vector<Cyclo> scaled;
      for (const auto& x : lhs) scaled.push_back(c * x);
      if (keys(scaled) == target) return true;
    }
  return false;
}

/// {c, c, c z} != {1, 1, z^-1} for every candidate c, for z = zeta_n.
inline bool certify_homology_not_self_inverse(int n) {
  const Cyclo one = Cyclo::one(n);
  return !scalar_multiset_match({one, one, Cyclo::zeta(n, 1)}, {one, one, Cyclo::zeta(n, -1)});
}

/// {c, c z^a, c z^b} != {1, z^-a, z^-b} for every candidate c.
inline bool certify_not_conjugate_to_inverse(const CyclicNormalForm& nf) {
  const int n = nf.n;
  return !scalar_multiset_match({Cyclo::one(n), Cyclo::zeta(n, nf.a), Cyclo::zeta(n, nf.b)},
                                {Cyclo::one(n), Cyclo::zeta(n, -nf.a), Cyclo::zeta(n, -nf.b)});
}

// ---------------------------------------------------------------------------
// Real models

struct RealModelParams {
  Cyclo alpha;
  Cyclo beta;

  /// alpha = 1, beta = i.
  static RealModelParams standard() { return {Cyclo::one(4), Cyclo::zeta(4, 1)}; }

  long conductor() const { return lcm_conductor(alpha.conductor(), beta.conductor()); }

  /// Im(alpha * conj(beta)), in Q(zeta_lcm(4, N)).
  Cyclo im_alpha_conj_beta() const {
    auto [a, b] = unify(alpha, beta);
    return (a * b.conj()).re_im().second;
  }

  void validate() const {
    if (alpha.is_zero() || beta.is_zero())
      fail(ErrorKind::DegenerateParams, "alpha and beta must be nonzero");
    if (im_alpha_conj_beta().is_zero())
      fail(ErrorKind::DegenerateParams, "Im(alpha * conj(beta)) = 0 makes phi singular");
  }
};

namespace detail {

inline Matrix3 phi_matrix(const Cyclo& alpha, const Cyclo& beta, long n) {
  const Cyclo al = alpha.embed(n), be = beta.embed(n), z = Cyclo::zero(n), one = Cyclo::one(n);
  return Matrix3(Matrix3::Rows{{{one, z, z}, {z, al, be}, {z, al.conj(), be.conj()}}});
}

// -i * adj(phi) * X * phi. For phi of the shape above this is the real
// representative of phi^-1 X phi whenever that class is real.
inline Matrix3 conjugate_real_form(const Matrix3& phi, const Matrix3& x) {
  const long n = phi.conductor();
  return phi.adjugate() * x.embedded(n) * phi * (-Cyclo::zeta(n, n / 4));
}

inline Cyclo im(const Cyclo& x) { return x.re_im().second; }
inline Cyclo re(const Cyclo& x) { return x.re_im().first; }

// Exponents e with diag entries zeta_n^e, relative to the (0,0) entry.
inline std::optional<std::array<int, 3>> diag_exponents(const Matrix3& d, int n) {
  if (!d.is_diagonal()) return std::nullopt;
  const long m = lcm_conductor(d.conductor(), n);
  const Matrix3 dm = d.embedded(m);
  std::array<int, 3> out{0, 0, 0};
  for (int i = 1; i < 3; ++i) {
    const Cyclo ratio = dm(i, i) / dm(0, 0);
    bool found = false;
    for (int e = 0; e < n && !found; ++e)
      if (ratio == Cyclo::zeta(m, static_cast<long>(e) * (m / n))) {
        out[static_cast<std::size_t>(i)] = e;
        found = true;
      }
    if (!found) return std::nullopt;
  }
  return out;
}

} // namespace detail

struct CyclicRealModel {
  CyclicNormalForm nf;
  std::string clause;
  int reduced_a = 0;      // reduced generator diag(1, z^a', z^-a')
  Matrix3 psi;            // permutation into the a+b = 0 shape
  Matrix3 phi;
  Matrix3 conjugator;     // psi * phi
  Matrix3 model;
  bool all_real = false;
  bool order_ok = false;
  bool back_conjugation_ok = false;
  bool matches_printed_formula = false;
  std::vector<std::string> diagnostics;

  bool verified() const { return all_real && order_ok && back_conjugation_ok; }
};

/// The displayed closed form of -i * adj(phi) diag(1, z^a, z^-a) phi.
inline Matrix3 printed_cyclic_model(int n, int a, const RealModelParams& p) {
  const long m = lcm_conductor(lcm_conductor(4, n), p.conductor());
  const Cyclo al = p.alpha.embed(m), be = p.beta.embed(m), z = Cyclo::zero(m);
  const Cyclo abc = al * be.conj();
  const Cyclo za = Cyclo::zeta(n, a).embed(m), zma = Cyclo::zeta(n, -a).embed(m);
  const Cyclo sin_a = detail::im(za).embed(m);
  const Cyclo two = Cyclo::rational(m, 2);
  auto e = [m](const Cyclo& x) { return x.embed(m); };
  return Matrix3(Matrix3::Rows{{
      {e(two * detail::im(abc)), z, z},
      {z, e(two * detail::im(abc * za)), e(two * (be * be.conj()) * sin_a)},
      {z, e(-two * (al * al.conj()) * sin_a), e(two * detail::im(abc * zma))},
  }});
}

inline CyclicRealModel real_model_cyclic(const CyclicNormalForm& nf,
                                         const RealModelParams& params = RealModelParams::standard()) {
  const auto def = definable_cyclic(nf);
  if (!def.definable)
    fail(ErrorKind::CriterionFailed, "(" + std::to_string(nf.n) + "," + std::to_string(nf.a) + "," +
                                         std::to_string(nf.b) + ") has no real model: " + def.reason);
  params.validate();

  CyclicRealModel out;
  out.nf = nf;
  out.clause = def.reason;
  const int n = nf.n;
  const long m = lcm_conductor(lcm_conductor(4, n), params.conductor());
  const Matrix3 a_diag = nf.diagonal().embedded(m);

  if (n == 2) {
    // Already real: diag(1, 1, -1).
    out.psi = Matrix3::identity(m);
    out.phi = Matrix3::identity(m);
    out.conjugator = out.psi;
    out.model = a_diag;
    out.reduced_a = 1;
    out.all_real = out.model.is_real();
    out.order_ok = proj_order(ProjElement(out.model)) == n;
    out.back_conjugation_ok = ProjElement(out.model) == ProjElement(a_diag);
    out.matches_printed_formula = true;
    return out;
  }

  if (detail::mod(nf.a + nf.b, n) == 0)
    out.psi = Matrix3::identity(m);
  else if (detail::mod(nf.a - 2 * nf.b, n) == 0)
    out.psi = Matrix3::permutation({1, 2, 0}, m);  // [Y:Z:X]
  else
    out.psi = Matrix3::permutation({2, 0, 1}, m);  // [Z:X:Y]

  const Matrix3 reduced = out.psi.adjugate() * a_diag * out.psi;
  const auto ex = detail::diag_exponents(reduced, n);
  if (!ex || detail::mod((*ex)[1] + (*ex)[2], n) != 0)
    fail(ErrorKind::CriterionFailed, "permutation did not reach the a+b=0 shape");
  out.reduced_a = (*ex)[1];
  const Matrix3 a_reduced = Matrix3::diag_zeta(n, 0, out.reduced_a, -out.reduced_a).embedded(m);

  out.phi = detail::phi_matrix(params.alpha, params.beta, m);
  out.conjugator = out.psi * out.phi;
  out.model = detail::conjugate_real_form(out.phi, a_reduced);

  out.all_real = out.model.is_real();
  const ProjElement model_el(out.model);
  out.order_ok = proj_order(model_el) == n;
  // phi * model * phi^-1 recovers the reduced diagonal form, and the full
  // conjugator recovers the original normal form.
  const bool back_reduced = ProjElement(out.phi * out.model * out.phi.adjugate()) == ProjElement(a_reduced);
  const bool back_full =
      ProjElement(out.conjugator * out.model * out.conjugator.adjugate()) == ProjElement(a_diag);
  out.back_conjugation_ok = back_reduced && back_full;

  const Matrix3 printed = printed_cyclic_model(n, out.reduced_a, params);
  out.matches_printed_formula = printed == out.model;
  if (!out.matches_printed_formula)
    out.diagnostics.push_back("computed model differs from the closed-form matrix");
  return out;
}

struct DihedralRealModel {
  int n = 0;
  int a = 0;
  Matrix3 phi;
  Matrix3 rotation;    // real form of diag(1, z^a, z^-a)
  Matrix3 reflection;  // real form of [X:Z:Y]
  bool all_real = false;
  bool relation_ok = false;   // B'A'B' = A'^-1
  std::size_t closure_order = 0;
  bool matches_printed_formula = false;
  std::vector<std::string> diagnostics;

  bool verified() const {
    return all_real && relation_ok && closure_order == static_cast<std::size_t>(2 * n);
  }
};

/// Closed form of -i * adj(phi) [X:Z:Y] phi.
inline Matrix3 printed_dihedral_reflection(const RealModelParams& p) {
  const long m = lcm_conductor(4, p.conductor());
  const Cyclo al = p.alpha.embed(m), be = p.beta.embed(m), z = Cyclo::zero(m);
  const Cyclo two = Cyclo::rational(m, 2);
  auto e = [m](const Cyclo& x) { return x.embed(m); };
  return Matrix3(Matrix3::Rows{{
      {e(two * detail::im(al * be.conj())), z, z},
      {z, e(-two * detail::im(al * be)), e(-two * detail::im(be * be))},
      {z, e(two * detail::im(al * al)), e(two * detail::im(al * be))},
  }});
}

inline DihedralRealModel real_model_dihedral(int n, int a,
                                             const RealModelParams& params = RealModelParams::standard()) {
  if (n < 3) fail(ErrorKind::BadParameters, "dihedral descent needs n >= 3");
  if (std::gcd(detail::mod(a, n), n) != 1) fail(ErrorKind::BadParameters, "need gcd(n, a) = 1");
  params.validate();

  DihedralRealModel out;
  out.n = n;
  out.a = detail::mod(a, n);
  const long m = lcm_conductor(lcm_conductor(4, n), params.conductor());
  const Matrix3 rot = Matrix3::diag_zeta(n, 0, out.a, -out.a).embedded(m);
  const Matrix3 refl = Matrix3::permutation({0, 2, 1}, m);

  out.phi = detail::phi_matrix(params.alpha, params.beta, m);
  out.rotation = detail::conjugate_real_form(out.phi, rot);
  out.reflection = detail::conjugate_real_form(out.phi, refl);
  out.all_real = out.rotation.is_real() && out.reflection.is_real();

  const ProjElement ra(out.rotation), rb(out.reflection);
  out.relation_ok = rb * ra * rb == ra.inverse();
  out.closure_order = closure({ra, rb}).order();

  const bool rot_ok = printed_cyclic_model(n, out.a, params) == out.rotation;
  const bool refl_ok = printed_dihedral_reflection(params) == out.reflection;
  out.matches_printed_formula = rot_ok && refl_ok;
  if (!rot_ok) out.diagnostics.push_back("rotation differs from the closed-form matrix");
  if (!refl_ok) out.diagnostics.push_back("reflection differs from the closed-form matrix");
  return out;
}

// ---------------------------------------------------------------------------
// Characteristic-polynomial lifts

struct CharpolyLiftWitness {
  int a = 0, b = 0;                  // eigenvalue pattern {1, z^a, z^b} up to scale
  int root_index = 0;                // s = zeta_2n^root_index
  Cyclo pattern_scale;               // s, with charpoly(s * diag(1, z^a, z^b)) real
  std::optional<Cyclo> lift_scalar;  // c with charpoly(c * lift) real, when c lies in the field
  CharPoly real_charpoly;
};

/// A scalar making the characteristic polynomial of a lift real, if any.
///
/// After a real rescaling the eigenvalues lie on the unit circle, and
/// closure under conjugation forces the scale to be a 2n-th root of unity,
/// so the search over zeta_2n^j is exhaustive.
inline std::optional<CharpolyLiftWitness> exists_real_charpoly_lift(const ProjElement& g) {
  int n = 0;
  try {
    n = proj_order(g);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OrderNotFound) throw;
    fail(ErrorKind::NotFiniteOrder, e.detail());
  }
  if (n < 3) fail(ErrorKind::PreconditionFailed, "needs an element of order >= 3");
  const auto [a, b] = *eigenratio_class(g, n).begin();
  const long m = lcm_conductor(2L * n, g.conductor());
  const Matrix3 pattern = Matrix3::diag_zeta(n, 0, a, b).embedded(m);
  const CharPoly pattern_cp = charpoly(pattern);

  for (int j = 0; j < 2 * n; ++j) {
    const Cyclo s = Cyclo::zeta(2L * n, j).embed(m);
    const CharPoly cp = pattern_cp.scaled(s);
    if (!cp.is_real()) continue;

    CharpolyLiftWitness w{a, b, j, s, std::nullopt, cp};
    const CharPoly lift_cp = charpoly(g.lift().embedded(m));
    if (lift_cp.is_real()) {
      w.lift_scalar = Cyclo::one(m);
      return w;
    }
    // lift = lambda * (conjugate of pattern); recover lambda when it is a field element.
    std::optional<Cyclo> lambda;
    if (!pattern_cp.e1.is_zero())
      lambda = lift_cp.e1 / pattern_cp.e1;
    else if (!pattern_cp.e2.is_zero() && !pattern_cp.e3.is_zero())
      lambda = (lift_cp.e3 / pattern_cp.e3) / (lift_cp.e2 / pattern_cp.e2);
    if (lambda && !lambda->is_zero()) {
      const Cyclo c = s / *lambda;
      if (lift_cp.scaled(c).is_real()) w.lift_scalar = c;
    }
    return w;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Verdicts

inline DescentVerdict verdict_normal_form(const CyclicNormalForm& nf,
                                          const RealModelParams& params = RealModelParams::standard()) {
  DescentVerdict v;
  const auto moduli = has_real_field_of_moduli_cyclic(nf);
  v.real_field_of_moduli = moduli.verdict;
  v.moduli_reason = "sigma<A> = <A^-1> = <A>";
  if (!moduli.sigma_stable_checked) v.diagnostics.push_back("sigma-stability sanity check failed");

  const auto def = definable_cyclic(nf);
  v.reason = def.reason;
  if (def.definable) {
    v.definable_over_R = Tri::yes;
    const auto model = real_model_cyclic(nf, params);
    if (!model.verified()) v.diagnostics.push_back("real model failed verification");
    for (const auto& d : model.diagnostics) v.diagnostics.push_back(d);
    v.witness = Witness{"real model of <diag(1, z^a, z^b)>", {model.model}, model.conjugator};
  } else {
    v.definable_over_R = Tri::no;
    if (nf.homology) {
      v.obstruction = Obstruction::homology_period;
      v.obstruction_certified = certify_homology_not_self_inverse(nf.n);
      v.obstruction_detail = "{c,c,c*z} != {1,1,z^-1} for every scalar c";
    } else {
      v.obstruction = Obstruction::criterion_failed;
      const ProjElement g = nf.element();
      const bool eig = !conjugacy_necessary(g, g.inverse(), nf.n);
      v.obstruction_certified = eig && certify_not_conjugate_to_inverse(nf);
      v.obstruction_detail = "A and A^-1 have eigenvalue multisets differing by every scalar";
    }
  }
  return v;
}

/// Full pipeline for <g>. Inputs outside scope (infinite order) give "unknown".
inline DescentVerdict verdict_cyclic(const ProjElement& g,
                                     const RealModelParams& params = RealModelParams::standard()) {
  CyclicNormalForm nf;
  try {
    nf = cyclic_normal_form(g);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFiniteOrder) throw;
    DescentVerdict v;
    v.reason = "element of infinite or out-of-range order";
    return v;
  }
  DescentVerdict v = verdict_normal_form(nf, params);
  if (!cyclic_sigma_stable(g)) v.diagnostics.push_back("sigma<g> != <g>");
  if (v.obstruction == Obstruction::criterion_failed && conjugacy_necessary(g, g.inverse(), nf.n)) {
    v.obstruction_certified = false;
    v.diagnostics.push_back("eigenvalue test on g did not separate g from g^-1");
  }
  return v;
}

} // namespace pgl3
