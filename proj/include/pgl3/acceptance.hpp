#pragma once

// The nine end-to-end acceptance checks, shared by the `selftest` command
// and the acceptance test binary. Each returns pass/fail with a short detail.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pgl3/curves.hpp"
#include "pgl3/cyclotomic.hpp"
#include "pgl3/descent.hpp"
#include "pgl3/finitegroup.hpp"
#include "pgl3/numeric.hpp"
#include "pgl3/primitive.hpp"
#include "pgl3/projlinear.hpp"

namespace pgl3 {

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  int property_cases = 1000;
  long precision_bits = 128;
  bool corrupt_hessian = false;  // negative control: perturb V before building Hess216
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

namespace acceptance {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Definability criterion, evaluated directly from (n, a, b).
inline bool criterion_holds(int n, int a, int b) {
  auto z = [n](int x) { return ((x % n) + n) % n == 0; };
  return n == 2 || z(a + b) || z(a - 2 * b) || z(2 * a - b);
}

template <class F>
void each_normal_form(int max_n, F&& f) {
  for (int n = 2; n <= max_n; ++n)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (std::gcd(a, b) == 1) f(make_normal_form(n, a, b));
}

inline CriterionResult cyclic_table() {
  CriterionResult r{1, "cyclic criterion table n <= 12", true, "", 0};
  const auto t0 = Clock::now();
  int cases = 0, definable = 0;
  std::ostringstream bad;
  each_normal_form(12, [&](const CyclicNormalForm& nf) {
    ++cases;
    const DescentVerdict v = verdict_normal_form(nf);
    const bool want = criterion_holds(nf.n, nf.a, nf.b);
    bool ok = v.real_field_of_moduli == Tri::yes && (v.definable_over_R == Tri::yes) == want && v.consistent();
    if (nf.homology && nf.n >= 3) ok = ok && v.pseudo_real();
    if (want) {
      ++definable;
      const CyclicRealModel m = real_model_cyclic(nf);
      ok = ok && m.verified();
    }
    if (!ok) bad << " (" << nf.n << "," << nf.a << "," << nf.b << ")";
  });
  r.seconds = since(t0);
  r.passed = bad.str().empty() && r.seconds < 10;
  r.detail = std::to_string(cases) + " normal forms, " + std::to_string(definable) + " definable with verified models";
  if (!bad.str().empty()) r.detail += "; mismatches:" + bad.str();
  if (r.seconds >= 10) r.detail += "; too slow";
  return r;
}

inline CriterionResult obstruction_crosscheck() {
  CriterionResult r{2, "obstruction certificates", true, "", 0};
  const auto t0 = Clock::now();
  int hom = 0, non = 0;
  std::ostringstream bad;
  each_normal_form(12, [&](const CyclicNormalForm& nf) {
    if (criterion_holds(nf.n, nf.a, nf.b)) return;
    bool ok;
    if (nf.homology) {
      ++hom;
      ok = certify_homology_not_self_inverse(nf.n);
    } else {
      ++non;
      const ProjElement g = nf.element();
      ok = certify_not_conjugate_to_inverse(nf) && !conjugacy_necessary(g, g.inverse(), nf.n);
    }
    if (!ok) bad << " (" << nf.n << "," << nf.a << "," << nf.b << ")";
  });
  r.seconds = since(t0);
  r.passed = bad.str().empty();
  r.detail = std::to_string(hom) + " homologies and " + std::to_string(non) + " non-homologies certified";
  if (!r.passed) r.detail += "; failed:" + bad.str();
  return r;
}

inline CriterionResult corollary_direction() {
  CriterionResult r{3, "real charpoly lift implies definable", true, "", 0};
  const auto t0 = Clock::now();
  int checked = 0, with_lift = 0;
  std::ostringstream bad;
  for (int n = 3; n <= 12; ++n)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (std::gcd(std::gcd(a, b), n) != 1) continue;          // order exactly n
        if (a == 0 || b == 0 || a == b) continue;                // homologies
        const ProjElement g(Matrix3::diag_zeta(n, 0, a, b));
        ++checked;
        if (!exists_real_charpoly_lift(g)) continue;
        ++with_lift;
        if (verdict_cyclic(g).definable_over_R != Tri::yes) bad << " (" << n << "," << a << "," << b << ")";
      }
  // diag(z5^3, z5^4, z5^2): the lift's charpoly is not real, yet the group is definable.
  const ProjElement inst(Matrix3::diag_zeta(5, 3, 4, 2));
  const bool inst_ok = !charpoly(inst.lift()).is_real() && verdict_cyclic(inst).definable_over_R == Tri::yes &&
                       exists_real_charpoly_lift(inst).has_value();
  r.seconds = since(t0);
  r.passed = bad.str().empty() && inst_ok;
  r.detail = std::to_string(checked) + " elements, " + std::to_string(with_lift) +
             " with a real lift; diag(z5^3,z5^4,z5^2) instance " + (inst_ok ? "ok" : "FAILED");
  if (!bad.str().empty()) r.detail += "; violations:" + bad.str();
  return r;
}

inline CriterionResult dihedral_models() {
  CriterionResult r{4, "dihedral real models", true, "", 0};
  const auto t0 = Clock::now();
  int cases = 0;
  std::ostringstream bad;
  for (int n = 3; n <= 12; ++n)
    for (int a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      ++cases;
      const DihedralRealModel m = real_model_dihedral(n, a);
      if (!m.verified()) bad << " (" << n << "," << a << ")";
    }
  r.seconds = since(t0);
  r.passed = bad.str().empty() && r.seconds < 10;
  r.detail = std::to_string(cases) + " (n, a) pairs";
  if (!bad.str().empty()) r.detail += "; failed:" + bad.str();
  return r;
}

inline CriterionResult primitive_catalog(const AcceptanceOptions& opt) {
  CriterionResult r{5, "primitive groups", true, "", 0};
  const auto t0 = Clock::now();
  PrimitiveGenerators gens;
  if (opt.corrupt_hessian) {
    Matrix3 v = gens.hessian.V.lift();
    v(0, 0) = Cyclo::rational(v.conductor(), 2);
    gens.hessian.V = ProjElement(v);
  }
  std::vector<std::string> fails;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) fails.push_back(what);
  };

  std::optional<FiniteSubgroup> h216, h72, h36, a5;
  auto build = [&](std::optional<FiniteSubgroup>& slot, const std::function<FiniteSubgroup()>& f,
                   std::size_t expect, const std::string& name) {
    try {
      slot = f();
      check(slot->order() == expect, name + " order " + std::to_string(slot->order()));
    } catch (const Error& e) {
      fails.push_back(name + " order != " + std::to_string(expect) + " (" + e.detail() + ")");
    }
  };
  const auto tc = Clock::now();
  build(h216, [&] { return build_hessian(216, gens.hessian); }, 216, "Hess216");
  const double t216 = since(tc);
  check(t216 < 60, "Hess216 closure too slow");
  build(h72, [&] { return build_hessian(72, gens.hessian); }, 72, "Hess72");
  build(h36, [&] { return build_hessian(36, gens.hessian); }, 36, "Hess36");
  build(a5, [&] { return build_a5(gens.a5); }, 60, "A5");

  if (h216) check(sigma_image(*h216) == *h216, "sigma Hess216 != Hess216");
  if (h36) check(sigma_image(*h36) == *h36, "sigma Hess36 != Hess36");
  if (h216 && h72) {
    const FiniteSubgroup s72 = sigma_image(*h72);
    const auto psi = subgroup_conjugacy_search(*h72, s72, *h216);
    check(psi && h72->conjugated_by(*psi) == s72, "no psi for Hess72");
  }
  for (auto* g : {&h216, &h72, &h36})
    if (*g) check(find_subgroup_C3xC3(**g).has_value(), "missing C3xC3 in a Hessian group");
  if (a5) check(!find_subgroup_C3xC3(*a5).has_value(), "C3xC3 found in A5");

  const A5RealModel m = real_model_a5(RealModelParams::standard(), gens.a5);
  const std::map<int, int> hist{{1, 1}, {2, 15}, {3, 20}, {5, 24}};
  check(m.verified() && m.order_histogram == hist, "A5 real model");

  r.seconds = since(t0);
  r.passed = fails.empty();
  std::string detail = "orders 216/72/36/60, sigma-stability, psi, C3xC3 and A5 model";
  for (const auto& f : fails) detail += "; " + f;
  r.detail = fails.empty() ? detail : detail.substr(detail.find(';') + 2);
  return r;
}

inline CriterionResult psl27() {
  CriterionResult r{6, "PSL(2,7) verdict", true, "", 0};
  const auto t0 = Clock::now();
  const DescentVerdict w = verdict_cyclic(psl27_witness());
  const CyclicNormalForm nf = cyclic_normal_form(psl27_witness());
  const CatalogEntry e = evaluate_entry(catalog_skeleton(PrimitiveId::PSL27));
  r.passed = w.definable_over_R == Tri::no && nf == make_normal_form(7, 1, 3) && e.verdict.pseudo_real();
  r.seconds = since(t0);
  r.detail = "witness (7,1,3): " + w.reason;
  return r;
}

inline CriterionResult resultant_identity() {
  CriterionResult r{7, "quintic resultant identity", true, "", 0};
  const auto t0 = Clock::now();
  std::ostringstream bad;
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}}) {
    const auto m = QuinticFamilyMember::make(a, b);
    if (quintic_resultant(m) != expected_quintic_resultant(b)) bad << " (" << a << "," << b << ")";
  }
  r.seconds = since(t0);
  r.passed = bad.str().empty() && r.seconds < 5;
  r.detail = bad.str().empty() ? "Res_X = -125 i b^3 (Z^5-1)^3 for (1,1), (1,2), (2,3)" : "mismatch:" + bad.str();
  return r;
}

inline CriterionResult quintic_pipeline() {
  CriterionResult r{8, "quintic pipeline (a,b) = (1,2)", true, "", 0};
  const auto t0 = Clock::now();
  const auto m = QuinticFamilyMember::make(1, 2);
  const auto smooth = smoothness_check_quintic(m);
  const FiniteSubgroup d10 = quintic_d10();
  const bool aut = aut_contains(m.polynomial, d10);
  const auto obs = moduli_obstruction_quintic(m);
  const bool all_fail = obs.trace.size() == 50 &&
                        std::none_of(obs.trace.begin(), obs.trace.end(), [](const auto& t) { return t.isomorphism; });
  const bool compat = aut_sigma_compat(m.polynomial, d10);
  r.seconds = since(t0);
  r.passed = smooth.smooth && aut && obs.obstructed && all_fail && compat;
  std::ostringstream os;
  os << "smooth=" << smooth.smooth << " aut(D10)=" << aut << " obstruction=" << obs.obstructed
     << " candidates=" << obs.trace.size() << " sigma-compat=" << compat;
  r.detail = os.str();
  return r;
}

// ---------------------------------------------------------------------------
// Randomized property suites

class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational() {
    Rational q(uniform(-9, 9), uniform(1, 5));
    q.canonicalize();
    return q;
  }

  long conductor() {
    static const long ns[] = {1, 3, 4, 5, 7, 8, 9, 12, 15, 20};
    return ns[uniform(0, 9)];
  }

  Cyclo element(long n) {
    const auto f = CycloField::get(n);
    std::vector<Rational> v;
    for (int k = 0; k < f->degree(); ++k) v.push_back(uniform(0, 2) ? rational() : Rational(0));
    return Cyclo(f, v);
  }

  Matrix3 matrix(long n) {
    Matrix3::Rows rows;
    for (auto& row : rows)
      for (auto& e : row) e = element(n);
    return Matrix3(rows);
  }

  Matrix3 invertible(long n) {
    for (;;) {
      Matrix3 m = matrix(n);
      if (!m.det().is_zero()) return m;
    }
  }

private:
  std::mt19937_64 rng_;
};

inline BigComplex cmul(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline CriterionResult property_suites(const AcceptanceOptions& opt) {
  CriterionResult r{9, "randomized property suites", true, "", 0};
  const auto t0 = Clock::now();
  Sampler s(opt.seed);
  const int cases = opt.property_cases;
  std::map<std::string, int> failures;
  auto check = [&](bool ok, const char* suite) {
    if (!ok) ++failures[suite];
  };

  for (int t = 0; t < cases; ++t) {
    const long n = s.conductor();
    const Cyclo x = s.element(n), y = s.element(n), w = s.element(n), zero = Cyclo::zero(n), one = Cyclo::one(n);
    check((x + y) + w == x + (y + w) && x + y == y + x && x + zero == x && x - x == zero, "field axioms");
    check((x * y) * w == x * (y * w) && x * y == y * x && x * one == x, "field axioms");
    check(x * (y + w) == x * y + x * w, "field axioms");
    if (!x.is_zero()) check(x * x.inverse() == one, "field axioms");
  }
  for (int t = 0; t < cases; ++t) {
    const long n = s.conductor();
    const Cyclo x = s.element(n), y = s.element(n);
    check((x + y).conj() == x.conj() + y.conj() && (x * y).conj() == x.conj() * y.conj(), "sigma laws");
    check(x.conj().conj() == x && (x + x.conj()).is_real(), "sigma laws");
    if (!x.is_zero()) check(x.inverse().conj() == x.conj().inverse(), "sigma laws");
    const long m = n * (s.uniform(1, 3));
    check(x.embed(m).conj() == x.conj().embed(m), "sigma laws");
  }
  for (int t = 0; t < cases; ++t) {
    const long n = s.conductor();
    const Matrix3 g = s.matrix(n), h = s.invertible(n);
    const Matrix3 conj = h.adjugate() * g * h;
    const Cyclo c = s.element(n);
    check(charpoly_class_eq(charpoly(g), charpoly(conj)), "charpoly class invariance");
    if (!c.is_zero()) check(charpoly_class_eq(charpoly(g), charpoly(g * c)), "charpoly class invariance");
  }
  {
    const FiniteSubgroup amb[2] = {build_a5(), build_hessian(36)};
    for (int t = 0; t < cases; ++t) {
      const FiniteSubgroup& a = amb[t % 2];
      std::vector<ProjElement> gens;
      const int k = s.uniform(1, 2);
      for (int i = 0; i < k; ++i)
        gens.push_back(a.elements()[static_cast<std::size_t>(s.uniform(0, static_cast<int>(a.order()) - 1))]);
      const FiniteSubgroup h = closure(gens);
      check(a.order() % h.order() == 0 && h.is_subset_of(a) && h.satisfies_lagrange(), "closure lagrange");
    }
  }
  {
    const long bits = opt.precision_bits;
    const BigFloat tol = BigFloat::pow2(-64, bits);
    auto close = [&](const BigComplex& a, const BigComplex& b) { return (a - b).max_abs() < tol; };
    for (int t = 0; t < cases; ++t) {
      const long n = s.conductor();
      const Cyclo x = s.element(n), y = s.element(n);
      const BigComplex nx = x.to_complex(bits), ny = y.to_complex(bits);
      check(close(cmul(nx, ny), (x * y).to_complex(bits)), "numeric embedding");
      check(close(nx.conj(), x.conj().to_complex(bits)), "numeric embedding");
      const Cyclo re = x + x.conj();
      check(re.is_real() && abs(re.to_complex(bits).im) < tol, "numeric embedding");
      check(x.is_real() == (abs(nx.im) < tol), "numeric embedding");
      check(x.is_zero() == (nx.max_abs() < tol), "numeric embedding");
    }
  }

  r.seconds = since(t0);
  r.passed = failures.empty() && cases >= 1000;
  std::ostringstream os;
  os << cases << " cases per suite, seed " << opt.seed;
  for (const auto& [k, v] : failures) os << "; " << k << ": " << v << " failures";
  r.detail = os.str();
  return r;
}

} // namespace acceptance

inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {}) {
  using namespace acceptance;
  std::vector<CriterionResult> out;
  auto guarded = [&](int id, const char* title, const std::function<CriterionResult()>& f) {
    try {
      out.push_back(f());
    } catch (const std::exception& e) {
      out.push_back({id, title, false, std::string("exception: ") + e.what(), 0});
    }
  };
  guarded(1, "cyclic criterion table n <= 12", cyclic_table);
  guarded(2, "obstruction certificates", obstruction_crosscheck);
  guarded(3, "real charpoly lift implies definable", corollary_direction);
  guarded(4, "dihedral real models", dihedral_models);
  guarded(5, "primitive groups", [&] { return primitive_catalog(opt); });
  guarded(6, "PSL(2,7) verdict", psl27);
  guarded(7, "quintic resultant identity", resultant_identity);
  guarded(8, "quintic pipeline (a,b) = (1,2)", quintic_pipeline);
  guarded(9, "randomized property suites", [&] { return property_suites(opt); });
  return out;
}

inline std::string format_report(const std::vector<CriterionResult>& rs) {
  std::ostringstream os;
  for (const auto& r : rs)
    os << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.title << "  [" << r.detail
       << "]\n";
  return os.str();
}

} // namespace pgl3
