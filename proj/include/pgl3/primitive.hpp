#pragma once

// The six finite primitive subgroups of PGL_3(C): Hess216, Hess72, Hess36,
// A5, A6 and PSL(2,7). Groups with explicit generators are built and
// checked by enumeration; A6 carries no matrices and PSL(2,7) only a
// witness element, so parts of their verdicts rest on stated rules.

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgl3/descent.hpp"
#include "pgl3/error.hpp"
#include "pgl3/finitegroup.hpp"
#include "pgl3/projlinear.hpp"

namespace pgl3 {

enum class PrimitiveId { Hess216, Hess72, Hess36, A5, A6, PSL27 };
enum class VerificationMode { computed, rule_based, literature };

inline constexpr std::array<PrimitiveId, 6> kAllPrimitive{
    PrimitiveId::Hess216, PrimitiveId::Hess72, PrimitiveId::Hess36,
    PrimitiveId::A5,      PrimitiveId::A6,     PrimitiveId::PSL27};

inline std::string_view to_string(PrimitiveId id) {
  switch (id) {
    case PrimitiveId::Hess216: return "Hess216";
    case PrimitiveId::Hess72: return "Hess72";
    case PrimitiveId::Hess36: return "Hess36";
    case PrimitiveId::A5: return "A5";
    case PrimitiveId::A6: return "A6";
    case PrimitiveId::PSL27: return "PSL27";
  }
  return "?";
}

inline std::string_view to_string(VerificationMode m) {
  switch (m) {
    case VerificationMode::computed: return "computed";
    case VerificationMode::rule_based: return "rule-based";
    case VerificationMode::literature: return "literature";
  }
  return "?";
}

/// Case-insensitive lookup; throws InvalidInput.
inline PrimitiveId parse_primitive_id(std::string_view s) {
  std::string low;
  for (char c : s) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (auto id : kAllPrimitive) {
    std::string name;
    for (char c : to_string(id)) name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (low == name) return id;
  }
  fail(ErrorKind::InvalidInput, "unknown group '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Generators

inline constexpr long kHessianConductor = 12;
inline constexpr long kA5Conductor = 20;

struct HessianGenerators {
  ProjElement S, T, U, V;

  static HessianGenerators standard() {
    const long n = kHessianConductor;
    const Cyclo one = Cyclo::one(n), w = Cyclo::zeta(3, 1).embed(n), w2 = Cyclo::zeta(3, 2).embed(n);
    const Matrix3 v(Matrix3::Rows{{{one, one, one}, {one, w, w2}, {one, w2, w}}});
    return {ProjElement(Matrix3::diag_zeta(3, 0, 1, -1).embedded(n)),
            ProjElement(Matrix3::permutation({1, 2, 0}, n)),  // [Y:Z:X]
            ProjElement(Matrix3::diag_zeta(3, 0, 0, 1).embedded(n)),
            ProjElement(v)};
  }
};

namespace detail {

// [[top, top, top], [side, s*c4, s*c2], [side, s*c2, s*c4]] with
// c2 = cos(2pi/5), c4 = cos(4pi/5).
inline Matrix3 a5_c_shape(const Rational& top, const Rational& side, const Rational& s) {
  const long n = kA5Conductor;
  const Cyclo t = Cyclo::rational(n, top), d = Cyclo::rational(n, side);
  const Cyclo c2 = ((Cyclo::zeta(5, 1) + Cyclo::zeta(5, -1)) / Rational(2)).embed(n);
  const Cyclo c4 = ((Cyclo::zeta(5, 2) + Cyclo::zeta(5, -2)) / Rational(2)).embed(n);
  return Matrix3(Matrix3::Rows{{{t, t, t}, {d, s * c4, s * c2}, {d, s * c2, s * c4}}});
}

} // namespace detail

/// C exactly as displayed in the literature. It has infinite projective
/// order, so <A, B, C> is not finite with this matrix.
inline Matrix3 printed_a5_c() { return detail::a5_c_shape(2, 1, 1); }

/// The order-2 matrix actually used: [[1,1,1],[2,2c4,2c2],[2,2c2,2c4]].
inline Matrix3 standard_a5_c() { return detail::a5_c_shape(1, 2, 2); }

struct A5Generators {
  ProjElement A, B, C;

  static A5Generators standard() {
    const long n = kA5Conductor;
    return {ProjElement(Matrix3::diag_zeta(5, 0, -1, 1).embedded(n)),
            ProjElement(Matrix3::permutation({0, 2, 1}, n)),  // [X:Z:Y]
            ProjElement(standard_a5_c())};
  }
};

/// Generator sets used by the catalog; replaceable for negative controls.
struct PrimitiveGenerators {
  HessianGenerators hessian = HessianGenerators::standard();
  A5Generators a5 = A5Generators::standard();
};

inline std::vector<ProjElement> hessian_generator_list(int which, const HessianGenerators& g) {
  switch (which) {
    case 216: return {g.S, g.T, g.U, g.V};
    case 72: return {g.S, g.T, g.V, g.U * g.V * g.U.inverse()};
    case 36: return {g.S, g.T, g.V};
    default: fail(ErrorKind::InvalidInput, "Hessian order must be 216, 72 or 36");
  }
}

inline FiniteSubgroup build_hessian(int which, const HessianGenerators& g = HessianGenerators::standard()) {
  return closure(hessian_generator_list(which, g));
}

inline FiniteSubgroup build_a5(const A5Generators& g = A5Generators::standard()) {
  return closure({g.A, g.B, g.C});
}

/// diag(1, z7, z7^3), an element of the standard PSL(2,7) class.
inline ProjElement psl27_witness() { return ProjElement(Matrix3::diag_zeta(7, 0, 1, 3)); }

// ---------------------------------------------------------------------------
// A5 real model

struct A5RealModel {
  Matrix3 phi;
  Matrix3 A, B, C;
  bool all_real = false;
  std::size_t closure_order = 0;
  std::map<int, int> order_histogram;
  bool closure_all_real = false;
  bool matches_printed_formula = false;    // displayed closed form
  bool matches_standard_formula = false;   // closed form for standard_a5_c()
  std::vector<std::string> diagnostics;

  bool verified() const { return all_real && closure_all_real && closure_order == 60; }
};

/// Closed form of -i * adj(phi) C phi for C = a5_c_shape(top, side, s).
/// (top, side, s) = (2, 1, 1) is the displayed formula.
inline Matrix3 a5_c_model_closed_form(const RealModelParams& p, const Rational& top = 2,
                                      const Rational& side = 1, const Rational& s = 1) {
  const long m = lcm_conductor(kA5Conductor, p.conductor());
  const Cyclo al = p.alpha.embed(m), be = p.beta.embed(m);
  const Cyclo c2 = ((Cyclo::zeta(5, 1) + Cyclo::zeta(5, -1)) / Rational(2)).embed(m);
  const Cyclo c4 = ((Cyclo::zeta(5, 2) + Cyclo::zeta(5, -2)) / Rational(2)).embed(m);
  auto im = [m](const Cyclo& x) { return detail::im(x).embed(m); };
  auto re = [m](const Cyclo& x) { return detail::re(x).embed(m); };
  const Cyclo iab = im(al * be.conj());
  const Rational r0 = 2 * top, c0 = 2 * side, b = 2 * s;
  return Matrix3(Matrix3::Rows{{
      {r0 * iab, Rational(2 * r0) * iab * re(al), Rational(2 * r0) * iab * re(be)},
      {c0 * im(be.conj()), b * (c4 * iab - c2 * im(al * be)), Rational(-b) * c2 * im(be * be)},
      {c0 * im(al), b * c2 * im(al * al), b * (c4 * iab + c2 * im(al * be))},
  }});
}

inline A5RealModel real_model_a5(const RealModelParams& params = RealModelParams::standard(),
                                 const A5Generators& gens = A5Generators::standard()) {
  params.validate();
  A5RealModel out;
  const long m = lcm_conductor(lcm_conductor(kA5Conductor, params.conductor()), gens.C.conductor());
  out.phi = detail::phi_matrix(params.alpha, params.beta, m);
  out.A = detail::conjugate_real_form(out.phi, gens.A.lift());
  out.B = detail::conjugate_real_form(out.phi, gens.B.lift());
  out.C = detail::conjugate_real_form(out.phi, gens.C.lift());
  out.all_real = out.A.is_real() && out.B.is_real() && out.C.is_real();

  try {
    const FiniteSubgroup g = closure({ProjElement(out.A), ProjElement(out.B), ProjElement(out.C)});
    out.closure_order = g.order();
    out.order_histogram = fingerprint(g).order_histogram;
    out.closure_all_real = std::all_of(g.elements().begin(), g.elements().end(),
                                       [](const ProjElement& e) { return e.is_real(); });
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ClosureExceedsCap) throw;
    out.diagnostics.push_back("model closure exceeds cap");
  }

  // The rotation and reflection must agree with the dihedral model for n=5, a=4.
  if (printed_cyclic_model(5, 4, params) != out.A)
    out.diagnostics.push_back("A model differs from the dihedral closed form");
  if (printed_dihedral_reflection(params) != out.B)
    out.diagnostics.push_back("B model differs from the dihedral closed form");
  out.matches_printed_formula = a5_c_model_closed_form(params) == out.C;
  out.matches_standard_formula = a5_c_model_closed_form(params, 1, 2, 2) == out.C;
  if (!out.matches_printed_formula)
    out.diagnostics.push_back("C model differs from the displayed closed form (displayed C has infinite order)");
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

struct CatalogEntry {
  PrimitiveId id = PrimitiveId::Hess216;
  std::string name;
  std::size_t expected_order = 0;
  std::optional<std::vector<ProjElement>> generators;  // absent for A6 and PSL27
  std::optional<ProjElement> witness_element;          // PSL27 only
  DescentVerdict verdict;
  VerificationMode verification_mode = VerificationMode::computed;
  VerificationMode moduli_mode = VerificationMode::computed;
  VerificationMode definability_mode = VerificationMode::computed;
  std::optional<ProjElement> moduli_conjugator;
  std::string notes;
};

/// Entry with generators but no verdict.
inline CatalogEntry catalog_skeleton(PrimitiveId id, const PrimitiveGenerators& gens = {}) {
  CatalogEntry e;
  e.id = id;
  e.name = std::string(to_string(id));
  switch (id) {
    case PrimitiveId::Hess216:
      e.expected_order = 216;
      e.generators = hessian_generator_list(216, gens.hessian);
      break;
    case PrimitiveId::Hess72:
      e.expected_order = 72;
      e.generators = hessian_generator_list(72, gens.hessian);
      break;
    case PrimitiveId::Hess36:
      e.expected_order = 36;
      e.generators = hessian_generator_list(36, gens.hessian);
      break;
    case PrimitiveId::A5:
      e.expected_order = 60;
      e.generators = std::vector<ProjElement>{gens.a5.A, gens.a5.B, gens.a5.C};
      break;
    case PrimitiveId::A6:
      e.expected_order = 360;
      e.notes = "no matrices; contains C3xC3 as an abstract subgroup";
      break;
    case PrimitiveId::PSL27:
      e.expected_order = 168;
      e.witness_element = psl27_witness();
      e.notes = "represented by the witness element diag(1, z7, z7^3)";
      break;
  }
  return e;
}

struct ModuliCheck {
  Tri verdict = Tri::unknown;
  VerificationMode mode = VerificationMode::literature;
  std::optional<ProjElement> conjugator;  // psi with psi^-1 G psi = sigma G
  std::string detail;
};

inline ModuliCheck moduli_check(const CatalogEntry& entry, const PrimitiveGenerators& gens = {}) {
  ModuliCheck out;
  switch (entry.id) {
    case PrimitiveId::Hess216:
    case PrimitiveId::Hess36:
    case PrimitiveId::A5: {
      const FiniteSubgroup g = closure(*entry.generators);
      if (sigma_image(g) == g) {
        out = {Tri::yes, VerificationMode::computed, ProjElement::identity(g.conductor()),
               "sigma G = G setwise"};
      } else {
        out = {Tri::yes, VerificationMode::literature, std::nullopt,
               "single conjugacy class; sigma G != G setwise for this copy"};
      }
      break;
    }
    case PrimitiveId::Hess72: {
      const FiniteSubgroup h216 = build_hessian(216, gens.hessian);
      const FiniteSubgroup h72 = closure(*entry.generators);
      const FiniteSubgroup sh72 = sigma_image(h72);
      if (auto psi = subgroup_conjugacy_search(h72, sh72, h216)) {
        out = {Tri::yes, VerificationMode::computed, psi, "psi in Hess216 with psi^-1 Hess72 psi = sigma Hess72"};
      } else {
        out = {Tri::unknown, VerificationMode::computed, std::nullopt, "no conjugator found in Hess216"};
      }
      break;
    }
    case PrimitiveId::A6:
    case PrimitiveId::PSL27:
      out = {Tri::yes, VerificationMode::literature, std::nullopt,
             "single PGL3(C)-conjugacy class"};
      break;
  }
  return out;
}

namespace detail {

inline DescentVerdict cyclic_subgroup_obstruction(const ProjElement& g, const std::string& label) {
  const CyclicNormalForm nf = cyclic_normal_form(g);
  DescentVerdict v = verdict_cyclic(g);
  DescentVerdict out;
  out.definable_over_R = Tri::no;
  out.obstruction = Obstruction::cyclic_subgroup;
  out.obstruction_certified = v.obstruction_certified;
  out.reason = "cyclic subgroup <" + label + "> with normal form (" + std::to_string(nf.n) + "," +
               std::to_string(nf.a) + "," + std::to_string(nf.b) + ") is not definable: " + v.reason;
  out.obstruction_detail = v.obstruction ? std::string(to_string(*v.obstruction)) : "";
  return out;
}

} // namespace detail

/// Definability over R by the obstruction rules, in order: a non-definable
/// cyclic subgroup, a C3 x C3 subgroup, then the constructive A5 model.
/// The moduli flag is left unknown; combine with moduli_check.
inline DescentVerdict pseudo_real_check(const CatalogEntry& entry, bool require_generators = false,
                                        const RealModelParams& params = RealModelParams::standard()) {
  DescentVerdict v;
  if (!entry.generators) {
    if (require_generators) fail(ErrorKind::NoGenerators, entry.name + " has no generator matrices");
    if (entry.witness_element)
      return detail::cyclic_subgroup_obstruction(*entry.witness_element, "witness");
    if (entry.id == PrimitiveId::A6) {
      v.definable_over_R = Tri::no;
      v.obstruction = Obstruction::c3xc3_rule;
      v.reason = "A6 contains C3xC3 and zeta3 is not real";
      v.obstruction_detail = "abstract subgroup fact; no matrices";
      return v;
    }
    return v;
  }

  const FiniteSubgroup g = closure(*entry.generators);

  for (std::size_t i = 0; i < g.elements().size(); ++i) {
    const ProjElement& e = g.elements()[i];
    if (e.is_identity()) continue;
    if (!definable_cyclic(cyclic_normal_form(e)).definable)
      return detail::cyclic_subgroup_obstruction(e, "element #" + std::to_string(i));
  }

  if (auto pair = find_subgroup_C3xC3(g)) {
    v.definable_over_R = Tri::no;
    v.obstruction = Obstruction::c3xc3_rule;
    v.obstruction_certified = pair->first * pair->second == pair->second * pair->first;
    v.reason = "contains C3xC3 and zeta3 is not real";
    v.witness = std::nullopt;
    v.obstruction_detail = "commuting order-3 pair generating a group of order 9";
    v.diagnostics.push_back("C3xC3 generators: " + pair->first.key() + " ; " + pair->second.key());
    return v;
  }

  if (entry.id == PrimitiveId::A5) {
    PrimitiveGenerators gens;
    gens.a5 = {(*entry.generators)[0], (*entry.generators)[1], (*entry.generators)[2]};
    const A5RealModel model = real_model_a5(params, gens.a5);
    if (model.verified()) {
      v.definable_over_R = Tri::yes;
      v.reason = "explicit real model phi^-1 <A,B,C> phi";
      v.witness = Witness{"real model of the A5 copy", {model.A, model.B, model.C}, model.phi};
      v.diagnostics = model.diagnostics;
      return v;
    }
    v.diagnostics.push_back("A5 real model failed verification");
  }
  v.reason = "no rule applies";
  return v;
}

/// Full catalog row: moduli, definability and labels.
inline CatalogEntry evaluate_entry(CatalogEntry e, const PrimitiveGenerators& gens = {}) {
  const ModuliCheck mod = moduli_check(e, gens);
  DescentVerdict v = pseudo_real_check(e);
  v.real_field_of_moduli = mod.verdict;
  v.moduli_reason = mod.detail;
  e.verdict = std::move(v);
  e.moduli_mode = mod.mode;
  e.moduli_conjugator = mod.conjugator;
  e.definability_mode = e.id == PrimitiveId::A6 ? VerificationMode::rule_based : VerificationMode::computed;
  if (e.definability_mode == VerificationMode::rule_based)
    e.verification_mode = VerificationMode::rule_based;
  else if (e.moduli_mode == VerificationMode::literature)
    e.verification_mode = VerificationMode::literature;
  else
    e.verification_mode = VerificationMode::computed;
  return e;
}

inline std::vector<CatalogEntry> catalog(const PrimitiveGenerators& gens = {}) {
  std::vector<CatalogEntry> out;
  for (auto id : kAllPrimitive) out.push_back(evaluate_entry(catalog_skeleton(id, gens), gens));
  return out;
}

// ---------------------------------------------------------------------------
// Recomputation for `verify`

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline std::optional<FiniteSubgroup> try_closure(const std::vector<ProjElement>& gens,
                                                 std::vector<CheckResult>& out,
                                                 std::size_t expected) {
  try {
    FiniteSubgroup g = closure(gens);
    out.push_back({"order", g.order() == expected,
                   "got " + std::to_string(g.order()) + ", expected " + std::to_string(expected)});
    return g;
  } catch (const Error& e) {
    out.push_back({"order", false, e.what()});
    return std::nullopt;
  }
}

} // namespace detail

/// Recompute the structural facts of one group with explicit generators.
inline std::vector<CheckResult> verify_primitive(PrimitiveId id, const PrimitiveGenerators& gens = {}) {
  std::vector<CheckResult> out;
  switch (id) {
    case PrimitiveId::Hess216:
    case PrimitiveId::Hess72:
    case PrimitiveId::Hess36: {
      const int which = id == PrimitiveId::Hess216 ? 216 : id == PrimitiveId::Hess72 ? 72 : 36;
      auto g = detail::try_closure(hessian_generator_list(which, gens.hessian), out,
                                   static_cast<std::size_t>(which));
      if (!g) break;
      out.push_back({"lagrange", g->satisfies_lagrange(), ""});
      out.push_back({"C3xC3 subgroup", find_subgroup_C3xC3(*g).has_value(), ""});
      if (which != 72) {
        out.push_back({"sigma-stable", sigma_image(*g) == *g, "sigma G = G setwise"});
      } else {
        auto h216 = detail::try_closure(hessian_generator_list(216, gens.hessian), out, 216);
        if (!h216) break;
        out.push_back({"subgroup of Hess216", g->is_subset_of(*h216), ""});
        const FiniteSubgroup sg = sigma_image(*g);
        const auto psi = subgroup_conjugacy_search(*g, sg, *h216);
        out.push_back({"psi^-1 Hess72 psi = sigma Hess72", psi && g->conjugated_by(*psi) == sg,
                       psi ? "psi = " + psi->canonical().str() : "not found"});
      }
      const DescentVerdict v = evaluate_entry(catalog_skeleton(id, gens), gens).verdict;
      out.push_back({"pseudo-real", v.pseudo_real(), v.reason});
      break;
    }
    case PrimitiveId::A5: {
      auto g = detail::try_closure({gens.a5.A, gens.a5.B, gens.a5.C}, out, 60);
      if (!g) break;
      const std::map<int, int> want{{1, 1}, {2, 15}, {3, 20}, {5, 24}};
      out.push_back({"order histogram", fingerprint(*g).order_histogram == want, ""});
      out.push_back({"no C3xC3 subgroup", !find_subgroup_C3xC3(*g).has_value(), ""});
      out.push_back({"sigma-stable", sigma_image(*g) == *g, ""});
      const A5RealModel m = real_model_a5(RealModelParams::standard(), gens.a5);
      out.push_back({"real model", m.verified() && m.order_histogram == want,
                     "closure order " + std::to_string(m.closure_order)});
      break;
    }
    case PrimitiveId::A6:
    case PrimitiveId::PSL27: {
      const CatalogEntry e = evaluate_entry(catalog_skeleton(id, gens), gens);
      out.push_back({"pseudo-real", e.verdict.pseudo_real(), e.verdict.reason});
      break;
    }
  }
  return out;
}

} // namespace pgl3
