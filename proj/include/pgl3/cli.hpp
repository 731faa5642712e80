#pragma once

// Command-line front end. JSON goes to `out`; with --pretty a human-readable
// rendering of the same JSON goes to `err`.
//
// Exit codes: 0 computed, 1 a verification failed, 2 invalid input.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgl3/acceptance.hpp"
#include "pgl3/curves.hpp"
#include "pgl3/descent.hpp"
#include "pgl3/error.hpp"
#include "pgl3/expr.hpp"
#include "pgl3/primitive.hpp"
#include "pgl3/serialize.hpp"

namespace pgl3::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInvalid = 2;

struct Options {
  bool pretty = false;
  long precision = 128;

  int n = 0;
  int a = 0;
  std::optional<int> b;
  std::string alpha, beta;
  long conductor = 4;
  std::string matrix_file;

  std::string model_kind;
  std::string verify_name;
  std::string curve_kind;
  std::string curve_a = "1", curve_b = "2";
  std::string checks = "smooth,aut,moduli";

  std::string fault;
  int cases = 1000;
  std::uint64_t seed = 20240611;
};

struct Outcome {
  json body;
  int code = kExitOk;
  std::string text;
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline json histogram_json(const std::map<int, int>& h) {
  json out = json::object();
  for (const auto& [k, v] : h) out[std::to_string(k)] = v;
  return out;
}

inline RealModelParams params_from(const Options& o) {
  if (o.alpha.empty() && o.beta.empty()) return RealModelParams::standard();
  if (o.alpha.empty() || o.beta.empty()) fail(ErrorKind::InvalidInput, "--alpha and --beta go together");
  RealModelParams p{parse_cyclo_expr(o.alpha, o.conductor), parse_cyclo_expr(o.beta, o.conductor)};
  p.validate();
  return p;
}

inline json params_json(const RealModelParams& p) {
  return {{"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}};
}

inline std::string verdict_text(const json& v) {
  std::ostringstream os;
  auto tri = [](const json& x) { return x.is_null() ? std::string("unknown") : yes_no(x.get<bool>()); };
  os << "real field of moduli: " << v["moduli"].get<std::string>() << "\n"
     << "definable over R:     " << tri(v["definable"]) << "\n"
     << "pseudo-real:          " << yes_no(v["pseudo_real"].get<bool>()) << "\n"
     << "reason:               " << v["reason"].get<std::string>() << "\n";
  if (v.contains("obstruction"))
    os << "obstruction:          " << v["obstruction"]["kind"].get<std::string>()
       << (v["obstruction"]["certified"].get<bool>() ? " (certified)" : " (not certified)") << "\n";
  if (v.contains("diagnostics"))
    for (const auto& d : v["diagnostics"]) os << "diagnostic:           " << d.get<std::string>() << "\n";
  return os.str();
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad JSON in '") + path + "': " + e.what());
  }
}

inline Rational parse_flag_rational(const std::string& flag, const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const Error& e) {
    fail(e.kind(), flag + ": " + e.detail());
  }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline Outcome cmd_classify(const Options& o) {
  const CyclicNormalForm nf = make_normal_form(o.n, o.a, o.b.value_or(0));
  const DescentVerdict v = verdict_normal_form(nf);
  Outcome r;
  r.body = to_json(v);
  r.body["normal_form"] = to_json(nf);
  r.text = "cyclic group <diag(1, z^" + std::to_string(nf.a) + ", z^" + std::to_string(nf.b) + ")>, z = zeta_" +
           std::to_string(nf.n) + "\n" + detail::verdict_text(r.body);
  if (v.witness)
    r.text += "real model generator:\n" + pretty(v.witness->generators.front(), o.precision);
  return r;
}

inline Outcome cmd_classify_element(const Options& o) {
  const Matrix3 m = matrix_from_json(detail::read_json_file(o.matrix_file));
  if (m.det().is_zero()) fail(ErrorKind::SingularMatrix, "matrix is not invertible");
  const ProjElement g(m);
  const DescentVerdict v = verdict_cyclic(g);
  Outcome r;
  r.body = to_json(v);
  std::string head = "cyclic group generated by the input element\n";
  if (v.real_field_of_moduli != Tri::unknown) {
    const CyclicNormalForm nf = cyclic_normal_form(g);
    r.body["normal_form"] = to_json(nf);
    head += "normal form: (n, a, b) = (" + std::to_string(nf.n) + ", " + std::to_string(nf.a) + ", " +
            std::to_string(nf.b) + ")\n";
  }
  r.text = head + detail::verdict_text(r.body);
  return r;
}

inline Outcome cmd_real_model(const Options& o) {
  const RealModelParams params = detail::params_from(o);
  Outcome r;
  if (o.model_kind == "cyclic") {
    int a = o.a, b = 0;
    if (o.b) {
      b = *o.b;
    } else {
      // diag(1, z^a, z^-a)
      if (o.n < 2 || std::gcd(pgl3::detail::mod(a, o.n), o.n) != 1)
        fail(ErrorKind::InvalidInput, "without --b, --a must be a unit mod --n");
      const int x = pgl3::detail::mod(a, o.n);
      a = std::min(x, o.n - x);
      b = std::max(x, o.n - x);
      if (a == b) a = 0, b = 1;  // n = 2
    }
    const CyclicNormalForm nf = make_normal_form(o.n, a, b);
    const CyclicRealModel m = real_model_cyclic(nf, params);
    r.body = {{"kind", "cyclic"},
              {"normal_form", to_json(nf)},
              {"clause", m.clause},
              {"params", detail::params_json(params)},
              {"psi", to_json(m.psi)},
              {"phi", to_json(m.phi)},
              {"model", to_json(m.model)},
              {"numeric", numeric_json(m.model, o.precision)},
              {"checks",
               {{"all_real", m.all_real},
                {"order_n", m.order_ok},
                {"back_conjugation", m.back_conjugation_ok},
                {"matches_closed_form", m.matches_printed_formula}}},
              {"verified", m.verified()}};
    if (!m.diagnostics.empty()) r.body["diagnostics"] = m.diagnostics;
    r.code = m.verified() ? kExitOk : kExitVerification;
    r.text = "real model of <diag(1, z^" + std::to_string(nf.a) + ", z^" + std::to_string(nf.b) + ")>, n = " +
             std::to_string(nf.n) + " (" + m.clause + ")\n" + pretty(m.model, o.precision) +
             "verified: " + detail::yes_no(m.verified()) + "\n";
  } else if (o.model_kind == "dihedral") {
    const DihedralRealModel m = real_model_dihedral(o.n, o.a, params);
    r.body = {{"kind", "dihedral"},
              {"n", m.n},
              {"a", m.a},
              {"params", detail::params_json(params)},
              {"phi", to_json(m.phi)},
              {"rotation", to_json(m.rotation)},
              {"reflection", to_json(m.reflection)},
              {"numeric", {{"rotation", numeric_json(m.rotation, o.precision)},
                           {"reflection", numeric_json(m.reflection, o.precision)}}},
              {"checks",
               {{"all_real", m.all_real},
                {"relation", m.relation_ok},
                {"closure_order", m.closure_order},
                {"matches_closed_form", m.matches_printed_formula}}},
              {"verified", m.verified()}};
    if (!m.diagnostics.empty()) r.body["diagnostics"] = m.diagnostics;
    r.code = m.verified() ? kExitOk : kExitVerification;
    r.text = "real model of D_" + std::to_string(m.n) + " (a = " + std::to_string(m.a) + ")\nrotation:\n" +
             pretty(m.rotation, o.precision) + "reflection:\n" + pretty(m.reflection, o.precision) +
             "verified: " + detail::yes_no(m.verified()) + "\n";
  } else {
    const A5RealModel m = real_model_a5(params);
    r.body = {{"kind", "a5"},
              {"params", detail::params_json(params)},
              {"phi", to_json(m.phi)},
              {"A", to_json(m.A)},
              {"B", to_json(m.B)},
              {"C", to_json(m.C)},
              {"numeric",
               {{"A", numeric_json(m.A, o.precision)},
                {"B", numeric_json(m.B, o.precision)},
                {"C", numeric_json(m.C, o.precision)}}},
              {"checks",
               {{"all_real", m.all_real},
                {"closure_order", m.closure_order},
                {"closure_all_real", m.closure_all_real},
                {"order_histogram", detail::histogram_json(m.order_histogram)},
                {"matches_displayed_C_formula", m.matches_printed_formula},
                {"matches_corrected_C_formula", m.matches_standard_formula}}},
              {"verified", m.verified()}};
    if (!m.diagnostics.empty()) r.body["diagnostics"] = m.diagnostics;
    r.code = m.verified() ? kExitOk : kExitVerification;
    r.text = "real model of A5\nA:\n" + pretty(m.A, o.precision) + "B:\n" + pretty(m.B, o.precision) + "C:\n" +
             pretty(m.C, o.precision) + "closure order " + std::to_string(m.closure_order) +
             ", verified: " + detail::yes_no(m.verified()) + "\n";
  }
  return r;
}

inline Outcome cmd_catalog(const Options&) {
  Outcome r;
  json rows = json::array();
  std::ostringstream os;
  os << "name      order  moduli  definable  pseudo-real  mode        reason\n";
  for (const CatalogEntry& e : catalog()) {
    json row = {{"name", e.name},
                {"order", e.expected_order},
                {"moduli", std::string(to_string(e.verdict.real_field_of_moduli))},
                {"definable", tri_json(e.verdict.definable_over_R)},
                {"pseudo_real", e.verdict.pseudo_real()},
                {"mode", std::string(to_string(e.verification_mode))},
                {"moduli_mode", std::string(to_string(e.moduli_mode))},
                {"definability_mode", std::string(to_string(e.definability_mode))},
                {"reason", e.verdict.reason}};
    if (e.verdict.obstruction) row["obstruction"] = std::string(to_string(*e.verdict.obstruction));
    if (!e.notes.empty()) row["notes"] = e.notes;
    if (!e.verdict.diagnostics.empty()) row["diagnostics"] = e.verdict.diagnostics;
    char line[160];
    std::snprintf(line, sizeof line, "%-9s %5zu  %-6s  %-9s  %-11s  %-10s  ", e.name.c_str(), e.expected_order,
                  std::string(to_string(e.verdict.real_field_of_moduli)).c_str(),
                  std::string(to_string(e.verdict.definable_over_R)).c_str(),
                  detail::yes_no(e.verdict.pseudo_real()).c_str(),
                  std::string(to_string(e.verification_mode)).c_str());
    os << line << e.verdict.reason << "\n";
    rows.push_back(row);
  }
  r.body = {{"groups", rows}};
  r.text = os.str();
  return r;
}

inline Outcome cmd_verify(const Options& o) {
  const PrimitiveId id = parse_primitive_id(o.verify_name);
  Outcome r;
  const auto checks = verify_primitive(id);
  json arr = json::array();
  bool all = true;
  std::ostringstream os;
  os << to_string(id) << "\n";
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
    os << "  " << (c.passed ? "ok    " : "FAIL  ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")")
       << "\n";
  }
  r.body = {{"name", std::string(to_string(id))}, {"checks", arr}, {"passed", all}};
  if (id != PrimitiveId::A6 && id != PrimitiveId::PSL27) {
    try {
      const FiniteSubgroup g = id == PrimitiveId::A5 ? build_a5()
                               : id == PrimitiveId::Hess216 ? build_hessian(216)
                               : id == PrimitiveId::Hess72  ? build_hessian(72)
                                                            : build_hessian(36);
      const auto fp = fingerprint(g);
      const bool stable = sigma_image(g) == g;
      r.body["order"] = g.order();
      r.body["order_histogram"] = detail::histogram_json(fp.order_histogram);
      r.body["sigma_stable"] = stable;
      os << "  order " << g.order() << ", sigma-stable: " << detail::yes_no(stable) << ", histogram";
      for (const auto& [k, v] : fp.order_histogram) os << " " << k << ":" << v;
      os << "\n";
    } catch (const Error&) {
      r.body["order"] = nullptr;
      all = false;
      r.body["passed"] = false;
    }
  }
  r.code = all ? kExitOk : kExitVerification;
  r.text = os.str() + (all ? "all checks passed\n" : "verification FAILED\n");
  return r;
}

inline Outcome cmd_curve(const Options& o) {
  bool want_smooth = false, want_aut = false, want_moduli = false;
  std::stringstream ss(o.checks);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item == "smooth")
      want_smooth = true;
    else if (item == "aut")
      want_aut = true;
    else if (item == "moduli")
      want_moduli = true;
    else
      fail(ErrorKind::InvalidInput, "unknown check '" + item + "' (use smooth, aut, moduli)");
  }
  const Rational a = detail::parse_flag_rational("--a", o.curve_a);
  const Rational b = detail::parse_flag_rational("--b", o.curve_b);
  const QuinticFamilyMember m = QuinticFamilyMember::make(a, b);

  Outcome r;
  r.body = {{"family", "X^5 + Y^5 + Z^5 + i a X Y^2 Z^2 + i b X^3 Y Z"},
            {"a", a.get_str()},
            {"b", b.get_str()},
            {"polynomial", to_json(m.polynomial)}};
  json certs = json::object();
  std::ostringstream os;
  os << "quintic F = " << m.polynomial.str() << "\n";

  if (want_smooth) {
    const auto c = smoothness_check_quintic(m);
    json fibers = json::array();
    for (const auto& f : c.fibers)
      fibers.push_back({{"k", f.k},
                        {"gcd_FY_FZ_degree", f.gcd_fy_fz_degree},
                        {"gcd_with_F_degree", f.gcd_with_f_degree},
                        {"gcd_with_FX_degree", f.gcd_with_fx_degree}});
    json res = json::array();
    for (const auto& x : c.resultant.coeffs()) res.push_back(to_json(x));
    certs["smooth"] = {{"y0_resultant", to_json(c.y0_resultant)},
                       {"y0_ok", c.y0_ok},
                       {"resultant_in_Z", res},
                       {"resultant_expected", "-125 i b^3 (Z^5 - 1)^3"},
                       {"resultant_matches", c.resultant_matches},
                       {"fibers", fibers}};
    r.body["smooth"] = c.smooth;
    os << "smooth: " << detail::yes_no(c.smooth) << "  (Res_X(F_Y, F_Z) matches -125 i b^3 (Z^5-1)^3: "
       << detail::yes_no(c.resultant_matches) << ")\n";
  }
  if (want_aut) {
    const bool d10 = aut_contains(m.polynomial, quintic_d10());
    const bool compat = d10 && aut_sigma_compat(m.polynomial, quintic_d10());
    const bool rho3 = rho3_diagonal_check(m.polynomial);
    certs["aut"] = {{"generators", {to_json(quintic_rho1().lift()), to_json(quintic_rho2().lift())}},
                    {"sigma_compatible", compat},
                    {"no_extra_diagonal_automorphism", rho3},
                    {"note",
                     "Aut contains D10; exclusion of larger groups rests on the stratification of smooth plane "
                     "quintics plus the diagonal rho3 check"}};
    r.body["aut_contains_D10"] = d10;
    os << "Aut contains D10: " << detail::yes_no(d10) << ", sigma-compatible: " << detail::yes_no(compat)
       << ", no extra diagonal automorphism: " << detail::yes_no(rho3) << "\n";
  }
  if (want_moduli) {
    const auto res = moduli_obstruction_quintic(m);
    json trace = json::array();
    int isos = 0;
    for (const auto& t : res.trace) {
      isos += t.isomorphism;
      trace.push_back({{"shape", t.shape},
                       {"alpha", "z5^" + std::to_string(t.alpha_exp)},
                       {"beta", "z5^" + std::to_string(t.beta_exp)},
                       {"isomorphism", t.isomorphism},
                       {"failure", t.failure}});
    }
    certs["moduli"] = {{"checkpoints", res.checkpoints},
                       {"candidates", res.trace.size()},
                       {"isomorphisms", isos},
                       {"trace", trace}};
    r.body["moduli_obstruction"] = res.obstructed;
    os << "no isomorphism C -> sigma C: " << detail::yes_no(res.obstructed) << "  (" << res.trace.size()
       << " normalizer candidates, " << isos << " isomorphisms)\n";
  }
  r.body["certificates"] = certs;
  r.text = os.str();
  return r;
}

inline Outcome cmd_selftest(const Options& o) {
  AcceptanceOptions opt;
  opt.seed = o.seed;
  opt.property_cases = o.cases;
  opt.precision_bits = o.precision;
  if (o.fault == "hessian")
    opt.corrupt_hessian = true;
  else if (!o.fault.empty())
    fail(ErrorKind::InvalidInput, "unknown fault '" + o.fault + "' (use hessian)");
  const auto results = run_acceptance(opt);
  json arr = json::array();
  bool all = true;
  for (const auto& c : results) {
    arr.push_back({{"criterion", c.id}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
  }
  Outcome r;
  r.body = {{"criteria", arr}, {"passed", all}};
  r.code = all ? kExitOk : kExitVerification;
  r.text = format_report(results);
  return r;
}

// ---------------------------------------------------------------------------
// Dispatcher

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Real fields of moduli and real models for finite subgroups of PGL3(C)", "pgl3"};
  app.require_subcommand(1);
  app.add_flag("--pretty", o.pretty, "human-readable rendering on stderr");
  app.add_option("--precision", o.precision, "MPFR bits for numeric rendering")->check(CLI::Range(16L, 4096L));

  auto nab = [&](CLI::App* sub, bool b_required) {
    sub->add_option("--n", o.n, "cyclic order")->required();
    sub->add_option("--a", o.a, "exponent a")->required();
    auto* b = sub->add_option("--b", o.b, "exponent b");
    if (b_required) b->required();
  };
  auto params = [&](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha, "phi parameter, e.g. \"z^3\" or \"1/2*z-2\"");
    sub->add_option("--beta", o.beta, "phi parameter");
    sub->add_option("--conductor", o.conductor, "N with z = zeta_N in --alpha/--beta")->check(CLI::Range(1L, 1000L));
  };

  auto* classify = app.add_subcommand("classify", "verdict for <diag(1, z^a, z^b)>, z = zeta_n");
  nab(classify, true);
  auto* classify_el = app.add_subcommand("classify-element", "verdict for the group generated by a matrix");
  classify_el->add_option("--matrix", o.matrix_file, "JSON matrix file")->required();
  auto* model = app.add_subcommand("real-model", "explicit real model");
  model->add_option("kind", o.model_kind, "cyclic, dihedral or a5")
      ->required()
      ->check(CLI::IsMember({"cyclic", "dihedral", "a5"}));
  model->add_option("--n", o.n, "order");
  model->add_option("--a", o.a, "exponent a");
  model->add_option("--b", o.b, "exponent b (cyclic; default -a)");
  params(model);
  auto* cat = app.add_subcommand("catalog", "verdict table for the primitive groups");
  auto* verify = app.add_subcommand("verify", "recompute the facts about one primitive group");
  verify->add_option("name", o.verify_name, "hess216, hess72, hess36, a5, a6 or psl27")->required();
  auto* curve = app.add_subcommand("curve", "plane curve reports");
  curve->add_option("family", o.curve_kind, "quintic")->required()->check(CLI::IsMember({"quintic"}));
  curve->add_option("--a", o.curve_a, "rational parameter a, \"P/Q\"");
  curve->add_option("--b", o.curve_b, "rational parameter b, \"P/Q\"");
  curve->add_option("--check", o.checks, "comma-separated subset of smooth,aut,moduli");
  auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
  self->add_option("--fault", o.fault, "inject a fault: hessian");
  self->add_option("--cases", o.cases, "random cases per property suite")->check(CLI::Range(1, 1000000));
  self->add_option("--seed", o.seed, "property-suite seed");
  for (auto* s : {classify, classify_el, model, cat, verify, curve, self}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << error_json(Error(ErrorKind::InvalidInput, e.what())).dump(2) << "\n";
    return kExitInvalid;
  }

  try {
    if (model->parsed() && o.model_kind != "a5" && !model->count("--n"))
      fail(ErrorKind::InvalidInput, "real-model " + o.model_kind + " needs --n and --a");
    Outcome r;
    if (classify->parsed())
      r = cmd_classify(o);
    else if (classify_el->parsed())
      r = cmd_classify_element(o);
    else if (model->parsed())
      r = cmd_real_model(o);
    else if (cat->parsed())
      r = cmd_catalog(o);
    else if (verify->parsed())
      r = cmd_verify(o);
    else if (curve->parsed())
      r = cmd_curve(o);
    else
      r = cmd_selftest(o);
    out << r.body.dump(2) << "\n";
    if (o.pretty) err << r.text;
    return r.code;
  } catch (const Error& e) {
    out << error_json(e).dump(2) << "\n";
    if (o.pretty) err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

} // namespace pgl3::cli
