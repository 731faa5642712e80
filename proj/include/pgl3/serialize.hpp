#pragma once

// JSON encodings shared by the CLI and the tests.
//
//   element     {"N": 12, "coeffs": ["1", "-1/2", ...]}        (phi(N) entries)
//   matrix      {"field_N": 12, "rows": [[elem, elem, elem] x 3]}
//   group       {"generators": [matrix...], "order": 216, "elements": [matrix...]}
//   polynomial  {"degree": 5, "terms": [{"exps": [i, j, k], "coeff": elem}, ...]}

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgl3/curves.hpp"
#include "pgl3/cyclotomic.hpp"
#include "pgl3/descent.hpp"
#include "pgl3/error.hpp"
#include "pgl3/finitegroup.hpp"
#include "pgl3/numeric.hpp"
#include "pgl3/projlinear.hpp"

namespace pgl3 {

using json = nlohmann::json;

/// Parse "p/q" or "p"; throws ParseError.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) fail(ErrorKind::ParseError, "empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  const auto slash = s.find('/');
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const bool ok = slash == std::string::npos ? digits(start, s.size())
                                             : digits(start, slash) && digits(slash + 1, s.size());
  if (!ok) fail(ErrorKind::ParseError, "malformed rational '" + s + "'");
  Rational q;
  q.set_str(s[0] == '+' ? s.substr(1) : s, 10);
  if (q.get_den() == 0) fail(ErrorKind::DivisionByZero, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline json to_json(const Cyclo& x) {
  json coeffs = json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(c.get_str());
  return {{"N", x.conductor()}, {"coeffs", coeffs}};
}

inline Cyclo cyclo_from_json(const json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("coeffs"))
    fail(ErrorKind::ParseError, "element needs \"N\" and \"coeffs\"");
  if (!j["N"].is_number_integer() || j["N"].get<long>() < 1)
    fail(ErrorKind::ParseError, "\"N\" must be a positive integer");
  const long n = j["N"].get<long>();
  const auto field = CycloField::get(n);
  const auto& cs = j["coeffs"];
  if (!cs.is_array() || cs.size() != static_cast<std::size_t>(field->degree()))
    fail(ErrorKind::ParseError, "\"coeffs\" must have phi(N) = " + std::to_string(field->degree()) + " entries");
  std::vector<Rational> v;
  for (const auto& c : cs) {
    if (c.is_string())
      v.push_back(parse_rational(c.get<std::string>()));
    else if (c.is_number_integer())
      v.emplace_back(c.get<long>());
    else
      fail(ErrorKind::ParseError, "coefficient must be a \"p/q\" string");
  }
  return Cyclo(field, v);
}

inline json to_json(const Matrix3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) {
    json row = json::array();
    for (int c = 0; c < 3; ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return {{"field_N", m.conductor()}, {"rows", rows}};
}

inline Matrix3 matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows")) fail(ErrorKind::ParseError, "matrix needs \"rows\"");
  const auto& rows = j["rows"];
  if (!rows.is_array() || rows.size() != 3) fail(ErrorKind::ParseError, "matrix needs 3 rows");
  long n = 1;
  if (j.contains("field_N")) {
    if (!j["field_N"].is_number_integer() || j["field_N"].get<long>() < 1)
      fail(ErrorKind::ParseError, "\"field_N\" must be a positive integer");
    n = j["field_N"].get<long>();
  }
  Matrix3::Rows out;
  for (std::size_t r = 0; r < 3; ++r) {
    if (!rows[r].is_array() || rows[r].size() != 3) fail(ErrorKind::ParseError, "each row needs 3 entries");
    for (std::size_t c = 0; c < 3; ++c) {
      Cyclo x = cyclo_from_json(rows[r][c]);
      if (n % x.conductor() != 0)
        fail(ErrorKind::FieldMismatch, "entry conductor does not divide field_N");
      out[r][c] = x.embed(n);
    }
  }
  return Matrix3(out);
}

inline json to_json(const FiniteSubgroup& g, bool with_elements = false) {
  json gens = json::array();
  for (const auto& x : g.generators()) gens.push_back(to_json(x.lift()));
  json out = {{"generators", gens}, {"order", g.order()}};
  if (with_elements) {
    json els = json::array();
    for (const auto& x : g.elements()) els.push_back(to_json(x.canonical()));
    out["elements"] = els;
  }
  return out;
}

inline FiniteSubgroup group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    fail(ErrorKind::ParseError, "group needs \"generators\"");
  std::vector<ProjElement> gens;
  for (const auto& m : j["generators"]) gens.emplace_back(matrix_from_json(m));
  if (gens.empty()) fail(ErrorKind::NoGenerators, "empty generator list");
  FiniteSubgroup g = closure(gens);
  if (j.contains("order") && j["order"].get<std::size_t>() != g.order())
    fail(ErrorKind::InvalidInput, "stated order does not match the closure");
  return g;
}

inline json to_json(const HomogeneousPolynomial& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms())
    terms.push_back({{"exps", {e[0], e[1], e[2]}}, {"coeff", to_json(c)}});
  return {{"degree", f.degree()}, {"terms", terms}};
}

inline HomogeneousPolynomial polynomial_from_json(const json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("terms"))
    fail(ErrorKind::ParseError, "polynomial needs \"degree\" and \"terms\"");
  const int d = j["degree"].get<int>();
  long n = 1;
  std::vector<std::pair<Exponents, Cyclo>> terms;
  for (const auto& t : j["terms"]) {
    const auto& e = t.at("exps");
    if (!e.is_array() || e.size() != 3) fail(ErrorKind::ParseError, "\"exps\" needs 3 entries");
    Cyclo c = cyclo_from_json(t.at("coeff"));
    n = lcm_conductor(n, c.conductor());
    terms.push_back({{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()}, std::move(c)});
  }
  HomogeneousPolynomial f(d, n);
  for (const auto& [e, c] : terms) f.add_term(e, c);
  return f;
}

// ---------------------------------------------------------------------------
// Numeric rendering

inline std::string numeric_string(const Cyclo& x, long bits = 128, int digits = 6) {
  if (x.is_real()) return x.is_zero() ? "0" : x.to_complex(bits).re.str(digits);
  // render the exact parts separately so a zero part carries no roundoff
  const auto [re_part, im_part] = x.re_im();
  const std::string re = re_part.is_zero() ? "0" : re_part.to_complex(bits).re.str(digits);
  std::string im = im_part.to_complex(bits).re.str(digits);
  if (im[0] != '-') im = "+" + im;
  return re + im + "i";
}

inline json numeric_json(const Matrix3& m, long bits = 128) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) {
    json row = json::array();
    for (int c = 0; c < 3; ++c) row.push_back(numeric_string(m(r, c), bits));
    rows.push_back(row);
  }
  return rows;
}

inline std::string pretty(const Matrix3& m, long bits = 128) {
  std::string s;
  for (int r = 0; r < 3; ++r) {
    s += "  [";
    for (int c = 0; c < 3; ++c) s += (c ? ", " : "") + m(r, c).str();
    s += "]    ~ [";
    for (int c = 0; c < 3; ++c) s += (c ? ", " : "") + numeric_string(m(r, c), bits);
    s += "]\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Verdicts

inline json tri_json(Tri t) {
  if (t == Tri::unknown) return nullptr;
  return t == Tri::yes;
}

inline json to_json(const DescentVerdict& v) {
  json out = {
      {"moduli", std::string(to_string(v.real_field_of_moduli))},
      {"definable", tri_json(v.definable_over_R)},
      {"pseudo_real", v.pseudo_real()},
      {"reason", v.reason},
  };
  if (!v.moduli_reason.empty()) out["moduli_reason"] = v.moduli_reason;
  if (v.witness) {
    json gens = json::array();
    for (const auto& m : v.witness->generators) gens.push_back(to_json(m));
    json w = {{"description", v.witness->description}, {"generators", gens}};
    if (v.witness->conjugator) w["conjugator"] = to_json(*v.witness->conjugator);
    out["witness"] = w;
  }
  if (v.obstruction) {
    out["obstruction"] = {{"kind", std::string(to_string(*v.obstruction))},
                          {"detail", v.obstruction_detail},
                          {"certified", v.obstruction_certified}};
  }
  if (!v.diagnostics.empty()) out["diagnostics"] = v.diagnostics;
  return out;
}

inline json to_json(const CyclicNormalForm& nf) {
  return {{"n", nf.n}, {"a", nf.a}, {"b", nf.b}, {"homology", nf.homology}};
}

inline json error_json(const Error& e) {
  return {{"error", {{"kind", std::string(to_string(e.kind()))}, {"detail", e.detail()}}}};
}

} // namespace pgl3
