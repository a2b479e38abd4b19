// JSON documents: divisor input, exact model serialization, and report
// payloads. Rationals travel as "p/q" strings; complex scalars as [re, im].

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "pz/construct.hpp"
#include "pz/error.hpp"
#include "pz/forms.hpp"
#include "pz/gauss_rat.hpp"
#include "pz/indexcalc.hpp"
#include "pz/oracle.hpp"
#include "pz/types.hpp"

namespace pz {

using json = nlohmann::ordered_json;

namespace detail {

inline Error field_error(const std::string& path, const std::string& what) {
  return Error(Errc::parse, path + ": " + what);
}

inline const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw field_error(path, std::string("missing field \"") + key + "\"");
  return *it;
}

inline Rational rational_field(const json& j, const std::string& path) {
  if (!j.is_string()) throw field_error(path, "rational must be a string \"p/q\", got " + std::string(j.type_name()));
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw field_error(path, e.what());
  }
}

inline GaussRat gauss_field(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw field_error(path, "complex scalar must be [re, im]");
  return {rational_field(j[0], path + "[0]"), rational_field(j[1], path + "[1]")};
}

inline json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return json(v.convert_to<long long>());
  return json(v.str());
}

inline Integer integer_field(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    try {
      Rational r = parse_rational(j.get<std::string>());
      if (is_integer(r)) return numerator_of(r);
    } catch (const Error&) {
    }
  }
  throw field_error(path, "expected an integer");
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k)
    if (text[k] == '\n') ++line;
  return line;
}

}  // namespace detail

inline json to_json(const Rational& r) { return to_string(r); }
inline json to_json(const GaussRat& z) { return json::array({to_string(z.re()), to_string(z.im())}); }

/// Non-finite doubles become the strings "inf", "-inf", "nan".
inline json real_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline json complex_json(cplx z) { return json::array({real_json(z.real()), real_json(z.imag())}); }

inline json parse_json_text(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, source + ":" + std::to_string(detail::line_of(text, e.byte)) + ": malformed JSON (" +
                                 e.what() + ")");
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- divisor documents ----

inline LinearForm form_from_json(const json& h, std::size_t n, const std::string& path) {
  const json& a = detail::member(h, "a", path);
  if (!a.is_array()) throw detail::field_error(path + ".a", "expected an array");
  if (a.size() != n)
    throw Error(Errc::dimension_mismatch, path + ".a: has " + std::to_string(a.size()) + " entries, expected n = " +
                                              std::to_string(n));
  LinearForm f;
  for (std::size_t j = 0; j < n; ++j) f.a.push_back(detail::gauss_field(a[j], path + ".a[" + std::to_string(j) + "]"));
  auto c = h.find("c");
  if (c != h.end()) f.c = detail::gauss_field(*c, path + ".c");
  auto m = h.find("mult");
  if (m != h.end()) {
    if (!m->is_number_integer() || m->get<long long>() < 1 || m->get<long long>() > 1000000)
      throw detail::field_error(path + ".mult", "multiplicity must be a positive integer");
    f.mult = static_cast<int>(m->get<long long>());
  }
  if (f.pivot() == f.dim()) throw Error(Errc::invalid_form, path + ".a: all coefficients are zero");
  return f;
}

inline PlaneDivisor divisor_from_json(const json& doc) {
  const json& nj = detail::member(doc, "n", "$");
  if (!nj.is_number_integer() || nj.get<long long>() < 2)
    throw detail::field_error("$.n", "dimension must be an integer >= 2");
  PlaneDivisor Z;
  Z.n = static_cast<std::size_t>(nj.get<long long>());
  const json& hs = detail::member(doc, "hyperplanes", "$");
  if (!hs.is_array()) throw detail::field_error("$.hyperplanes", "expected an array");
  for (std::size_t k = 0; k < hs.size(); ++k)
    Z.components.push_back(form_from_json(hs[k], Z.n, "$.hyperplanes[" + std::to_string(k) + "]"));
  Z.validate();
  return Z;
}

inline PlaneDivisor parse_divisor_document(const std::string& text, const std::string& source = "input") {
  return divisor_from_json(parse_json_text(text, source));
}

inline json form_to_json(const LinearForm& f) {
  json a = json::array();
  for (const auto& x : f.a) a.push_back(to_json(x));
  return {{"a", a}, {"c", to_json(f.c)}, {"mult", f.mult}};
}

inline json divisor_to_json(const PlaneDivisor& Z) {
  json hs = json::array();
  for (const auto& f : Z.components) hs.push_back(form_to_json(f));
  return {{"n", Z.n}, {"hyperplanes", hs}};
}

// ---- results ----

inline json index_to_json(const IndexMatrix& N) {
  json rows = json::array();
  for (const auto& row : N.N) {
    json r = json::array();
    for (const auto& x : row) r.push_back(detail::integer_json(x));
    rows.push_back(r);
  }
  return rows;
}

inline json classification_to_json(const ClassifiedForm& cf) {
  DivisorCertificate cert = divisor_certificate(cf);
  json perp = json::array();
  for (const auto& v : cert.perp_basis) {
    json r = json::array();
    for (const auto& x : v) r.push_back(detail::integer_json(x));
    perp.push_back(r);
  }
  json out = {{"class", class_name(cf.cls)}, {"m", cf.m}, {"perp_basis", perp}};
  if (cf.cls == FormClass::L1) {
    json k0 = json::array();
    for (const auto& x : cf.k0) k0.push_back(detail::integer_json(x));
    out["k0"] = k0;
    out["lambda"] = to_json(cf.lambda);
    out["reduced_c"] = to_json(cf.reduced_c);
  } else {
    out["witness"] = {{"p", cert.witness->p + 1}, {"q", cert.witness->q + 1}};
    ValueLattice lat = value_lattice(cf.form);
    out["lattice"] = {{"w1", to_json(lat.w1)}, {"w2", to_json(lat.w2)}, {"covolume", to_json(lat.covolume)}};
  }
  out["key"] = canonical_key(cf.form).str();
  return out;
}

inline json witness_to_json(const RejectWitness& w) {
  return {{"p", w.p + 1}, {"q", w.q + 1}, {"sum", detail::integer_json(w.sum)}};
}

// ---- models ----

inline json model_to_json(const FunctionModel& m) {
  json l1 = json::array();
  for (const auto& f : m.l1) {
    json k0 = json::array();
    for (const auto& x : f.k0) k0.push_back(detail::integer_json(x));
    l1.push_back({{"k0", k0}, {"c", to_json(f.c)}, {"sign", f.sign}, {"mult", f.mult}});
  }
  json l2 = json::array();
  for (const auto& f : m.l2) {
    json coords = json::array();
    for (const auto& c : f.coords) coords.push_back(json::array({detail::integer_json(c.m1), detail::integer_json(c.m2)}));
    json a = json::array();
    for (const auto& x : f.form.a) a.push_back(to_json(x));
    l2.push_back({{"a", a},
                  {"c", to_json(f.form.c)},
                  {"mult", f.mult},
                  {"w1", to_json(f.lattice.w1)},
                  {"w2", to_json(f.lattice.w2)},
                  {"tau", to_json(f.lattice.tau)},
                  {"covolume", to_json(f.lattice.covolume)},
                  {"coords", coords}});
  }
  auto mat = [](const Matrix<GaussRat>& M) {
    json rows = json::array();
    for (const auto& row : M) {
      json r = json::array();
      for (const auto& x : row) r.push_back(to_json(x));
      rows.push_back(r);
    }
    return rows;
  };
  auto vec = [](const std::vector<GaussRat>& v) {
    json r = json::array();
    for (const auto& x : v) r.push_back(to_json(x));
    return r;
  };
  return {{"n", m.n}, {"eps", m.eps},   {"l1", l1},         {"l2", l2}, {"S", mat(m.S)},
          {"R", vec(m.R)}, {"sigma", mat(m.sigma)}, {"rho", vec(m.rho)}};
}

inline FunctionModel model_from_json(const json& j) {
  using detail::member;
  FunctionModel m;
  const json& nj = member(j, "n", "model");
  if (!nj.is_number_integer() || nj.get<long long>() < 2) throw detail::field_error("model.n", "expected integer >= 2");
  m.n = static_cast<std::size_t>(nj.get<long long>());
  const json& ej = member(j, "eps", "model");
  if (!ej.is_number()) throw detail::field_error("model.eps", "expected a number");
  m.eps = ej.get<double>();
  if (!(m.eps > 0.0)) throw Error(Errc::nonpositive_tolerance, "model.eps must be positive");

  auto vec = [&](const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != m.n)
      throw Error(Errc::dimension_mismatch, path + ": expected " + std::to_string(m.n) + " entries");
    std::vector<GaussRat> out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(detail::gauss_field(v[k], path + "[" + std::to_string(k) + "]"));
    return out;
  };
  auto mat = [&](const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != m.n)
      throw Error(Errc::dimension_mismatch, path + ": expected " + std::to_string(m.n) + " rows");
    Matrix<GaussRat> out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(vec(v[k], path + "[" + std::to_string(k) + "]"));
    return out;
  };

  const json& l1 = member(j, "l1", "model");
  for (std::size_t k = 0; k < l1.size(); ++k) {
    const std::string path = "model.l1[" + std::to_string(k) + "]";
    L1Factor f;
    const json& k0 = member(l1[k], "k0", path);
    if (!k0.is_array() || k0.size() != m.n) throw Error(Errc::dimension_mismatch, path + ".k0: wrong length");
    for (std::size_t i = 0; i < k0.size(); ++i) f.k0.push_back(detail::integer_field(k0[i], path + ".k0"));
    f.c = detail::gauss_field(member(l1[k], "c", path), path + ".c");
    f.sign = member(l1[k], "sign", path).get<int>() < 0 ? -1 : 1;
    f.mult = member(l1[k], "mult", path).get<int>();
    m.l1.push_back(std::move(f));
  }
  const json& l2 = member(j, "l2", "model");
  for (std::size_t k = 0; k < l2.size(); ++k) {
    const std::string path = "model.l2[" + std::to_string(k) + "]";
    const json& h = l2[k];
    L2Factor f;
    f.form.a = vec(member(h, "a", path), path + ".a");
    f.form.c = detail::gauss_field(member(h, "c", path), path + ".c");
    f.mult = f.form.mult = member(h, "mult", path).get<int>();
    f.lattice.w1 = detail::gauss_field(member(h, "w1", path), path + ".w1");
    f.lattice.w2 = detail::gauss_field(member(h, "w2", path), path + ".w2");
    f.lattice.tau = detail::gauss_field(member(h, "tau", path), path + ".tau");
    f.lattice.covolume = detail::rational_field(member(h, "covolume", path), path + ".covolume");
    if (f.lattice.w1.is_zero() || f.lattice.tau.is_real())
      throw Error(Errc::degenerate_lattice, path + ": lattice generators are degenerate");
    const json& coords = member(h, "coords", path);
    if (!coords.is_array() || coords.size() != m.n) throw Error(Errc::dimension_mismatch, path + ".coords: wrong length");
    for (const auto& c : coords) {
      if (!c.is_array() || c.size() != 2) throw detail::field_error(path + ".coords", "expected [m1, m2] pairs");
      f.coords.push_back({detail::integer_field(c[0], path + ".coords"), detail::integer_field(c[1], path + ".coords")});
    }
    m.l2.push_back(std::move(f));
  }
  m.S = mat(member(j, "S", "model"), "model.S");
  m.R = vec(member(j, "R", "model"), "model.R");
  m.sigma = mat(member(j, "sigma", "model"), "model.sigma");
  m.rho = vec(member(j, "rho", "model"), "model.rho");
  m.prepare();
  return m;
}

/// Accepts a JSON array of [re, im] pairs (numbers or "p/q" strings) or the
/// compact form "re,im;re,im".
inline CVec parse_point(const std::string& text) {
  auto scalar = [](const std::string& s) -> double {
    std::string t = s;
    while (!t.empty() && t.front() == ' ') t.erase(t.begin());
    while (!t.empty() && t.back() == ' ') t.pop_back();
    if (t.find('/') != std::string::npos) return to_double(parse_rational(t));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw Error(Errc::parse, "--point: bad number \"" + s + "\"");
    return v;
  };
  CVec z;
  std::string t = text;
  while (!t.empty() && t.front() == ' ') t.erase(t.begin());
  if (!t.empty() && t.front() == '[') {
    json j = parse_json_text(t, "--point");
    if (!j.is_array()) throw Error(Errc::parse, "--point: expected an array");
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::parse, "--point: each coordinate must be [re, im]");
      double part[2];
      for (int k = 0; k < 2; ++k) {
        if (e[k].is_number()) part[k] = e[k].get<double>();
        else if (e[k].is_string()) part[k] = scalar(e[k].get<std::string>());
        else throw Error(Errc::parse, "--point: coordinate parts must be numbers or strings");
      }
      z.emplace_back(part[0], part[1]);
    }
    return z;
  }
  std::stringstream ss(t);
  std::string coord;
  while (std::getline(ss, coord, ';')) {
    auto comma = coord.find(',');
    if (comma == std::string::npos) throw Error(Errc::parse, "--point: coordinate \"" + coord + "\" is not re,im");
    z.emplace_back(scalar(coord.substr(0, comma)), scalar(coord.substr(comma + 1)));
  }
  if (z.empty()) throw Error(Errc::parse, "--point: empty");
  return z;
}

// ---- report writer ----

/// Serializes with every floating value printed to 17 significant digits.
inline void write_json(std::string& out, const json& j, int indent = 2, int depth = 0) {
  auto pad = [&](int d) {
    if (indent > 0) out += "\n" + std::string(static_cast<std::size_t>(d * indent), ' ');
  };
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += std::isnan(x) ? "\"nan\"" : (x > 0 ? "\"inf\"" : "\"-inf\"");
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      std::string s = buf;
      if (s.find_first_of(".e") == std::string::npos) s += ".0";
      out += s;
      break;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) pad(depth + 1);
        write_json(out, e, indent, depth + 1);
      }
      if (!flat) pad(depth);
      out += "]";
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",";
        first = false;
        pad(depth + 1);
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        write_json(out, it.value(), indent, depth + 1);
      }
      pad(depth);
      out += "}";
      break;
    }
    default:
      out += j.dump();
  }
}

inline std::string to_report_string(const json& j, int indent = 2) {
  std::string s;
  write_json(s, j, indent);
  return s;
}

inline json verify_to_json(const VerifyReport& r) {
  json per = json::array();
  for (double x : r.periodicity_residual) per.push_back(real_json(x));
  auto probes = [](const std::vector<ZeroProbe>& v) {
    json a = json::array();
    for (const auto& p : v) {
      json pt = json::array();
      for (const auto& x : p.point) pt.push_back(complex_json(x));
      a.push_back({{"component", p.component + 1},
                   {"point", pt},
                   {"log_abs", real_json(p.log_abs)},
                   {"log_local_scale", real_json(p.log_local_scale)},
                   {"log_max_scale", real_json(p.log_max_scale)},
                   {"ok", p.ok}});
    }
    return a;
  };
  json out = {{"passed", r.passed()},
              {"tol", r.tol},
              {"periodicity_residual", per},
              {"max_residual", real_json(r.max_residual())},
              {"zero_hits", probes(r.zero_hits)},
              {"displaced", probes(r.displaced)},
              {"formula_index", index_to_json(r.formula_index)},
              {"numeric_index", index_to_json(r.numeric_index)},
              {"index_agrees", r.index_agrees}};
  if (!r.index_error.empty()) out["index_error"] = r.index_error;
  return out;
}

}  // namespace pz
