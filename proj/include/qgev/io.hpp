#pragma once

// JSON encodings. Rationals are always strings ("p/q" or "p"); Cyc8 values
// are 4-element arrays [c0, c1, c2, c3] of rational strings.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qgev/certify.hpp"
#include "qgev/error.hpp"
#include "qgev/linalg.hpp"
#include "qgev/poly.hpp"
#include "qgev/scalar.hpp"

namespace qgev::io {

using json = nlohmann::json;

inline Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw ParseError("rational must be a JSON string, got " + j.dump());
  return Rational::parse(j.get<std::string>());
}

inline json cyc8_to_json(const Cyc8& u) {
  json a = json::array();
  for (const auto& c : u.coords()) a.push_back(c.str());
  return a;
}

/// Accepts a 4-array or, for rational values, a bare rational string.
inline Cyc8 cyc8_from_json(const json& j) {
  if (j.is_string()) return Cyc8(rational_from_json(j));
  if (!j.is_array() || j.size() != 4) throw ParseError("Q(zeta_8) element must be a 4-element array: " + j.dump());
  return Cyc8(rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2]), rational_from_json(j[3]));
}

/// Entry as JSON: a string for rational fields, a 4-array otherwise.
inline json scalar_to_json(const Cyc8& u) { return u.is_rational() ? json(u.as_rational().str()) : cyc8_to_json(u); }

inline bool all_rational(const ExactMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_rational()) return false;
  return true;
}

inline json matrix_to_json(const ExactMatrix& m) {
  const bool rational = all_rational(m);
  json j;
  j["kind"] = "matrix";
  j["field"] = rational ? "rational" : "cyc8";
  if (!m.dims().empty()) j["dims"] = m.dims();
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational ? json(m(i, k).as_rational().str()) : cyc8_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

/// One row per line; stable layout so emitted files diff cleanly.
inline std::string matrix_to_text(const ExactMatrix& m) {
  json j = matrix_to_json(m);
  std::ostringstream os;
  os << "{\n  \"kind\": \"matrix\",\n  \"field\": " << j["field"].dump() << ",\n";
  if (j.contains("dims")) {
    os << "  \"dims\": [";
    for (std::size_t k = 0; k < m.dims().size(); ++k) os << (k ? ", " : "") << m.dims()[k];
    os << "],\n";
  }
  os << "  \"rows\": [\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "    [";
    for (std::size_t k = 0; k < m.cols(); ++k) os << (k ? ", " : "") << j["rows"][i][k].dump(-1, ' ', false);
    os << "]" << (i + 1 < m.rows() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  std::string s = os.str();
  // nlohmann puts no spaces inside arrays; add them after commas in cyc8 entries.
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    out += s[k];
    if (s[k] == ',' && k + 1 < s.size() && s[k + 1] == '"') out += ' ';
  }
  return out;
}

inline ExactMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix JSON must be an object");
  if (j.value("kind", std::string()) != "matrix") throw ParseError("expected \"kind\": \"matrix\"");
  std::string field = j.value("field", std::string("cyc8"));
  if (field != "rational" && field != "cyc8") throw ParseError("unknown field '" + field + "'");
  if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].empty()) throw ParseError("matrix needs nonempty \"rows\"");
  const auto& rows = j["rows"];
  const std::size_t nr = rows.size();
  if (!rows[0].is_array() || rows[0].empty()) throw ParseError("matrix rows must be nonempty arrays");
  const std::size_t nc = rows[0].size();
  ExactMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (!rows[i].is_array() || rows[i].size() != nc) throw ShapeError("ragged matrix rows");
    for (std::size_t k = 0; k < nc; ++k)
      m(i, k) = field == "rational" ? Cyc8(rational_from_json(rows[i][k])) : cyc8_from_json(rows[i][k]);
  }
  if (j.contains("dims")) {
    std::vector<std::size_t> dims;
    for (const auto& d : j["dims"]) {
      if (!d.is_number_unsigned()) throw ParseError("dims must be positive integers");
      dims.push_back(d.get<std::size_t>());
    }
    m.set_dims(std::move(dims));
  }
  return m;
}

inline json poly_to_json(const UniPoly& p) {
  json c = json::array();
  for (const auto& v : p.coeffs()) c.push_back(v.str());
  return json{{"coeffs", c}};
}

inline std::string poly_to_text(const UniPoly& p) {
  std::ostringstream os;
  os << "{\"coeffs\": [";
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) os << (k ? ", " : "") << '"' << p.coeffs()[k].str() << '"';
  os << "]}\n";
  return os.str();
}

inline UniPoly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw ParseError("polynomial JSON must be {\"coeffs\": [...]}");
  std::vector<Rational> c;
  for (const auto& v : j["coeffs"]) c.push_back(rational_from_json(v));
  return UniPoly(std::move(c));
}

inline json report_to_json(const CertificateReport& r) {
  json out = json::array();
  for (const auto& c : r.checks()) {
    json item{{"check", c.name}, {"verdict", to_string(c.verdict)}, {"evidence", c.evidence}};
    if (!c.exact.empty()) {
      json ex = json::object();
      for (const auto& [k, v] : c.exact) ex[k] = v;
      item["exact"] = std::move(ex);
    }
    out.push_back(std::move(item));
  }
  return out;
}

inline json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": invalid JSON: " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline json read_json_file(const std::string& path) { return parse_text(read_file(path), path); }

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
}

}  // namespace qgev::io
