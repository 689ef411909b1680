#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mezzo/catalog.hpp"
#include "mezzo/errors.hpp"
#include "mezzo/hodge.hpp"
#include "mezzo/mezzoperversity.hpp"
#include "mezzo/qmatrix.hpp"
#include "mezzo/rational.hpp"
#include "mezzo/space.hpp"

/// JSON input files. Rational entries are strings ("2/3", "-1", "0.25") or
/// JSON integers; non-integer JSON numbers are rejected.
namespace mezzo::io {

using json = nlohmann::ordered_json;

inline Error input_error(const std::string& field, const std::string& what) {
  return Error(ErrorKind::input, field + ": " + what);
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // locate the byte offset as line:column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::input, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json load_json(const std::string& path) { return parse_json_text(read_file(path), path); }

inline Rational rational_from(const json& j, const std::string& field) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw input_error(field, "not a rational literal: \"" + j.get<std::string>() + "\"");
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw input_error(field, "expected a rational as a string or integer");
}

inline std::vector<Rational> vector_from(const json& j, const std::string& field) {
  if (!j.is_array()) throw input_error(field, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

/// Array of equal-length rows -> matrix with those rows.
inline QMatrix rows_from(const json& j, const std::string& field) {
  if (!j.is_array()) throw input_error(field, "expected an array of rows");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_from(j[i], field + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size()) throw input_error(field + "[" + std::to_string(i) + "]", "row length differs");
  }
  if (rows.empty()) return QMatrix(0, 0);
  return QMatrix::from_rows(rows);
}

inline SimplicialComplex complex_from(const json& j, const std::string& field) {
  if (!j.is_object()) throw input_error(field, "expected an object");
  if (j.contains("catalog")) {
    const std::string name = j["catalog"].is_string() ? j["catalog"].get<std::string>() : "";
    if (name == "circle") return catalog::circle();
    if (name == "tetrahedron_boundary" || name == "s2") return catalog::tetrahedron_boundary();
    if (name == "octahedron") return catalog::octahedron();
    if (name == "torus7" || name == "t2") return catalog::torus7();
    if (name == "rp2_6") return catalog::rp2_6();
    if (name == "cp2_9" || name == "cp2") return catalog::cp2_9();
    if (name == "s2_x_s2") return catalog::s2_x_s2();
    throw input_error(field + ".catalog", "unknown catalog complex \"" + name + "\"");
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw input_error(field + ".vertices", "missing vertex list");
  if (!j.contains("simplices") || !j["simplices"].is_array()) throw input_error(field + ".simplices", "missing simplex list");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const json& v = j["vertices"][i];
    if (v.is_string())
      vertices.push_back(v.get<std::string>());
    else if (v.is_number_integer())
      vertices.push_back(std::to_string(v.get<long long>()));
    else
      throw input_error(field + ".vertices[" + std::to_string(i) + "]", "vertex names are strings");
  }
  std::vector<std::vector<std::string>> simplices;
  for (std::size_t i = 0; i < j["simplices"].size(); ++i) {
    const json& s = j["simplices"][i];
    const std::string f = field + ".simplices[" + std::to_string(i) + "]";
    if (!s.is_array() || s.empty()) throw input_error(f, "expected a nonempty list of vertex names");
    std::vector<std::string> names;
    for (const auto& v : s) {
      if (v.is_string())
        names.push_back(v.get<std::string>());
      else if (v.is_number_integer())
        names.push_back(std::to_string(v.get<long long>()));
      else
        throw input_error(f, "vertex names are strings");
    }
    simplices.push_back(std::move(names));
  }
  try {
    return SimplicialComplex(vertices, simplices);
  } catch (const Error& e) {
    throw input_error(field, e.what());
  }
}

inline MonodromyRep monodromy_from(const json& j, const std::string& field) {
  if (!j.is_array()) throw input_error(field, "expected a matrix or a list of matrices");
  MonodromyRep rep;
  const bool list_of_matrices = !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_array();
  if (list_of_matrices) {
    for (std::size_t g = 0; g < j.size(); ++g) rep.generators.push_back(rows_from(j[g], field + "[" + std::to_string(g) + "]"));
  } else {
    rep.generators.push_back(rows_from(j, field));
  }
  return rep;
}

inline SpacePtr space_from(const json& j, const std::string& field = "$") {
  if (!j.is_object() || j.size() != 1)
    throw input_error(field, "expected exactly one of closed, cone, suspension, flat_cone_bundle");
  const std::string tag = j.begin().key();
  const json& body = j.begin().value();
  const std::string here = field + "." + tag;
  if (!body.is_object()) throw input_error(here, "expected an object");
  if (tag == "closed") {
    int orientation = 1;
    if (body.contains("orientation")) {
      if (!body["orientation"].is_number_integer()) throw input_error(here + ".orientation", "expected 1 or -1");
      orientation = body["orientation"].get<int>();
      if (orientation != 1 && orientation != -1) throw input_error(here + ".orientation", "expected 1 or -1");
    }
    return StratifiedSpace::closed(complex_from(body, here), orientation);
  }
  if (tag != "cone" && tag != "suspension" && tag != "flat_cone_bundle") throw input_error(field, "unknown space tag \"" + tag + "\"");
  if (!body.contains("link")) throw input_error(here + ".link", "missing link");
  SpacePtr link = space_from(body["link"], here + ".link");
  try {
    if (tag == "cone") return StratifiedSpace::cone(link);
    if (tag == "suspension") return StratifiedSpace::suspension(link);
    if (!body.contains("monodromy")) throw input_error(here + ".monodromy", "missing monodromy");
    return StratifiedSpace::flat_cone_bundle(link, monodromy_from(body["monodromy"], here + ".monodromy"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::input) throw;
    throw input_error(here, e.what());
  }
}

/// Stratum id -> list of basis row vectors of W ([] is the zero subspace).
inline Mezzoperversity mezzo_from(const json& j, const std::string& field = "$") {
  if (!j.is_object()) throw input_error(field, "expected a map from stratum id to a list of row vectors");
  Mezzoperversity m;
  for (auto it = j.begin(); it != j.end(); ++it) {
    QMatrix rows = rows_from(it.value(), field + "." + it.key());
    m.assignments.emplace(it.key(), rows.rows() == 0 ? QMatrix(0, 0) : rows.transpose());
  }
  return m;
}

/// "identity" or {"weights": [[w_00, w_01, ...], [w_10, ...], ...], "scale": "c"}.
/// Weights are positive per-simplex diagonal entries for each degree.
inline hodge::InnerProductFamily metric_from(const json& j, const std::vector<std::size_t>& dims,
                                             const std::string& field = "$") {
  if (j.is_string()) {
    if (j.get<std::string>() != "identity") throw input_error(field, "expected \"identity\" or an object with weights");
    return hodge::InnerProductFamily::identity(dims);
  }
  if (!j.is_object() || !j.contains("weights")) throw input_error(field, "expected \"identity\" or an object with weights");
  const json& w = j["weights"];
  if (!w.is_array()) throw input_error(field + ".weights", "expected one list per degree");
  std::vector<std::vector<double>> weights;
  for (std::size_t k = 0; k < w.size(); ++k) {
    auto row = vector_from(w[k], field + ".weights[" + std::to_string(k) + "]");
    std::vector<double> d;
    for (const auto& x : row) d.push_back(to_double(x));
    weights.push_back(std::move(d));
  }
  if (weights.size() != dims.size())
    throw Error(ErrorKind::metric, field + ".weights: " + std::to_string(weights.size()) + " degrees given, complex has " +
                                       std::to_string(dims.size()));
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (weights[k].size() != dims[k])
      throw Error(ErrorKind::metric, field + ".weights[" + std::to_string(k) + "]: " + std::to_string(weights[k].size()) +
                                         " weights, degree has " + std::to_string(dims[k]) + " cochains");
  hodge::InnerProductFamily ip = hodge::InnerProductFamily::diagonal(weights);
  if (j.contains("scale")) ip = ip.scaled(to_double(rational_from(j["scale"], field + ".scale")));
  return ip;
}

inline json rational_json(const Rational& q) { return to_string(q); }

/// Columns of w as row vectors of rational strings.
inline json subspace_json(const QMatrix& w) {
  json rows = json::array();
  for (std::size_t c = 0; c < w.cols(); ++c) {
    json row = json::array();
    for (std::size_t r = 0; r < w.rows(); ++r) row.push_back(rational_json(w(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json matrix_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mezzo::io
