#include "shiftlab/tree_io.hpp"

#include "shiftlab/rational.hpp"

#include <fstream>
#include <sstream>

namespace shiftlab {

ParseError::ParseError(std::string location, const std::string& detail)
    : std::runtime_error("parse error at " + location + ": " + detail), location_(std::move(location)) {}

namespace {

const Json& member(const Json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) throw ParseError(at, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(at, "missing key '" + key + "'");
  return *it;
}

std::string string_at(const Json& v, const std::string& at) {
  if (!v.is_string()) throw ParseError(at, "expected a string");
  return v.get<std::string>();
}

Rational rational_at(const Json& v, const std::string& at) {
  // Integers are accepted as a convenience; fractions must be strings.
  if (v.is_number_integer()) return Rational(v.get<long>());
  try {
    return parse_rational(string_at(v, at));
  } catch (const std::invalid_argument& e) {
    throw ParseError(at, e.what());
  }
}

TailRule tail_from_json(const Json& t, const std::string& at) {
  const auto kind = string_at(member(t, "kind", at), at + "/kind");
  auto field = [&](const char* key) { return rational_at(member(t, key, at), at + "/" + key); };
  if (kind == "constant") return ConstantTail{field("c")};
  if (kind == "affine_reciprocal") return AffineReciprocalTail{field("limit"), field("c"), field("shift")};
  if (kind == "geometric") return GeometricTail{field("limit"), field("c"), field("ratio")};
  throw ParseError(at + "/kind", "unknown tail kind '" + kind + "'");
}

Json tail_to_json(const TailRule& tail) {
  return std::visit(
      [](const auto& t) -> Json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ConstantTail>) {
          return {{"kind", "constant"}, {"c", to_string(t.c)}};
        } else if constexpr (std::is_same_v<T, AffineReciprocalTail>) {
          return {{"kind", "affine_reciprocal"},
                  {"limit", to_string(t.limit)},
                  {"c", to_string(t.c)},
                  {"shift", to_string(t.shift)}};
        } else {
          return {{"kind", "geometric"},
                  {"limit", to_string(t.limit)},
                  {"c", to_string(t.c)},
                  {"ratio", to_string(t.ratio)}};
        }
      },
      tail.rule());
}

}  // namespace

TreeSpec tree_spec_from_json(const Json& j) {
  TreeSpec spec;
  spec.root = string_at(member(j, "root", ""), "/root");
  if (const auto it = j.find("core_edges"); it != j.end()) {
    if (!it->is_array()) throw ParseError("/core_edges", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto at = "/core_edges/" + std::to_string(i);
      const auto& e = (*it)[i];
      spec.core_edges.push_back({string_at(member(e, "parent", at), at + "/parent"),
                                 string_at(member(e, "child", at), at + "/child"),
                                 rational_at(member(e, "weight", at), at + "/weight")});
    }
  }
  if (const auto it = j.find("rays"); it != j.end()) {
    if (!it->is_array()) throw ParseError("/rays", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto at = "/rays/" + std::to_string(i);
      const auto& r = (*it)[i];
      std::vector<Rational> prefix;
      if (const auto p = r.find("prefix"); r.is_object() && p != r.end()) {
        if (!p->is_array()) throw ParseError(at + "/prefix", "expected an array");
        for (std::size_t k = 0; k < p->size(); ++k) {
          prefix.push_back(rational_at((*p)[k], at + "/prefix/" + std::to_string(k)));
        }
      }
      spec.rays.push_back({string_at(member(r, "id", at), at + "/id"),
                           string_at(member(r, "attach_at", at), at + "/attach_at"), std::move(prefix),
                           tail_from_json(member(r, "tail", at), at + "/tail")});
    }
  }
  return spec;
}

Json tree_spec_to_json(const TreeSpec& spec) {
  Json edges = Json::array();
  for (const auto& e : spec.core_edges) {
    edges.push_back({{"parent", e.parent}, {"child", e.child}, {"weight", to_string(e.weight)}});
  }
  Json rays = Json::array();
  for (const auto& r : spec.rays) {
    Json prefix = Json::array();
    for (const auto& w : r.prefix) prefix.push_back(to_string(w));
    rays.push_back({{"id", r.id}, {"attach_at", r.attach_at}, {"prefix", prefix}, {"tail", tail_to_json(r.tail)}});
  }
  return {{"root", spec.root}, {"core_edges", edges}, {"rays", rays}};
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports a byte offset; convert it to line:col.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

DenseMatrix matrix_from_json(const Json& j) {
  const auto& nj = member(j, "n", "");
  if (!nj.is_number_integer() || nj.get<long>() < 1) throw ParseError("/n", "expected a positive integer");
  const auto n = nj.get<long>();
  const auto& rows = member(j, "rows", "");
  if (!rows.is_array() || static_cast<long>(rows.size()) != n) throw ParseError("/rows", "expected n rows");
  if (n > DenseMatrix::kMaxDim) throw MatrixError(MatrixErrorKind::TooLarge, "dimension exceeds 512");
  Matrix m(n, n);
  for (long i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    const auto at = "/rows/" + std::to_string(i);
    if (!row.is_array() || static_cast<long>(row.size()) != n) throw ParseError(at, "expected n entries");
    for (long k = 0; k < n; ++k) {
      const auto& x = row[static_cast<std::size_t>(k)];
      if (!x.is_number()) throw ParseError(at + "/" + std::to_string(k), "expected a number");
      m(i, k) = x.get<double>();
    }
  }
  return DenseMatrix(std::move(m));
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return {{"n", m.rows()}, {"rows", rows}};
}

}  // namespace shiftlab
