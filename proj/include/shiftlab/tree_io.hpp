#pragma once

#include "shiftlab/matrix_lab.hpp"
#include "shiftlab/tree.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace shiftlab {

using Json = nlohmann::json;

/// Malformed input. location() is a JSON pointer into the document, or
/// "line:col" for syntax errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string location, const std::string& detail);
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

TreeSpec tree_spec_from_json(const Json& j);
Json tree_spec_to_json(const TreeSpec& spec);

/// Parses JSON text, wrapping syntax errors in ParseError.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

/// {"n": int, "rows": [[floats]]}
DenseMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);

}  // namespace shiftlab
