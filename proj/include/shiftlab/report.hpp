#pragma once

#include "shiftlab/classes.hpp"
#include "shiftlab/matrix_lab.hpp"
#include "shiftlab/norm.hpp"
#include "shiftlab/spectra.hpp"
#include "shiftlab/tree_io.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftlab {

inline constexpr const char* kToolVersion = "1.0.0";

struct AnalysisRequest {
  std::optional<std::string> fixture;
  std::optional<std::string> input_path;
  /// Empty selects the defaults for the input kind.
  std::vector<std::string> analyses;
  std::int64_t horizon = kDefaultHorizon;
  std::uint64_t seed = 1;
  std::int64_t trials = 2000;
};

struct Flag {
  std::string analysis;
  std::string expectation;
  std::string observed;
  bool falsified = false;
};

struct AnalysisReport {
  Json json;
  std::vector<Flag> flags;
  /// 0 when every registered expectation holds, 2 when one is falsified.
  int exit_status = 0;
  std::string human;
};

/// A module raised an error while running an analysis.
class AnalysisFailure : public std::runtime_error {
 public:
  AnalysisFailure(const std::string& analysis, const std::string& detail)
      : std::runtime_error("analysis '" + analysis + "' failed: " + detail) {}
};

const std::vector<std::string>& known_analyses();

/// SHIFTLAB_HORIZON when set to a positive integer, else the built-in default.
std::int64_t horizon_from_env();

/// Throws ParseError, UnknownFixture, TreeError, MatrixError or
/// AnalysisFailure; invalid_argument for a malformed request.
AnalysisReport run(const AnalysisRequest& request);

/// Two-space indented JSON with sorted keys and a trailing newline.
std::string render_json(const Json& j);

Json to_json(const FinVector& f);
Json to_json(const SupResult& r);
Json to_json(const ClassReport& r);
Json to_json(const SpectrumReport& r);
Json to_json(const ProbeReport& r);

}  // namespace shiftlab
