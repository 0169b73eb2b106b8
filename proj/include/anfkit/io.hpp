#pragma once

// Text and JSON formats shared by the CLI and the tests.
//
// Function container:
//   {"n": int, "anf": string, "bijection": {"matrix": [rows], "offset": string} | null,
//    "comment": string?}
// where the bijection A means g = f o A, i.e. the container describes f = g o A^{-1}.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "anfkit/anf.hpp"
#include "anfkit/experiments.hpp"
#include "anfkit/pipeline.hpp"

namespace anfkit {

using Json = nlohmann::ordered_json;

enum class InputFormat { Auto, Json, Anf };

// Parses JSON text; syntax errors become Error(SyntaxError) with a byte offset.
Json parse_json(std::string_view text);

Json container_to_json(const FunctionInput& input);
FunctionInput container_from_json(const Json& j);
// Auto picks JSON when the first non-blank character is '{'. Bare ANF text
// takes n from `num_vars`, else from the largest index mentioned.
FunctionInput read_function(std::string_view text, InputFormat format = InputFormat::Auto,
                            std::optional<std::size_t> num_vars = std::nullopt);

Json matrix_to_json(const BitMatrix& m);
BitMatrix matrix_from_json(const Json& j, std::size_t cols);

Json trace_to_json(const RestrictionTrace& trace);
RestrictionTrace trace_from_json(const Json& j);
Json dickson_to_json(const DicksonForm& d);
DicksonForm dickson_from_json(const Json& j);
Json flat_to_json(const Flat& flat);
// Reads "offset" and "basis" (a FlatReport works as input).
Flat flat_from_json(const Json& j);
Json verdict_to_json(const Verdict& v);
Json flat_report_to_json(const FlatReport& report);

Json experiment_report_to_json(const ExperimentReport& report, bool include_timing = false);
std::string experiment_trials_csv(const ExperimentReport& report);

struct Analysis {
  std::size_t n;
  std::size_t sparsity;
  std::size_t degree;
  std::size_t crucial;
  std::vector<std::size_t> occurrences;
  std::size_t max_occurrence;
  // ceil(3 * crucial / n): some variable lies in at least this many crucial terms.
  std::size_t greedy_lower_bound;
};

Analysis analyze(const Anf& f);
Json analysis_to_json(const Analysis& a);

}  // namespace anfkit
