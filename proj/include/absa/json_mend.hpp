#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace absa {

/// Outcome of best-effort repair parsing of one raw model output.
struct MendOutcome {
  /// Absent when no JSON value could be recovered (the invalid-JSON case).
  std::optional<nlohmann::ordered_json> value;
  /// True iff the strict parse failed but a repair succeeded.
  bool repaired = false;
  /// Tags of the repair passes that fired, in fixed pipeline order.
  std::vector<std::string> applied_fixes;

  bool invalid() const { return !value.has_value(); }
};

/// Converts a raw model output string into a JSON value, repairing the common
/// LLM formatting mistakes: markdown fences and surrounding prose, smart and
/// single quotes, bare keys, trailing or missing commas, Python literals, raw
/// control characters, unterminated strings, and truncated documents.
/// Strict-valid input passes through untouched with repaired == false.
/// Never throws; unrecoverable input yields a value-absent outcome.
MendOutcome mend(std::string_view raw);

}  // namespace absa
