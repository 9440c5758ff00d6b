#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "absa/core.hpp"
#include "absa/json_mend.hpp"

namespace absa {

struct ValidationConfig {
  std::set<Sentiment> allowed_sentiments;
  std::set<std::string> allowed_categories;
  TaskArity arity = TaskArity::quad;
  bool sentiment_case_insensitive = true;  // models often emit "Positive"
  bool category_case_insensitive = false;  // taxonomy labels are prompt-supplied verbatim
};

/// The four labels in quad mode; positive/negative/neutral in triple mode.
std::set<Sentiment> default_sentiments(TaskArity arity);

/// Allowed categories and sentiments taken from a domain taxonomy.
ValidationConfig make_validation_config(const DomainTaxonomy& taxonomy);

/// A quad that survived the key checks, with its index in the predicted array.
struct ValidatedQuad {
  Quad quad;
  std::size_t source_index = 0;
};

struct ValidationResult {
  std::string sample_id;
  /// Surviving quads, possibly carrying still-invalid labels.
  std::vector<ValidatedQuad> quads;
  std::vector<FailureRecord> failures;
  /// Number of quad objects recovered from the parsed array (the "Total preds"
  /// unit). Zero for invalid-JSON and response-level key failures.
  std::int64_t pred_count = 0;
};

/// Runs the failure-mode detection ladder over a mended output:
///   1. no value -> one invalid_json record, stop;
///   2. bad root / wrapper key / non-array -> one response-level
///      incorrect_keys record, stop;
///   3. per element, non-object or missing required key -> incorrect_keys at
///      that index, element dropped (extra keys are ignored);
///   4-7. surviving quads are checked for sentiment, category, and verbatim
///      target/expression extractiveness; failing quads are retained.
/// raw is used only for failure-record details.
ValidationResult validate(const MendOutcome& outcome, std::string_view sample_id,
                          std::string_view sample_text, const ValidationConfig& config,
                          std::string_view raw = {});

struct FailureTally {
  std::array<std::int64_t, kFailureModeCount> counts{};
  std::int64_t total_preds = 0;

  std::int64_t& operator[](FailureMode m) { return counts[static_cast<std::size_t>(m)]; }
  std::int64_t operator[](FailureMode m) const { return counts[static_cast<std::size_t>(m)]; }
};

FailureTally tally_failures(const std::vector<ValidationResult>& results);

nlohmann::ordered_json failure_record_to_json(const FailureRecord& record);
nlohmann::ordered_json tally_to_json(const FailureTally& tally);

}  // namespace absa
