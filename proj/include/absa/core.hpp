#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace absa {

/// Wrapper key of every structured answer object.
inline constexpr std::string_view kAnswerKey = "aspect_based_sentiment_analysis";

/// Literal that encodes an implicit opinion target. Matched case-sensitively;
/// "null" or "Null" are ordinary (and thus non-extractive) target strings.
inline constexpr std::string_view kNullTarget = "NULL";

/// Sentiment taxonomy shared by every domain.
enum class Sentiment { positive, negative, neutral, mixed };

std::string_view to_string(Sentiment s);

/// Exact lowercase labels only.
std::optional<Sentiment> parse_sentiment(std::string_view s);

/// ASCII case-insensitive.
std::optional<Sentiment> parse_sentiment_ci(std::string_view s);

/// Case-folds, trims, and accepts the POS/NEG/NEU abbreviations found in
/// public corpora. Used by the dataset loader's normalization mode.
std::optional<Sentiment> normalize_sentiment(std::string_view s);

/// Quad extraction predicts all four fields; triple extraction drops the
/// opinion expression.
enum class TaskArity { quad, triple };

std::string_view to_string(TaskArity a);
std::optional<TaskArity> parse_task_arity(std::string_view s);

/// One opinion quadruple. The sentiment is kept as a raw string so that
/// predictions carrying labels outside the taxonomy survive validation
/// unchanged; gold data is constrained to the four Sentiment labels at load.
struct Quad {
  std::string target;  // kNullTarget encodes an implicit target
  std::string aspect_category;
  std::string sentiment;
  std::string opinion_expression;  // may be empty in triple mode only

  bool implicit_target() const { return target == kNullTarget; }
  friend bool operator==(const Quad&, const Quad&) = default;
};

/// One input text with its gold annotation.
struct Sample {
  std::string id;
  std::string text;      // raw, spelling mistakes preserved
  std::string language;  // lowercase two-letter code
  std::string domain;
  std::vector<Quad> gold;  // canonical order (see canonical_quad_order)
};

struct CategoryDef {
  std::string label;
  std::string description;
};

struct OneShotExample {
  std::string example_text;
  std::vector<Quad> example_quads;
};

/// Domain-specific prompt variables: category labels with descriptions, the
/// system prompt, and a representative one-shot example.
struct DomainTaxonomy {
  std::string domain_id;
  std::string system_prompt;
  std::vector<CategoryDef> categories;  // labels unique within the taxonomy
  OneShotExample one_shot;
  TaskArity task_arity = TaskArity::quad;
};

/// Structural error classes of generative extractive ABSA, in fixed order.
enum class FailureMode {
  invalid_json,
  incorrect_keys,
  invalid_sentiment,
  invalid_aspect_category,
  non_extractive_target,
  non_extractive_opinion_expression,
};

inline constexpr std::size_t kFailureModeCount = 6;

std::string_view to_string(FailureMode m);
std::string_view failure_mode_abbrev(FailureMode m);  // JSON, Keys, Sent, ...
std::optional<FailureMode> parse_failure_mode(std::string_view s);

/// One detected failure instance.
struct FailureRecord {
  FailureMode mode;
  std::string sample_id;
  /// nullopt = response-level locus; a value = index into the predicted array.
  std::optional<std::size_t> quad_index;
  std::string detail;  // offending raw fragment plus any repair audit notes
};

/// Sorts quads by the first-occurrence start offset of their opinion
/// expression in the text (ties: first target offset, then input order).
/// Quads whose expression cannot be located keep their relative input order
/// after all locatable ones. Total and idempotent.
std::vector<Quad> canonical_quad_order(std::vector<Quad> quads, std::string_view text);

/// Lowercases ASCII letters; leaves other bytes untouched.
std::string ascii_lower(std::string_view s);

/// Trims ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

}  // namespace absa
