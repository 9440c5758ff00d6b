#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absa/validate.hpp"

namespace absa {

/// One word-aligned candidate substring of a sample text. Offsets are byte
/// positions; the substring keeps interior whitespace and punctuation verbatim.
struct SpanCandidate {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  std::string text;
};

struct AlignConfig {
  std::size_t max_span_words = 30;
  double min_similarity = 0.4;  // floor below which no replacement is made
};

struct AlignOutcome {
  std::optional<SpanCandidate> replacement;
  double similarity = 0.0;  // best similarity seen, even when below the floor
  std::size_t candidates_scored = 0;
};

/// All contiguous word ranges of at most max_span_words words, ordered by
/// (start ascending, end ascending). Words are maximal runs of non-whitespace.
std::vector<SpanCandidate> enumerate_spans(std::string_view text, const AlignConfig& config);

/// Edit distance over Unicode code points.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// 1 - levenshtein(a, b) / max(len(a), len(b)); two empty strings score 1.
double similarity(std::string_view a, std::string_view b);

/// Finds the text span most similar to the prediction. A prediction already
/// occurring verbatim is returned as its first occurrence with similarity 1
/// and no candidates scored. Ties break to the shorter span in bytes, then the
/// smaller start offset. Throws EmptyPredictionError.
AlignOutcome align(std::string_view prediction, std::string_view text,
                   const AlignConfig& config);

/// Replaces non-extractive targets and opinion expressions with their best
/// aligned spans. Failure records are kept (failure accounting is pre-repair);
/// each repair or give-up appends an audit note to the record detail.
ValidationResult repair_result(ValidationResult result, std::string_view sample_text,
                               const AlignConfig& config);

}  // namespace absa
