#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "absa/core.hpp"

namespace absa {

enum class SplitName { train, validation, test };

std::string_view to_string(SplitName s);
std::optional<SplitName> parse_split_name(std::string_view s);

struct DatasetSplit {
  SplitName name = SplitName::test;
  std::vector<Sample> samples;  // ids unique within the split
};

struct LoadOptions {
  TaskArity arity = TaskArity::quad;
  /// Case-folds gold sentiment labels and maps the POS/NEG/NEU abbreviations
  /// before the enum check. Off by default.
  bool normalize_sentiments = false;
  SplitName split = SplitName::test;
};

/// Reads a line-delimited JSON dataset, one sample per line with fields
/// {id, text, language, domain, quads:[{target, aspect_category, sentiment,
/// opinion_expression?}]}. Gold quads come back in canonical order. Throws
/// MalformedLineError, DuplicateIdError, or UnknownSentimentError.
DatasetSplit load_dataset(const std::filesystem::path& path, const LoadOptions& options = {});

/// Inverse of load_dataset; quads are written in their stored (canonical) order.
void write_dataset(const DatasetSplit& split, const std::filesystem::path& path);

/// Quads-per-sample histogram buckets. Index 5 is the open "5+" bucket.
inline constexpr std::array<std::string_view, 6> kHistogramBuckets = {"0", "1", "2",
                                                                      "3", "4", "5+"};

struct DatasetStats {
  std::int64_t total_samples = 0;
  std::int64_t total_quads = 0;
  std::map<std::string, std::int64_t> per_language_counts;
  std::int64_t implicit_targets = 0;  // gold quads with the NULL target
  std::int64_t explicit_targets = 0;
  double avg_quads_per_sample = 0.0;  // 0 when the split is empty
  std::array<std::int64_t, 6> quad_histogram{};
};

DatasetStats compute_stats(const DatasetSplit& split);

/// Field-wise sum with the average recomputed from totals.
DatasetStats merge_stats(const DatasetStats& a, const DatasetStats& b);

nlohmann::ordered_json stats_to_json(const DatasetStats& stats);

struct FilterResult {
  DatasetSplit split;
  std::vector<std::string> dropped_ids;
};

/// Drops samples having any gold quad whose explicit target is not a verbatim
/// substring of the text.
FilterResult filter_unlocatable(const DatasetSplit& split);

nlohmann::ordered_json quad_to_json(const Quad& quad, TaskArity arity);
Quad quad_from_json(const nlohmann::ordered_json& obj, const std::filesystem::path& path,
                    std::size_t line_no, TaskArity arity, bool normalize_sentiments);

}  // namespace absa
