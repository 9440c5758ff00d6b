#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "absa/core.hpp"

namespace absa {

/// strict: equality on all four fields. relaxed: equality on target, sentiment,
/// and aspect category, with partial overlap allowed for the opinion expression.
enum class MatchMode { strict, relaxed };

std::string_view to_string(MatchMode m);

struct ScoreOptions {
  /// Trim leading/trailing whitespace before comparisons (tolerates
  /// serialization artifacts; set false for byte-exact comparison).
  bool trim_whitespace = true;
};

/// All four fields equal after trimming: target/expression/category compare
/// case-sensitively, sentiment by enum (case-insensitive label parse).
bool quad_equal_strict(const Quad& pred, const Quad& gold, const ScoreOptions& opts = {});

/// First-occurrence character intervals in the text intersect; when either
/// expression cannot be located, falls back to containment or a shared
/// lowercased token.
bool expressions_overlap(std::string_view pred_expr, std::string_view gold_expr,
                         std::string_view text, const ScoreOptions& opts = {});

bool quads_match(const Quad& pred, const Quad& gold, std::string_view text, MatchMode mode,
                 const ScoreOptions& opts = {});

/// Size of a maximum one-to-one matching between predictions and references
/// (multiset semantics: duplicates each need their own partner).
int match_sample(const std::vector<Quad>& preds, const std::vector<Quad>& golds,
                 std::string_view text, MatchMode mode, const ScoreOptions& opts = {});

struct GroupScore {
  std::int64_t tp = 0;
  std::int64_t pred_total = 0;
  std::int64_t gold_total = 0;
  double f1 = 0.0;
};

/// Micro-averaged scores with per-language and per-domain breakdowns.
struct EvalReport {
  MatchMode mode = MatchMode::strict;
  std::int64_t tp = 0;
  std::int64_t pred_total = 0;
  std::int64_t gold_total = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::map<std::string, GroupScore> by_language;
  std::map<std::string, GroupScore> by_domain;
};

struct SamplePredictions {
  Sample sample;
  std::vector<Quad> preds;  // post-repair when span repair is enabled
};

EvalReport evaluate(const std::vector<SamplePredictions>& corpus, MatchMode mode,
                    const ScoreOptions& opts = {});

nlohmann::ordered_json report_to_json(const EvalReport& report);

}  // namespace absa
