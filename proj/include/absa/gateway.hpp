#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "absa/core.hpp"

namespace absa {

struct EndpointConfig {
  std::string base_url;     // e.g. http://localhost:8000/v1
  std::string model;
  std::string api_key_env;  // name of the env var holding the key; empty = no auth
  double temperature = 0.0;
  int max_output_tokens = 1024;
  int timeout_s = 60;
  int max_retries = 3;      // extra attempts after the first, on transport/5xx/429
  int max_concurrency = 4;
  bool structured_output = false;
  int backoff_base_ms = 250;  // exponential backoff seed; jittered
};

struct RawPrediction {
  std::string sample_id;
  std::string raw_output;  // byte-exact model output; empty when error is set
  std::int64_t latency_ms = 0;
  int attempt_count = 0;
  std::optional<std::string> error;  // transport-level failure description
};

struct PromptRequest {
  std::string sample_id;
  std::string system;
  std::string user;
};

/// JSON Schema for the structured-generation request: wrapper object holding
/// an array of quads, with the aspect-category and sentiment enums taken from
/// the taxonomy. opinion_expression is omitted in triple mode.
nlohmann::ordered_json emit_json_schema(const DomainTaxonomy& taxonomy);

/// Called under a lock as each result лands, in completion order; used for
/// incremental persistence.
using PredictionSink = std::function<void(const RawPrediction&)>;

/// Drives an OpenAI-compatible chat-completions endpoint over the batch with
/// bounded concurrency. Results come back in input order; every prompt yields
/// exactly one RawPrediction (failures are data, not exceptions). Throws
/// ConfigError before any request when the URL/model/key cannot be resolved.
std::vector<RawPrediction> run_batch(const std::vector<PromptRequest>& prompts,
                                     const EndpointConfig& config,
                                     const std::optional<nlohmann::ordered_json>& schema,
                                     const PredictionSink& sink = {});

nlohmann::ordered_json prediction_to_json(const RawPrediction& prediction);
RawPrediction prediction_from_json(const nlohmann::ordered_json& obj);

/// Line-delimited RawPrediction records.
std::vector<RawPrediction> load_predictions(const std::filesystem::path& path);

}  // namespace absa
