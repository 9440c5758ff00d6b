#include "absa/validate.hpp"

#include <algorithm>

namespace absa {
namespace {

std::string excerpt(std::string_view s, std::size_t limit = 200) {
  if (s.size() <= limit) return std::string(s);
  return std::string(s.substr(0, limit)) + "...";
}

bool sentiment_allowed(const std::string& value, const ValidationConfig& config) {
  const auto parsed = config.sentiment_case_insensitive ? parse_sentiment_ci(value)
                                                        : parse_sentiment(value);
  return parsed && config.allowed_sentiments.count(*parsed) != 0;
}

bool category_allowed(const std::string& value, const ValidationConfig& config) {
  if (!config.category_case_insensitive) return config.allowed_categories.count(value) != 0;
  const std::string folded = ascii_lower(value);
  return std::any_of(config.allowed_categories.begin(), config.allowed_categories.end(),
                     [&](const std::string& c) { return ascii_lower(c) == folded; });
}

}  // namespace

std::set<Sentiment> default_sentiments(TaskArity arity) {
  std::set<Sentiment> out = {Sentiment::positive, Sentiment::negative, Sentiment::neutral};
  if (arity == TaskArity::quad) out.insert(Sentiment::mixed);
  return out;
}

ValidationConfig make_validation_config(const DomainTaxonomy& taxonomy) {
  ValidationConfig config;
  config.arity = taxonomy.task_arity;
  config.allowed_sentiments = default_sentiments(taxonomy.task_arity);
  for (const CategoryDef& c : taxonomy.categories) config.allowed_categories.insert(c.label);
  return config;
}

ValidationResult validate(const MendOutcome& outcome, std::string_view sample_id,
                          std::string_view sample_text, const ValidationConfig& config,
                          std::string_view raw) {
  ValidationResult result;
  result.sample_id = std::string(sample_id);

  const auto record = [&](FailureMode mode, std::optional<std::size_t> index,
                          std::string detail) {
    result.failures.push_back(
        {mode, result.sample_id, index, std::move(detail)});
  };

  // (1) unparsable output
  if (!outcome.value) {
    record(FailureMode::invalid_json, std::nullopt, "response: " + excerpt(raw));
    return result;
  }

  // (2) response-level schema
  const nlohmann::ordered_json& root = *outcome.value;
  if (!root.is_object()) {
    record(FailureMode::incorrect_keys, std::nullopt, "response: root is not an object");
    return result;
  }
  const auto wrapper = root.find(std::string(kAnswerKey));
  if (wrapper == root.end()) {
    record(FailureMode::incorrect_keys, std::nullopt,
           "response: missing wrapper key '" + std::string(kAnswerKey) + "'");
    return result;
  }
  if (!wrapper->is_array()) {
    record(FailureMode::incorrect_keys, std::nullopt,
           "response: wrapper value is not an array");
    return result;
  }

  // (3) per-element key checks; failed elements are dropped
  const char* required_quad[] = {"target", "aspect_category", "sentiment",
                                 "opinion_expression"};
  const std::size_t required_count = config.arity == TaskArity::quad ? 4 : 3;
  for (std::size_t i = 0; i < wrapper->size(); ++i) {
    const auto& element = (*wrapper)[i];
    if (!element.is_object()) {
      record(FailureMode::incorrect_keys, i, "quad: element is not an object");
      continue;
    }
    bool ok = true;
    for (std::size_t k = 0; k < required_count; ++k) {
      const auto it = element.find(required_quad[k]);
      if (it == element.end()) {
        record(FailureMode::incorrect_keys, i,
               std::string("quad: missing key '") + required_quad[k] + "'");
        ok = false;
        break;
      }
      if (!it->is_string()) {
        record(FailureMode::incorrect_keys, i,
               std::string("quad: key '") + required_quad[k] + "' is not a string");
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    Quad quad;
    quad.target = element["target"].get<std::string>();
    quad.aspect_category = element["aspect_category"].get<std::string>();
    quad.sentiment = element["sentiment"].get<std::string>();
    if (config.arity == TaskArity::quad) {
      quad.opinion_expression = element["opinion_expression"].get<std::string>();
    }
    result.quads.push_back({std::move(quad), i});
  }
  result.pred_count = static_cast<std::int64_t>(result.quads.size());

  // (4)-(7) label and extractiveness checks; quads are retained either way
  const std::string text(sample_text);
  for (const ValidatedQuad& vq : result.quads) {
    const Quad& q = vq.quad;
    if (!sentiment_allowed(q.sentiment, config)) {
      record(FailureMode::invalid_sentiment, vq.source_index, q.sentiment);
    }
    if (!category_allowed(q.aspect_category, config)) {
      record(FailureMode::invalid_aspect_category, vq.source_index, q.aspect_category);
    }
    if (!q.implicit_target() && text.find(q.target) == std::string::npos) {
      record(FailureMode::non_extractive_target, vq.source_index, q.target);
    }
    if (config.arity == TaskArity::quad &&
        text.find(q.opinion_expression) == std::string::npos) {
      record(FailureMode::non_extractive_opinion_expression, vq.source_index,
             q.opinion_expression);
    }
  }
  return result;
}

FailureTally tally_failures(const std::vector<ValidationResult>& results) {
  FailureTally tally;
  for (const ValidationResult& r : results) {
    tally.total_preds += r.pred_count;
    for (const FailureRecord& f : r.failures) tally[f.mode] += 1;
  }
  return tally;
}

nlohmann::ordered_json failure_record_to_json(const FailureRecord& record) {
  nlohmann::ordered_json obj;
  obj["mode"] = std::string(to_string(record.mode));
  obj["sample_id"] = record.sample_id;
  if (record.quad_index) {
    obj["locus"] = "quad";
    obj["quad_index"] = *record.quad_index;
  } else {
    obj["locus"] = "response";
  }
  obj["detail"] = record.detail;
  return obj;
}

nlohmann::ordered_json tally_to_json(const FailureTally& tally) {
  nlohmann::ordered_json obj;
  for (std::size_t i = 0; i < kFailureModeCount; ++i) {
    obj[std::string(to_string(static_cast<FailureMode>(i)))] = tally.counts[i];
  }
  obj["total_preds"] = tally.total_preds;
  return obj;
}

}  // namespace absa
