#include "absa/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "absa/jsonl.hpp"

namespace absa {

std::string_view to_string(SplitName s) {
  switch (s) {
    case SplitName::train: return "train";
    case SplitName::validation: return "validation";
    case SplitName::test: return "test";
  }
  return "";
}

std::optional<SplitName> parse_split_name(std::string_view s) {
  if (s == "train") return SplitName::train;
  if (s == "validation") return SplitName::validation;
  if (s == "test") return SplitName::test;
  return std::nullopt;
}

Quad quad_from_json(const nlohmann::ordered_json& obj, const std::filesystem::path& path,
                    std::size_t line_no, TaskArity arity, bool normalize_sentiments) {
  if (!obj.is_object()) {
    throw MalformedLineError(path.string(), line_no, "quad is not an object");
  }
  Quad quad;
  quad.target = require_string(obj, "target", path, line_no);
  quad.aspect_category = require_string(obj, "aspect_category", path, line_no);
  const std::string raw_sentiment = require_string(obj, "sentiment", path, line_no);
  if (arity == TaskArity::quad) {
    quad.opinion_expression = require_string(obj, "opinion_expression", path, line_no);
    if (quad.opinion_expression.empty()) {
      throw MalformedLineError(path.string(), line_no, "empty opinion_expression");
    }
  } else if (const auto it = obj.find("opinion_expression");
             it != obj.end() && it->is_string()) {
    quad.opinion_expression = it->get<std::string>();
  }
  if (quad.target.empty()) {
    throw MalformedLineError(path.string(), line_no, "empty target");
  }

  const auto sentiment = normalize_sentiments ? normalize_sentiment(raw_sentiment)
                                              : parse_sentiment(raw_sentiment);
  if (!sentiment) throw UnknownSentimentError(raw_sentiment);
  quad.sentiment = to_string(*sentiment);
  return quad;
}

DatasetSplit load_dataset(const std::filesystem::path& path, const LoadOptions& options) {
  DatasetSplit split;
  split.name = options.split;
  std::unordered_set<std::string> seen_ids;
  for_each_jsonl(path, [&](std::size_t line_no, const nlohmann::ordered_json& obj) {
    if (!obj.is_object()) {
      throw MalformedLineError(path.string(), line_no, "sample is not an object");
    }
    Sample sample;
    sample.id = require_string(obj, "id", path, line_no);
    sample.text = require_string(obj, "text", path, line_no);
    sample.language = require_string(obj, "language", path, line_no);
    sample.domain = require_string(obj, "domain", path, line_no);
    const auto quads = obj.find("quads");
    if (quads == obj.end() || !quads->is_array()) {
      throw MalformedLineError(path.string(), line_no, "missing 'quads' array");
    }
    for (const auto& q : *quads) {
      sample.gold.push_back(
          quad_from_json(q, path, line_no, options.arity, options.normalize_sentiments));
    }
    sample.gold = canonical_quad_order(std::move(sample.gold), sample.text);
    if (!seen_ids.insert(sample.id).second) throw DuplicateIdError(sample.id);
    split.samples.push_back(std::move(sample));
  });
  return split;
}

nlohmann::ordered_json quad_to_json(const Quad& quad, TaskArity arity) {
  nlohmann::ordered_json obj;
  obj["target"] = quad.target;
  obj["aspect_category"] = quad.aspect_category;
  obj["sentiment"] = quad.sentiment;
  if (arity == TaskArity::quad) obj["opinion_expression"] = quad.opinion_expression;
  return obj;
}

void write_dataset(const DatasetSplit& split, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  for (const Sample& sample : split.samples) {
    nlohmann::ordered_json obj;
    obj["id"] = sample.id;
    obj["text"] = sample.text;
    obj["language"] = sample.language;
    obj["domain"] = sample.domain;
    auto quads = nlohmann::ordered_json::array();
    for (const Quad& q : sample.gold) {
      auto j = quad_to_json(q, TaskArity::quad);
      if (q.opinion_expression.empty()) j.erase("opinion_expression");
      quads.push_back(std::move(j));
    }
    obj["quads"] = std::move(quads);
    out << obj.dump() << '\n';
  }
  if (!out) throw IoError(path.string(), "write failed");
}

DatasetStats compute_stats(const DatasetSplit& split) {
  DatasetStats stats;
  for (const Sample& sample : split.samples) {
    ++stats.total_samples;
    ++stats.per_language_counts[sample.language];
    const std::size_t n = sample.gold.size();
    stats.total_quads += static_cast<std::int64_t>(n);
    ++stats.quad_histogram[n < 5 ? n : 5];
    for (const Quad& q : sample.gold) {
      if (q.implicit_target()) {
        ++stats.implicit_targets;
      } else {
        ++stats.explicit_targets;
      }
    }
  }
  if (stats.total_samples > 0) {
    stats.avg_quads_per_sample =
        static_cast<double>(stats.total_quads) / static_cast<double>(stats.total_samples);
  }
  return stats;
}

DatasetStats merge_stats(const DatasetStats& a, const DatasetStats& b) {
  DatasetStats out = a;
  out.total_samples += b.total_samples;
  out.total_quads += b.total_quads;
  out.implicit_targets += b.implicit_targets;
  out.explicit_targets += b.explicit_targets;
  for (const auto& [lang, count] : b.per_language_counts) {
    out.per_language_counts[lang] += count;
  }
  for (std::size_t i = 0; i < out.quad_histogram.size(); ++i) {
    out.quad_histogram[i] += b.quad_histogram[i];
  }
  out.avg_quads_per_sample =
      out.total_samples > 0
          ? static_cast<double>(out.total_quads) / static_cast<double>(out.total_samples)
          : 0.0;
  return out;
}

nlohmann::ordered_json stats_to_json(const DatasetStats& stats) {
  nlohmann::ordered_json obj;
  obj["total_samples"] = stats.total_samples;
  obj["total_quads"] = stats.total_quads;
  obj["per_language_counts"] = stats.per_language_counts;
  obj["implicit_targets"] = stats.implicit_targets;
  obj["explicit_targets"] = stats.explicit_targets;
  obj["avg_quads_per_sample"] = stats.avg_quads_per_sample;
  nlohmann::ordered_json hist;
  for (std::size_t i = 0; i < kHistogramBuckets.size(); ++i) {
    hist[std::string(kHistogramBuckets[i])] = stats.quad_histogram[i];
  }
  obj["quad_histogram"] = std::move(hist);
  return obj;
}

FilterResult filter_unlocatable(const DatasetSplit& split) {
  FilterResult result;
  result.split.name = split.name;
  for (const Sample& sample : split.samples) {
    const bool locatable = std::all_of(
        sample.gold.begin(), sample.gold.end(), [&](const Quad& q) {
          return q.implicit_target() || sample.text.find(q.target) != std::string::npos;
        });
    if (locatable) {
      result.split.samples.push_back(sample);
    } else {
      result.dropped_ids.push_back(sample.id);
    }
  }
  return result;
}

}  // namespace absa
