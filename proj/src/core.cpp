#include "absa/core.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <tuple>

namespace absa {

std::string_view to_string(Sentiment s) {
  switch (s) {
    case Sentiment::positive: return "positive";
    case Sentiment::negative: return "negative";
    case Sentiment::neutral: return "neutral";
    case Sentiment::mixed: return "mixed";
  }
  return "";
}

std::optional<Sentiment> parse_sentiment(std::string_view s) {
  if (s == "positive") return Sentiment::positive;
  if (s == "negative") return Sentiment::negative;
  if (s == "neutral") return Sentiment::neutral;
  if (s == "mixed") return Sentiment::mixed;
  return std::nullopt;
}

std::optional<Sentiment> parse_sentiment_ci(std::string_view s) {
  return parse_sentiment(ascii_lower(s));
}

std::optional<Sentiment> normalize_sentiment(std::string_view s) {
  const std::string folded = ascii_lower(trim(s));
  if (auto parsed = parse_sentiment(folded)) return parsed;
  if (folded == "pos") return Sentiment::positive;
  if (folded == "neg") return Sentiment::negative;
  if (folded == "neu") return Sentiment::neutral;
  return std::nullopt;
}

std::string_view to_string(TaskArity a) {
  return a == TaskArity::quad ? "quad" : "triple";
}

std::optional<TaskArity> parse_task_arity(std::string_view s) {
  if (s == "quad") return TaskArity::quad;
  if (s == "triple") return TaskArity::triple;
  return std::nullopt;
}

std::string_view to_string(FailureMode m) {
  switch (m) {
    case FailureMode::invalid_json: return "invalid_json";
    case FailureMode::incorrect_keys: return "incorrect_keys";
    case FailureMode::invalid_sentiment: return "invalid_sentiment";
    case FailureMode::invalid_aspect_category: return "invalid_aspect_category";
    case FailureMode::non_extractive_target: return "non_extractive_target";
    case FailureMode::non_extractive_opinion_expression:
      return "non_extractive_opinion_expression";
  }
  return "";
}

std::string_view failure_mode_abbrev(FailureMode m) {
  switch (m) {
    case FailureMode::invalid_json: return "JSON";
    case FailureMode::incorrect_keys: return "Keys";
    case FailureMode::invalid_sentiment: return "Sent";
    case FailureMode::invalid_aspect_category: return "AspCat";
    case FailureMode::non_extractive_target: return "NETarg";
    case FailureMode::non_extractive_opinion_expression: return "NEOpExp";
  }
  return "";
}

std::optional<FailureMode> parse_failure_mode(std::string_view s) {
  for (std::size_t i = 0; i < kFailureModeCount; ++i) {
    const auto m = static_cast<FailureMode>(i);
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<Quad> canonical_quad_order(std::vector<Quad> quads, std::string_view text) {
  constexpr std::size_t kNotFound = std::numeric_limits<std::size_t>::max();
  struct Key {
    bool unlocatable;
    std::size_t expr_offset;
    std::size_t target_offset;
  };
  std::vector<Key> keys;
  keys.reserve(quads.size());
  for (const Quad& q : quads) {
    const std::size_t expr = text.find(q.opinion_expression);
    if (expr == std::string_view::npos) {
      // unlocatable expressions sort after all locatable ones, in input order
      keys.push_back({true, 0, 0});
      continue;
    }
    std::size_t target = kNotFound;
    if (!q.implicit_target()) {
      const std::size_t t = text.find(q.target);
      if (t != std::string_view::npos) target = t;
    }
    keys.push_back({false, expr, target});
  }

  std::vector<std::size_t> order(quads.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(keys[a].unlocatable, keys[a].expr_offset, keys[a].target_offset) <
           std::tie(keys[b].unlocatable, keys[b].expr_offset, keys[b].target_offset);
  });

  std::vector<Quad> out;
  out.reserve(quads.size());
  for (std::size_t i : order) out.push_back(std::move(quads[i]));
  return out;
}

}  // namespace absa
