#include "absa/align.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "absa/errors.hpp"

namespace absa {
namespace {

bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Decodes UTF-8 into code points, tracking the byte offset of each one.
// Invalid bytes decode as themselves so the scan is total.
void decode_utf8(std::string_view s, std::vector<char32_t>& cps,
                 std::vector<std::size_t>& offsets) {
  cps.clear();
  offsets.clear();
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = b0;
    if ((b0 & 0xe0) == 0xc0) {
      len = 2;
      cp = b0 & 0x1f;
    } else if ((b0 & 0xf0) == 0xe0) {
      len = 3;
      cp = b0 & 0x0f;
    } else if ((b0 & 0xf8) == 0xf0) {
      len = 4;
      cp = b0 & 0x07;
    }
    if (i + len > s.size()) len = 1, cp = b0;
    for (std::size_t k = 1; k < len; ++k) {
      const auto bk = static_cast<unsigned char>(s[i + k]);
      if ((bk & 0xc0) != 0x80) {  // broken sequence; fall back to single byte
        len = 1;
        cp = b0;
        break;
      }
      cp = (cp << 6) | (bk & 0x3f);
    }
    offsets.push_back(i);
    cps.push_back(cp);
    i += len;
  }
  offsets.push_back(s.size());  // sentinel
}

struct Word {
  std::size_t byte_start;
  std::size_t byte_end;
};

std::vector<Word> split_words(std::string_view text) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_ws(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_ws(text[j])) ++j;
    words.push_back({i, j});
    i = j;
  }
  return words;
}

// Two-row DP over code point sequences.
std::size_t edit_distance(const char32_t* a, std::size_t an, const char32_t* b,
                          std::size_t bn, std::vector<std::size_t>& row0,
                          std::vector<std::size_t>& row1) {
  row0.resize(bn + 1);
  row1.resize(bn + 1);
  for (std::size_t j = 0; j <= bn; ++j) row0[j] = j;
  for (std::size_t i = 0; i < an; ++i) {
    row1[0] = i + 1;
    for (std::size_t j = 0; j < bn; ++j) {
      const std::size_t del = row0[j + 1] + 1;
      const std::size_t ins = row1[j] + 1;
      const std::size_t sub = row0[j] + (a[i] != b[j] ? 1 : 0);
      row1[j + 1] = std::min({del, ins, sub});
    }
    std::swap(row0, row1);
  }
  return row0[bn];
}

// similarity(a, b) = 1 - dist/maxlen, compared exactly as rationals:
// 1 - d1/m1 > 1 - d2/m2  <=>  d2*m1 > d1*m2.
struct Score {
  std::size_t dist = 0;
  std::size_t max_len = 0;  // 0 means both strings empty (similarity 1)

  double value() const {
    if (max_len == 0) return 1.0;
    return 1.0 - static_cast<double>(dist) / static_cast<double>(max_len);
  }

  bool better_than(const Score& other) const {
    if (max_len == 0 || other.max_len == 0) return value() > other.value();
    return other.dist * max_len > dist * other.max_len;
  }

  bool equals(const Score& other) const {
    if (max_len == 0 || other.max_len == 0) return value() == other.value();
    return other.dist * max_len == dist * other.max_len;
  }
};

}  // namespace

std::vector<SpanCandidate> enumerate_spans(std::string_view text, const AlignConfig& config) {
  const std::vector<Word> words = split_words(text);
  std::vector<SpanCandidate> spans;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::size_t last = std::min(words.size(), i + config.max_span_words);
    for (std::size_t j = i; j < last; ++j) {
      const std::size_t start = words[i].byte_start;
      const std::size_t end = words[j].byte_end;
      spans.push_back({start, end, std::string(text.substr(start, end - start))});
    }
  }
  return spans;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<char32_t> ca, cb;
  std::vector<std::size_t> off;
  decode_utf8(a, ca, off);
  decode_utf8(b, cb, off);
  std::vector<std::size_t> row0, row1;
  return edit_distance(ca.data(), ca.size(), cb.data(), cb.size(), row0, row1);
}

double similarity(std::string_view a, std::string_view b) {
  std::vector<char32_t> ca, cb;
  std::vector<std::size_t> off;
  decode_utf8(a, ca, off);
  decode_utf8(b, cb, off);
  if (ca.empty() && cb.empty()) return 1.0;
  std::vector<std::size_t> row0, row1;
  const std::size_t d = edit_distance(ca.data(), ca.size(), cb.data(), cb.size(), row0, row1);
  return Score{d, std::max(ca.size(), cb.size())}.value();
}

AlignOutcome align(std::string_view prediction, std::string_view text,
                   const AlignConfig& config) {
  if (prediction.empty()) throw EmptyPredictionError();

  AlignOutcome outcome;

  // extractive fixed point: the first verbatim occurrence wins outright
  const std::size_t found = text.find(prediction);
  if (found != std::string_view::npos) {
    outcome.replacement = SpanCandidate{found, found + prediction.size(),
                                        std::string(prediction)};
    outcome.similarity = 1.0;
    return outcome;
  }

  std::vector<char32_t> text_cps, pred_cps;
  std::vector<std::size_t> text_offsets, pred_offsets;
  decode_utf8(text, text_cps, text_offsets);
  decode_utf8(prediction, pred_cps, pred_offsets);

  // code point index for each byte position of interest
  const auto cp_index = [&](std::size_t byte_pos) {
    const auto it =
        std::lower_bound(text_offsets.begin(), text_offsets.end(), byte_pos);
    return static_cast<std::size_t>(it - text_offsets.begin());
  };

  const std::vector<Word> words = split_words(text);
  bool have_best = false;
  Score best_score;
  std::size_t best_start = 0, best_end = 0;
  std::vector<std::size_t> row0, row1;

  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::size_t last = std::min(words.size(), i + config.max_span_words);
    const std::size_t cp_start = cp_index(words[i].byte_start);
    for (std::size_t j = i; j < last; ++j) {
      const std::size_t start = words[i].byte_start;
      const std::size_t end = words[j].byte_end;
      const std::size_t cp_len = cp_index(end) - cp_start;
      const std::size_t max_len = std::max(cp_len, pred_cps.size());

      // |len(a)-len(b)| lower-bounds the distance, so this upper bound on the
      // similarity is exact; skipping strictly-worse candidates cannot change
      // the argmax or the tie-break.
      if (have_best) {
        const std::size_t len_gap =
            cp_len > pred_cps.size() ? cp_len - pred_cps.size() : pred_cps.size() - cp_len;
        const Score upper{len_gap, max_len};
        if (best_score.better_than(upper)) continue;
      }

      ++outcome.candidates_scored;
      const std::size_t d = edit_distance(text_cps.data() + cp_start, cp_len,
                                          pred_cps.data(), pred_cps.size(), row0, row1);
      const Score score{d, max_len};
      const std::size_t byte_len = end - start;
      const bool wins =
          !have_best || score.better_than(best_score) ||
          (score.equals(best_score) &&
           (byte_len < best_end - best_start ||
            (byte_len == best_end - best_start && start < best_start)));
      if (wins) {
        have_best = true;
        best_score = score;
        best_start = start;
        best_end = end;
      }
    }
  }

  if (!have_best) return outcome;  // no words in the text
  outcome.similarity = best_score.value();
  if (outcome.similarity >= config.min_similarity) {
    outcome.replacement =
        SpanCandidate{best_start, best_end,
                      std::string(text.substr(best_start, best_end - best_start))};
  }
  return outcome;
}

ValidationResult repair_result(ValidationResult result, std::string_view sample_text,
                               const AlignConfig& config) {
  char buf[64];
  for (FailureRecord& record : result.failures) {
    const bool target_failure = record.mode == FailureMode::non_extractive_target;
    const bool expression_failure =
        record.mode == FailureMode::non_extractive_opinion_expression;
    if ((!target_failure && !expression_failure) || !record.quad_index) continue;

    const auto quad_it =
        std::find_if(result.quads.begin(), result.quads.end(), [&](const ValidatedQuad& vq) {
          return vq.source_index == *record.quad_index;
        });
    if (quad_it == result.quads.end()) continue;

    std::string& field = target_failure ? quad_it->quad.target
                                        : quad_it->quad.opinion_expression;
    if (field.empty()) {
      record.detail += " | unrepaired (empty prediction)";
      continue;
    }
    const AlignOutcome aligned = align(field, sample_text, config);
    if (aligned.replacement) {
      std::snprintf(buf, sizeof(buf), "%.4f", aligned.similarity);
      record.detail += " | repaired to '" + aligned.replacement->text +
                       "' (similarity " + buf + ")";
      field = aligned.replacement->text;
    } else {
      std::snprintf(buf, sizeof(buf), "%.4f", aligned.similarity);
      record.detail += std::string(" | unrepaired (best similarity ") + buf +
                       " below threshold)";
    }
  }
  return result;
}

}  // namespace absa
