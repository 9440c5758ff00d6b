#include "absa/json_mend.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <set>

#include "absa/core.hpp"

namespace absa {
namespace {

using nlohmann::ordered_json;

// Pipeline order of repair tags; applied_fixes is reported in this order.
constexpr std::array<std::string_view, 15> kTagOrder = {
    "strip_fences",    "strip_prose",     "smart_quotes",   "single_quotes",
    "bare_keys",       "unquoted_value",  "trailing_comma", "missing_comma",
    "missing_colon",   "missing_value",   "python_literals", "control_chars",
    "invalid_escape",  "unterminated_string", "close_brackets"};

bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_structural(char c) {
  return c == '{' || c == '}' || c == '[' || c == ']' || c == ':' || c == ',';
}

// UTF-8 sequences of the curly quote family.
constexpr std::string_view kSmartDoubleOpen = "\xe2\x80\x9c";   // U+201C
constexpr std::string_view kSmartDoubleClose = "\xe2\x80\x9d";  // U+201D
constexpr std::string_view kSmartDoubleLow = "\xe2\x80\x9e";    // U+201E
constexpr std::string_view kSmartSingleOpen = "\xe2\x80\x98";   // U+2018
constexpr std::string_view kSmartSingleClose = "\xe2\x80\x99";  // U+2019

bool starts_with_at(std::string_view text, std::size_t pos, std::string_view what) {
  return text.substr(pos, what.size()) == what;
}

std::string escape_json_string(std::string_view content) {
  std::string out = "\"";
  for (const char raw : content) {
    const auto c = static_cast<unsigned char>(raw);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += raw;
        }
    }
  }
  out += '"';
  return out;
}

// Rewrites almost-JSON into strict JSON in one left-to-right scan, recording
// which repair passes fired. Every loop iteration consumes input or returns,
// so the scan always terminates.
class RepairScanner {
 public:
  explicit RepairScanner(std::string_view in) : in_(in) {}

  std::optional<std::string> run(std::set<std::string_view>& tags) {
    skip_ws();
    if (at_end()) return std::nullopt;
    if (!parse_value(0)) return std::nullopt;
    tags.insert(tags_.begin(), tags_.end());
    return out_;
  }

 private:
  static constexpr int kMaxDepth = 512;

  std::string_view in_;
  std::size_t pos_ = 0;
  std::string pending_;  // characters handed back by the unterminated-string fixup
  std::string out_;
  std::set<std::string_view> tags_;

  void tag(std::string_view t) { tags_.insert(t); }

  bool at_end() const { return pending_.empty() && pos_ >= in_.size(); }

  char peek() const {
    if (!pending_.empty()) return pending_.front();
    return pos_ < in_.size() ? in_[pos_] : '\0';
  }

  char get() {
    if (!pending_.empty()) {
      const char c = pending_.front();
      pending_.erase(pending_.begin());
      return c;
    }
    return pos_ < in_.size() ? in_[pos_++] : '\0';
  }

  void skip_ws() {
    while (!at_end() && is_ws(peek())) get();
  }

  // Smart quotes only occur in the primary input, never among pushed-back
  // structural characters.
  bool at_smart(std::string_view seq) const {
    return pending_.empty() && starts_with_at(in_, pos_, seq);
  }

  bool consume_smart(std::string_view seq) {
    if (!at_smart(seq)) return false;
    pos_ += seq.size();
    return true;
  }

  bool at_string_start() const {
    const char c = peek();
    return c == '"' || c == '\'' || at_smart(kSmartDoubleOpen) || at_smart(kSmartDoubleLow) ||
           at_smart(kSmartSingleOpen);
  }

  bool parse_value(int depth) {
    if (depth > kMaxDepth) return false;
    skip_ws();
    if (at_end()) return false;
    const char c = peek();
    if (c == '{') return parse_object(depth);
    if (c == '[') return parse_array(depth);
    if (at_string_start()) return parse_string();
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c)) != 0) {
      return parse_number();
    }
    return parse_bare_value();
  }

  bool parse_object(int depth) {
    get();  // '{'
    out_ += '{';
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) {
        tag("close_brackets");
        out_ += '}';
        return true;
      }
      const char c = peek();
      if (c == '}') {
        get();
        out_ += '}';
        return true;
      }
      if (c == ']') {  // mismatched closer; close this scope, let the owner eat it
        tag("close_brackets");
        out_ += '}';
        return true;
      }
      if (c == ',') {
        get();
        tag("trailing_comma");
        continue;
      }
      if (c == '{' || c == '[') {  // cannot start a key; drop
        get();
        continue;
      }

      if (!first) out_ += ',';
      first = false;

      // key
      if (c == ':') {
        out_ += "\"\"";
        tag("missing_value");
      } else if (at_string_start()) {
        parse_string();
      } else {
        parse_bare_key();
      }
      skip_ws();
      if (!at_end() && peek() == ':') {
        get();
      } else {
        tag("missing_colon");
      }
      out_ += ':';

      // value
      skip_ws();
      if (at_end() || peek() == ',' || peek() == '}' || peek() == ']') {
        tag("missing_value");
        out_ += "\"\"";
      } else if (!parse_value(depth + 1)) {
        return false;
      }

      // separator
      skip_ws();
      if (at_end()) continue;  // loop head closes the object
      if (peek() == ',') {
        get();
        skip_ws();
        if (!at_end() && peek() == '}') tag("trailing_comma");
        continue;
      }
      if (peek() == '}' || peek() == ']') continue;
      tag("missing_comma");  // next pair follows with no separator
    }
  }

  bool parse_array(int depth) {
    get();  // '['
    out_ += '[';
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) {
        tag("close_brackets");
        out_ += ']';
        return true;
      }
      const char c = peek();
      if (c == ']') {
        get();
        out_ += ']';
        return true;
      }
      if (c == '}') {  // mismatched closer
        tag("close_brackets");
        out_ += ']';
        return true;
      }
      if (c == ',') {
        get();
        tag("trailing_comma");
        continue;
      }
      if (c == ':') {  // stray colon; drop
        get();
        continue;
      }

      if (!first) out_ += ',';
      first = false;
      if (!parse_value(depth + 1)) return false;

      skip_ws();
      if (at_end()) continue;
      if (peek() == ',') {
        get();
        skip_ws();
        if (!at_end() && peek() == ']') tag("trailing_comma");
        continue;
      }
      if (peek() == ']' || peek() == '}') continue;
      tag("missing_comma");
    }
  }

  void parse_bare_key() {
    std::string word;
    while (!at_end()) {
      const char c = peek();
      if (is_structural(c) || is_ws(c) || c == '"' || c == '\'') break;
      word += get();
    }
    tag("bare_keys");
    out_ += escape_json_string(word);
  }

  bool parse_string() {
    enum class Delim { plain, single, smart_double, smart_single };
    Delim delim = Delim::plain;
    if (peek() == '"') {
      get();
    } else if (peek() == '\'') {
      get();
      delim = Delim::single;
      tag("single_quotes");
    } else if (consume_smart(kSmartDoubleOpen) || consume_smart(kSmartDoubleLow)) {
      delim = Delim::smart_double;
      tag("smart_quotes");
    } else if (consume_smart(kSmartSingleOpen)) {
      delim = Delim::smart_single;
      tag("smart_quotes");
    }

    std::string content;
    bool closed = false;
    while (!at_end()) {
      if (delim == Delim::plain && peek() == '"') {
        get();
        closed = true;
        break;
      }
      if (delim == Delim::single && peek() == '\'') {
        get();
        closed = true;
        break;
      }
      if (delim == Delim::smart_double &&
          (consume_smart(kSmartDoubleClose) || consume_smart(kSmartDoubleOpen))) {
        closed = true;
        break;
      }
      if (delim == Delim::smart_single && consume_smart(kSmartSingleClose)) {
        closed = true;
        break;
      }
      const char c = get();
      if (c == '\\') {
        if (at_end()) {
          content += '\\';
          break;
        }
        const char e = get();
        switch (e) {
          case '"': content += '"'; break;
          case '\\': content += '\\'; break;
          case '/': content += '/'; break;
          case 'b': content += '\b'; break;
          case 'f': content += '\f'; break;
          case 'n': content += '\n'; break;
          case 'r': content += '\r'; break;
          case 't': content += '\t'; break;
          case 'u': {
            std::string hex;
            while (hex.size() < 4 && !at_end() &&
                   std::isxdigit(static_cast<unsigned char>(peek())) != 0) {
              hex += get();
            }
            if (hex.size() == 4) {
              append_codepoint(content, std::stoul(hex, nullptr, 16));
            } else {
              tag("invalid_escape");
              content += "u" + hex;
            }
            break;
          }
          case '\'':
            content += '\'';
            tag("invalid_escape");
            break;
          default:
            tag("invalid_escape");
            content += '\\';
            content += e;
        }
        continue;
      }
      if (static_cast<unsigned char>(c) < 0x20) tag("control_chars");
      content += c;
    }

    if (!closed) {
      tag("unterminated_string");
      // an unterminated string often swallows the closing brackets of the
      // document; hand trailing '}' / ']' back to the structural parser
      std::string reinject;
      while (!content.empty() &&
             (is_ws(content.back()) || content.back() == '}' || content.back() == ']')) {
        if (!is_ws(content.back())) reinject.insert(reinject.begin(), content.back());
        content.pop_back();
      }
      pending_ = reinject + pending_;
    }
    out_ += escape_json_string(content);
    return true;
  }

  static void append_codepoint(std::string& content, unsigned long cp) {
    if (cp < 0x80) {
      content += static_cast<char>(cp);
    } else if (cp < 0x800) {
      content += static_cast<char>(0xc0 | (cp >> 6));
      content += static_cast<char>(0x80 | (cp & 0x3f));
    } else {
      content += static_cast<char>(0xe0 | (cp >> 12));
      content += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
      content += static_cast<char>(0x80 | (cp & 0x3f));
    }
  }

  bool parse_number() {
    std::string token;
    while (!at_end()) {
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '+' ||
          c == '.' || c == 'e' || c == 'E') {
        token += get();
      } else {
        break;
      }
    }
    std::string candidate = token;
    if (!candidate.empty() && candidate.front() == '+') candidate.erase(candidate.begin());
    const auto parsed = ordered_json::parse(candidate, nullptr, false);
    if (!parsed.is_discarded() && parsed.is_number()) {
      out_ += candidate;
      return true;
    }
    tag("unquoted_value");
    out_ += escape_json_string(token);
    return true;
  }

  bool parse_bare_value() {
    std::string word;
    while (!at_end()) {
      const char c = peek();
      if (c == ',' || c == '}' || c == ']' || c == '\n' || c == '\r') break;
      word += get();
    }
    while (!word.empty() && is_ws(word.back())) word.pop_back();
    if (word.empty()) {
      tag("missing_value");
      out_ += "\"\"";
      return true;
    }
    if (word == "true" || word == "false" || word == "null") {
      out_ += word;
      return true;
    }
    if (word == "True" || word == "False") {
      tag("python_literals");
      out_ += (word == "True" ? "true" : "false");
      return true;
    }
    if (word == "None") {
      tag("python_literals");
      out_ += "null";
      return true;
    }
    tag("unquoted_value");
    out_ += escape_json_string(word);
    return true;
  }
};

struct Region {
  std::string_view text;
  bool stripped_fences = false;
  bool stripped_prose = false;
  bool found = false;
};

// Isolates the first balanced JSON-candidate region: fence content when a
// markdown code fence is present, then everything from the first '{' or '['
// to its balancing close (or end of input when truncated). Trailing garbage
// after a balanced value is discarded; the first candidate region wins.
Region isolate_candidate(std::string_view raw) {
  Region region;
  std::string_view text = raw;

  const std::size_t fence = text.find("```");
  if (fence != std::string_view::npos) {
    std::size_t content_start = fence + 3;
    const std::size_t eol = text.find('\n', content_start);
    std::size_t probe = content_start;  // skip a language tag such as ```json
    while (probe < text.size() && std::isalnum(static_cast<unsigned char>(text[probe])) != 0) {
      ++probe;
    }
    if (eol != std::string_view::npos && probe <= eol) content_start = eol + 1;
    const std::size_t closing = text.find("```", content_start);
    text = closing != std::string_view::npos
               ? text.substr(content_start, closing - content_start)
               : text.substr(content_start);
    region.stripped_fences = true;
  }

  const std::size_t open = text.find_first_of("{[");
  if (open == std::string_view::npos) return region;

  // string-aware bracket balance scan
  std::size_t depth = 0;
  char in_string = '\0';
  std::size_t end = text.size();
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string != '\0') {
      if (c == '\\') {
        ++i;
      } else if (c == in_string) {
        in_string = '\0';
      }
      continue;
    }
    if (c == '"' || c == '\'') {
      in_string = c;
    } else if (c == '{' || c == '[') {
      ++depth;
    } else if (c == '}' || c == ']') {
      if (depth > 0) --depth;
      if (depth == 0) {
        end = i + 1;
        break;
      }
    }
  }

  if (!trim(text.substr(0, open)).empty() || !trim(text.substr(end)).empty()) {
    region.stripped_prose = true;
  }
  region.text = text.substr(open, end - open);
  region.found = true;
  return region;
}

}  // namespace

MendOutcome mend(std::string_view raw) {
  MendOutcome outcome;

  auto strict = ordered_json::parse(raw, nullptr, false);
  if (!strict.is_discarded()) {
    outcome.value = std::move(strict);
    return outcome;
  }

  const Region region = isolate_candidate(raw);
  if (!region.found) return outcome;

  std::set<std::string_view> tags;
  if (region.stripped_fences) tags.insert("strip_fences");
  if (region.stripped_prose) tags.insert("strip_prose");

  auto candidate = ordered_json::parse(region.text, nullptr, false);
  if (candidate.is_discarded()) {
    RepairScanner scanner(region.text);
    const auto repaired_text = scanner.run(tags);
    if (!repaired_text) return outcome;
    candidate = ordered_json::parse(*repaired_text, nullptr, false);
    if (candidate.is_discarded()) return outcome;
  }

  outcome.value = std::move(candidate);
  outcome.repaired = true;
  for (const std::string_view t : kTagOrder) {
    if (tags.count(t) != 0) outcome.applied_fixes.emplace_back(t);
  }
  return outcome;
}

}  // namespace absa
