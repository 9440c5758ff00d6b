#include "absa/prompt.hpp"

#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "absa/errors.hpp"
#include "absa/jsonl.hpp"

namespace absa {
namespace {

constexpr std::string_view kPlaceholders[] = {
    "example_text", "allowed_sentiments", "allowed_aspect_categories",
    "one_shot_document", "one_shot_answer"};

constexpr std::string_view kSectionHeaders[] = {
    "DOCUMENT", "ALLOWED SENTIMENTS", "ALLOWED ASPECT CATEGORIES",
    "FORMATTING EXAMPLE", "RESPONSE"};

std::size_t count_occurrences(std::string_view body, std::string_view what) {
  std::size_t count = 0;
  for (std::size_t at = body.find(what); at != std::string_view::npos;
       at = body.find(what, at + what.size())) {
    ++count;
  }
  return count;
}

std::string replace_once(std::string body, std::string_view placeholder,
                         std::string_view value) {
  const std::string token = "{" + std::string(placeholder) + "}";
  const std::size_t at = body.find(token);
  if (at == std::string::npos) throw MissingPlaceholderError(std::string(placeholder));
  body.replace(at, token.size(), value);
  return body;
}

std::string json_escape(std::string_view s) {
  // nlohmann's serializer keeps UTF-8 intact and escapes control characters
  return nlohmann::json(std::string(s)).dump();
}

// Sentiments as listed in the prompt; triple-mode corpora carry no "mixed".
std::vector<std::string_view> prompt_sentiments(TaskArity arity) {
  std::vector<std::string_view> out = {"negative", "positive", "neutral"};
  if (arity == TaskArity::quad) out.push_back("mixed");
  return out;
}

// Unbiased bounded draw via rejection sampling; mt19937_64 output is fully
// specified by the standard, so shuffles reproduce across platforms.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t rem =
      (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
  std::uint64_t draw = rng();
  while (draw > limit) draw = rng();
  return draw % bound;
}

template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::uint64_t j = bounded_uniform(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace

void validate_template(const PromptTemplate& tmpl) {
  for (const std::string_view name : kPlaceholders) {
    const std::string token = "{" + std::string(name) + "}";
    const std::size_t n = count_occurrences(tmpl.body, token);
    if (n == 0) throw MissingPlaceholderError(std::string(name));
    if (n > 1) {
      throw ConfigError("template placeholder {" + std::string(name) +
                        "} occurs " + std::to_string(n) + " times; expected once");
    }
  }
  std::size_t previous = 0;
  for (const std::string_view header : kSectionHeaders) {
    const std::size_t at = tmpl.body.find(header, previous);
    if (at == std::string::npos) {
      throw ConfigError("template section headers out of order; expected '" +
                        std::string(header) + "' after position " +
                        std::to_string(previous));
    }
    previous = at + header.size();
  }
}

PromptTemplate load_template(const std::filesystem::path& path, std::string_view language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingTemplateError(std::string(language));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  PromptTemplate tmpl{std::string(language), buffer.str()};
  validate_template(tmpl);
  return tmpl;
}

const PromptTemplate& TemplateSet::require(const std::string& language) const {
  const auto it = by_language.find(language);
  if (it == by_language.end()) throw MissingTemplateError(language);
  return it->second;
}

TemplateSet load_templates(const std::filesystem::path& template_dir,
                           const std::vector<std::string>& languages) {
  TemplateSet set;
  for (const std::string& language : languages) {
    set.by_language.emplace(
        language, load_template(template_dir / ("prompt_" + language + ".txt"), language));
  }
  return set;
}

std::optional<PromptLanguagePolicy> parse_policy(std::string_view s) {
  if (s == "en") return PromptLanguagePolicy::english_only;
  if (s == "fr") return PromptLanguagePolicy::french_only;
  if (s == "mix") return PromptLanguagePolicy::mixed;
  return std::nullopt;
}

std::string_view to_string(PromptLanguagePolicy policy) {
  switch (policy) {
    case PromptLanguagePolicy::english_only: return "en";
    case PromptLanguagePolicy::french_only: return "fr";
    case PromptLanguagePolicy::mixed: return "mix";
  }
  return "";
}

std::string template_language_for(PromptLanguagePolicy policy,
                                  std::string_view sample_language) {
  switch (policy) {
    case PromptLanguagePolicy::english_only: return "en";
    case PromptLanguagePolicy::french_only: return "fr";
    case PromptLanguagePolicy::mixed: return sample_language == "fr" ? "fr" : "en";
  }
  return "en";
}

std::vector<std::string> policy_languages(PromptLanguagePolicy policy) {
  switch (policy) {
    case PromptLanguagePolicy::english_only: return {"en"};
    case PromptLanguagePolicy::french_only: return {"fr"};
    case PromptLanguagePolicy::mixed: return {"en", "fr"};
  }
  return {};
}

std::string render_prompt(const DomainTaxonomy& taxonomy, const PromptTemplate& tmpl,
                          std::string_view text) {
  std::string sentiments;
  for (const std::string_view s : prompt_sentiments(taxonomy.task_arity)) {
    if (!sentiments.empty()) sentiments += '\n';
    sentiments += "- ";
    sentiments += s;
  }
  std::string categories;
  for (const CategoryDef& c : taxonomy.categories) {
    if (!categories.empty()) categories += '\n';
    categories += "- " + c.label + " (description: " + c.description + ")";
  }
  std::string body = tmpl.body;
  body = replace_once(std::move(body), "example_text", text);
  body = replace_once(std::move(body), "allowed_sentiments", sentiments);
  body = replace_once(std::move(body), "allowed_aspect_categories", categories);
  body = replace_once(std::move(body), "one_shot_document", taxonomy.one_shot.example_text);
  body = replace_once(std::move(body), "one_shot_answer",
                      serialize_answer(taxonomy.one_shot.example_quads,
                                       taxonomy.one_shot.example_text,
                                       taxonomy.task_arity));
  return body;
}

std::string serialize_answer(std::vector<Quad> quads, std::string_view text,
                             TaskArity arity) {
  quads = canonical_quad_order(std::move(quads), text);
  std::string out = "{\"";
  out += kAnswerKey;
  out += "\": [";
  bool first = true;
  for (const Quad& q : quads) {
    if (!first) out += ", ";
    first = false;
    out += "{\"target\": " + json_escape(q.target);
    out += ", \"aspect_category\": " + json_escape(q.aspect_category);
    out += ", \"sentiment\": " + json_escape(q.sentiment);
    if (arity == TaskArity::quad) {
      out += ", \"opinion_expression\": " + json_escape(q.opinion_expression);
    }
    out += "}";
  }
  out += "]}";
  return out;
}

std::vector<SftPair> build_instruction_set(const std::vector<DomainData>& domains,
                                           const TemplateSet& templates,
                                           PromptLanguagePolicy policy, std::uint64_t seed) {
  std::map<std::string, const DomainTaxonomy*> by_domain;
  for (const DomainData& d : domains) by_domain[d.taxonomy.domain_id] = &d.taxonomy;

  std::vector<SftPair> pairs;
  for (const DomainData& d : domains) {
    for (const Sample& sample : d.split.samples) {
      const auto it = by_domain.find(sample.domain);
      if (it == by_domain.end()) throw UnknownDomainError(sample.domain);
      const DomainTaxonomy& taxonomy = *it->second;
      const std::string language = template_language_for(policy, sample.language);
      SftPair pair;
      pair.system = taxonomy.system_prompt;
      pair.user = render_prompt(taxonomy, templates.require(language), sample.text);
      pair.assistant = serialize_answer(sample.gold, sample.text, taxonomy.task_arity);
      pair.sample_id = sample.id;
      pair.domain = sample.domain;
      pair.language = sample.language;
      pairs.push_back(std::move(pair));
    }
  }
  deterministic_shuffle(pairs, seed);
  return pairs;
}

void export_sft(const std::vector<SftPair>& pairs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  for (const SftPair& pair : pairs) {
    nlohmann::ordered_json line;
    line["messages"] = nlohmann::ordered_json::array(
        {{{"role", "system"}, {"content", pair.system}},
         {{"role", "user"}, {"content", pair.user}},
         {{"role", "assistant"}, {"content", pair.assistant}}});
    line["sample_id"] = pair.sample_id;
    line["domain"] = pair.domain;
    line["language"] = pair.language;
    out << line.dump() << '\n';
  }
  if (!out) throw IoError(path.string(), "write failed");
}

std::vector<SftPair> load_sft(const std::filesystem::path& path) {
  std::vector<SftPair> pairs;
  for_each_jsonl(path, [&](std::size_t line_no, const nlohmann::ordered_json& obj) {
    SftPair pair;
    const auto messages = obj.find("messages");
    if (messages == obj.end() || !messages->is_array()) {
      throw MalformedLineError(path.string(), line_no, "missing 'messages' array");
    }
    for (const auto& message : *messages) {
      const std::string role = message.value("role", "");
      const std::string content = message.value("content", "");
      if (role == "system") {
        pair.system = content;
      } else if (role == "user") {
        pair.user = content;
      } else if (role == "assistant") {
        pair.assistant = content;
      }
    }
    pair.sample_id = require_string(obj, "sample_id", path, line_no);
    pair.domain = obj.value("domain", "");
    pair.language = obj.value("language", "");
    pairs.push_back(std::move(pair));
  });
  return pairs;
}

DomainTaxonomy load_taxonomy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open file");
  const auto doc = nlohmann::ordered_json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ConfigError(path.string() + ": taxonomy is not a JSON object");
  }

  DomainTaxonomy taxonomy;
  taxonomy.domain_id = doc.value("domain_id", "");
  taxonomy.system_prompt = doc.value("system_prompt", "");
  if (taxonomy.domain_id.empty()) {
    throw ConfigError(path.string() + ": missing domain_id");
  }
  if (const auto arity = parse_task_arity(doc.value("task_arity", "quad"))) {
    taxonomy.task_arity = *arity;
  } else {
    throw ConfigError(path.string() + ": bad task_arity");
  }

  const auto categories = doc.find("categories");
  if (categories == doc.end() || !categories->is_array() || categories->empty()) {
    throw ConfigError(path.string() + ": missing or empty categories");
  }
  std::set<std::string> labels;
  for (const auto& c : *categories) {
    CategoryDef def{c.value("label", ""), c.value("description", "")};
    if (def.label.empty()) throw ConfigError(path.string() + ": category without label");
    if (!labels.insert(def.label).second) {
      throw ConfigError(path.string() + ": duplicate category label '" + def.label + "'");
    }
    taxonomy.categories.push_back(std::move(def));
  }

  const auto one_shot = doc.find("one_shot");
  if (one_shot == doc.end() || !one_shot->is_object()) {
    throw ConfigError(path.string() + ": missing one_shot example");
  }
  taxonomy.one_shot.example_text = one_shot->value("example_text", "");
  const auto quads = one_shot->find("example_quads");
  if (quads == one_shot->end() || !quads->is_array()) {
    throw ConfigError(path.string() + ": missing one_shot.example_quads");
  }
  for (const auto& q : *quads) {
    Quad quad;
    quad.target = q.value("target", "");
    quad.aspect_category = q.value("aspect_category", "");
    quad.sentiment = q.value("sentiment", "");
    quad.opinion_expression = q.value("opinion_expression", "");
    const auto check_extractive = [&](const std::string& field, const char* what) {
      if (taxonomy.one_shot.example_text.find(field) == std::string::npos) {
        throw ConfigError(path.string() + ": one_shot " + what + " '" + field +
                          "' is not a substring of the example text");
      }
    };
    if (!quad.implicit_target()) check_extractive(quad.target, "target");
    if (taxonomy.task_arity == TaskArity::quad) {
      check_extractive(quad.opinion_expression, "opinion expression");
    }
    taxonomy.one_shot.example_quads.push_back(std::move(quad));
  }
  taxonomy.one_shot.example_quads = canonical_quad_order(
      std::move(taxonomy.one_shot.example_quads), taxonomy.one_shot.example_text);
  return taxonomy;
}

}  // namespace absa
