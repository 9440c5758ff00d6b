#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absa/core.hpp"
#include "absa/dataset.hpp"

namespace absa {

/// Generic ABSA prompt body with the five named placeholders {example_text}
/// (the input document slot), {allowed_sentiments}, {allowed_aspect_categories},
/// {one_shot_document}, and {one_shot_answer}, each occurring exactly once, and
/// the section headers DOCUMENT, ALLOWED SENTIMENTS, ALLOWED ASPECT CATEGORIES,
/// FORMATTING EXAMPLE, RESPONSE in that order.
struct PromptTemplate {
  std::string language;
  std::string body;
};

/// Throws MissingPlaceholderError / ConfigError when the body violates the
/// placeholder or section-order contract.
void validate_template(const PromptTemplate& tmpl);

PromptTemplate load_template(const std::filesystem::path& path, std::string_view language);

/// Templates keyed by language code; template_dir files are named
/// prompt_<language>.txt.
struct TemplateSet {
  std::map<std::string, PromptTemplate> by_language;

  const PromptTemplate& require(const std::string& language) const;
};

TemplateSet load_templates(const std::filesystem::path& template_dir,
                           const std::vector<std::string>& languages);

enum class PromptLanguagePolicy { english_only, french_only, mixed };

std::optional<PromptLanguagePolicy> parse_policy(std::string_view s);  // en | fr | mix
std::string_view to_string(PromptLanguagePolicy policy);

/// Template language selected for one sample: mixed picks "fr" for French
/// samples and "en" otherwise.
std::string template_language_for(PromptLanguagePolicy policy, std::string_view sample_language);

/// Languages a policy may ever select (what a template dir must provide).
std::vector<std::string> policy_languages(PromptLanguagePolicy policy);

/// One instruction-response training example.
struct SftPair {
  std::string system;
  std::string user;
  std::string assistant;  // gold answer JSON in canonical order
  std::string sample_id;
  std::string domain;
  std::string language;
};

/// Fills the template with the domain variables and the document text.
/// Byte-deterministic for identical inputs.
std::string render_prompt(const DomainTaxonomy& taxonomy, const PromptTemplate& tmpl,
                          std::string_view text);

/// Single-line JSON answer: {"aspect_based_sentiment_analysis": [...]} with
/// ", " and ": " separators, quad keys in fixed order (opinion_expression
/// omitted in triple mode), quads in canonical order.
std::string serialize_answer(std::vector<Quad> quads, std::string_view text, TaskArity arity);

struct DomainData {
  DomainTaxonomy taxonomy;
  DatasetSplit split;
};

/// Renders every sample of every domain with its own taxonomy, concatenates
/// across domains, and applies a seeded deterministic shuffle. The same seed
/// always produces the same order, on any platform.
std::vector<SftPair> build_instruction_set(const std::vector<DomainData>& domains,
                                           const TemplateSet& templates,
                                           PromptLanguagePolicy policy, std::uint64_t seed);

/// Line-delimited chat-messages export:
/// {messages:[{role,content}x3], sample_id, domain, language}.
void export_sft(const std::vector<SftPair>& pairs, const std::filesystem::path& path);
std::vector<SftPair> load_sft(const std::filesystem::path& path);

/// Taxonomy config: one JSON document mirroring DomainTaxonomy. Validates that
/// labels are unique and the one-shot answer is extractive.
DomainTaxonomy load_taxonomy(const std::filesystem::path& path);

}  // namespace absa
