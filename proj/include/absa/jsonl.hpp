#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include <json.hpp>

#include "absa/errors.hpp"

namespace absa {

/// Calls fn(line_no, parsed) for every non-blank line of a line-delimited JSON
/// file. Line numbers are 1-based and count blank lines too. Throws IoError if
/// the file cannot be read and MalformedLineError on unparsable lines.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const nlohmann::ordered_json&)>& fn);

/// Fetches a required string field; throws MalformedLineError when absent or
/// not a string.
std::string require_string(const nlohmann::ordered_json& obj, const char* key,
                           const std::filesystem::path& path, std::size_t line_no);

}  // namespace absa
