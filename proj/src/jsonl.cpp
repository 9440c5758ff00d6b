#include "absa/jsonl.hpp"

#include <fstream>

#include "absa/core.hpp"

namespace absa {

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const nlohmann::ordered_json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open file");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto parsed = nlohmann::ordered_json::parse(line, nullptr, false);
    if (parsed.is_discarded()) {
      throw MalformedLineError(path.string(), line_no, "invalid JSON");
    }
    fn(line_no, parsed);
  }
}

std::string require_string(const nlohmann::ordered_json& obj, const char* key,
                           const std::filesystem::path& path, std::size_t line_no) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw MalformedLineError(path.string(), line_no,
                             std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace absa
