#include "dsfa/config_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "dsfa/error.hpp"

namespace dsfa {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string normalize_key(std::string_view key) {
  std::string out(key);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c == '_') c = '-';
  }
  while (!out.empty() && out.front() == '-') out.erase(out.begin());
  return out;
}

}  // namespace

std::vector<ConfigEntry> parse_config(std::string_view text, const std::string& source) {
  std::vector<ConfigEntry> entries;
  long line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected key=value", line_no);
    const std::string key = normalize_key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError(source + ":" + std::to_string(line_no) + ": empty key", line_no);
    std::string value(trim(line.substr(eq + 1)));

    auto it = std::find_if(entries.begin(), entries.end(), [&](const ConfigEntry& e) { return e.key == key; });
    if (it != entries.end()) {
      it->value = std::move(value);
      it->line = line_no;
    } else {
      entries.push_back({key, std::move(value), line_no});
    }
  }
  return entries;
}

std::vector<ConfigEntry> read_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace dsfa
