#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dsfa {

/// One `key=value` line of a flat config file. Keys are normalized to the
/// long-flag spelling: lower case, '_' replaced by '-'.
struct ConfigEntry {
  std::string key;
  std::string value;
  long line = 0;
};

/// Parses `key=value` lines; blank lines and `#` comments (whole-line or
/// trailing) are ignored. Duplicate keys: the last one wins.
std::vector<ConfigEntry> parse_config(std::string_view text, const std::string& source = "<memory>");
std::vector<ConfigEntry> read_config(const std::string& path);

}  // namespace dsfa
