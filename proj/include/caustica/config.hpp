#pragma once
//
// Flat run configuration: `key = value` lines, `#` starts a comment, no
// sections or nesting. Keys may use '-' or '_'.
//

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "caustica/error.hpp"

namespace caustica {

/// Parsed key/value pairs; a repeated key is an error.
struct RunConfig {
  std::map<std::string, std::string> values;
  std::string source;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const std::string& get(const std::string& key) const { return values.at(key); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string normalize_key(std::string k) {
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text, const std::string& source = "<config>") {
  RunConfig cfg;
  cfg.source = source;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = detail::normalize_key(detail::trim(line.substr(0, eq)));
    std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (!cfg.values.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

/// Throws ConfigError naming the first key not in `known`.
inline void require_known_keys(const RunConfig& cfg, const std::set<std::string>& known) {
  for (const auto& [k, v] : cfg.values)
    if (!known.count(k)) throw ConfigError(cfg.source + ": unknown key '" + k + "'");
}

}  // namespace caustica
