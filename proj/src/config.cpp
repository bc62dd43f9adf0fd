#include <cstdlib>
#include <string>

#include <fmt/format.h>

#include "efl/cli.hpp"
#include "efl/errors.hpp"

extern char** environ;

namespace efl {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool known_key(std::string_view key) {
  for (auto k : kConfigKeys) {
    if (k == key) return true;
  }
  return false;
}

int parse_int(const std::string& key, const std::string& value, int lo) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || v < lo || v > 1'000'000'000L) {
    fail(ErrorKind::InvalidArgument, fmt::format("{} = '{}' is not an integer >= {}", key, value, lo));
  }
  return static_cast<int>(v);
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value, const char* origin) {
  if (key == "zeros_path") {
    cfg.zeros_path = value;
  } else if (key == "zeros_url") {
    cfg.zeros_url = value;
  } else if (key == "cache_dir") {
    cfg.cache_dir = value;
  } else if (key == "working_digits") {
    cfg.working_digits = parse_int(key, value, 15);
  } else if (key == "trivial_cutoff") {
    cfg.trivial_cutoff = parse_int(key, value, 1);
  } else if (key == "zero_count") {
    cfg.zero_count = parse_int(key, value, 0);
  } else if (key == "output_format") {
    if (value == "json") {
      cfg.output_format = OutputFormat::json;
    } else if (value == "csv") {
      cfg.output_format = OutputFormat::csv;
    } else {
      fail(ErrorKind::InvalidArgument, fmt::format("output_format '{}' must be json or csv", value));
    }
  } else if (key == "seed") {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, fmt::format("seed '{}' is not an unsigned integer", value));
    }
  } else {
    fail(ErrorKind::InvalidArgument, fmt::format("unknown config key '{}'", key));
  }
  cfg.origin[key] = origin;
}

}  // namespace

KeyValues parse_config_text(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') continue;  // table headers carry no meaning for flat keys
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(ErrorKind::ParseError, fmt::format("config line {}: expected key = value", line_no));
    const std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (!known_key(key)) fail(ErrorKind::ParseError, fmt::format("config line {}: unknown key '{}'", line_no, key));
    kv[key] = std::string(value);
    if (end == text.size()) break;
  }
  return kv;
}

KeyValues config_from_env(const KeyValues& env) {
  KeyValues kv;
  for (auto key : kConfigKeys) {
    std::string name = "EFL_";
    for (char c : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (auto it = env.find(name); it != env.end() && !it->second.empty()) kv[std::string(key)] = it->second;
  }
  return kv;
}

RunConfig resolve_config(const KeyValues& file, const KeyValues& env, const KeyValues& flags,
                         const std::filesystem::path& default_cache) {
  RunConfig cfg;
  cfg.cache_dir = default_cache;
  for (auto key : kConfigKeys) cfg.origin[std::string(key)] = "default";
  for (const auto& [k, v] : file) apply(cfg, k, v, "file");
  for (const auto& [k, v] : env) apply(cfg, k, v, "env");
  for (const auto& [k, v] : flags) apply(cfg, k, v, "flag");
  return cfg;
}

KeyValues environment_snapshot() {
  KeyValues env;
  for (char** e = environ; e && *e; ++e) {
    std::string_view entry(*e);
    const auto eq = entry.find('=');
    if (eq == std::string_view::npos) continue;
    env.emplace(std::string(entry.substr(0, eq)), std::string(entry.substr(eq + 1)));
  }
  return env;
}

}  // namespace efl
