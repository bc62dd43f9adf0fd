#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace efl {

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string zeros_path;
  std::string zeros_url;
  std::filesystem::path cache_dir;
  int working_digits = 15;
  int trivial_cutoff = 1000;
  int zero_count = 0;  // 0 uses every loaded zero
  OutputFormat output_format = OutputFormat::json;
  std::uint64_t seed = 20231107;
  // key -> "default" | "file" | "env" | "flag"
  std::map<std::string, std::string> origin;
};

using KeyValues = std::map<std::string, std::string>;

inline constexpr std::string_view kConfigKeys[] = {"zeros_path",  "zeros_url",     "cache_dir", "working_digits",
                                                   "trivial_cutoff", "zero_count", "output_format", "seed"};

// Flat `key = value` lines; '#' starts a comment; values may be quoted.
KeyValues parse_config_text(std::string_view text);
// EFL_<KEY> variables for every RunConfig key.
KeyValues config_from_env(const KeyValues& env);
// defaults < file < env < flags
RunConfig resolve_config(const KeyValues& file, const KeyValues& env, const KeyValues& flags,
                         const std::filesystem::path& default_cache);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitComputation = 3;

// Entry point behind the `efl` binary. args excludes the program name.
int run(const std::vector<std::string>& args, const KeyValues& env, std::ostream& out, std::ostream& err);

KeyValues environment_snapshot();

}  // namespace efl
