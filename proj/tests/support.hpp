#pragma once

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>

#include <unistd.h>

#include "efl/errors.hpp"
#include "efl/zeros.hpp"

namespace efl::test {

inline std::optional<ErrorKind> kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

// The generated 1e5-zero table from the ctest fixture, or find_zeros(500) when absent.
inline const ZeroSet& table_zeros() {
  static const ZeroSet zs = [] {
    const char* p = std::getenv("EFL_TEST_ZEROS");
    if (p && std::filesystem::exists(p)) return load_zeros(p);
    return generate_zeros(100000);
  }();
  return zs;
}

inline const ZeroSet& computed_zeros() {
  static const ZeroSet zs = find_zeros(500);
  return zs;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20231107);
  return gen;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("efl_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace efl::test
