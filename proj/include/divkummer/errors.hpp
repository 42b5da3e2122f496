#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace divkum {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (bad schema, failed invariant on a
// user-supplied object). CLI exit code 2.
struct input_error : error {
  using error::error;
};

// A refusal backed by the mathematics rather than by the input syntax
// (pushout along a non-pure map, exact sequence of a non-normal extension,
// truncation window too small, enumeration over an infinite set).
// CLI exit code 1.
struct math_refusal : error {
  using error::error;
};

struct not_pure_error : math_refusal {
  not_pure_error() : math_refusal("NotPure: map is not pure; pushout need not exist") {}
};

struct not_normal_error : math_refusal {
  not_normal_error() : math_refusal("NotNormal: extension is not normal at the given level") {}
};

struct level_too_small_error : math_refusal {
  explicit level_too_small_error(const std::string& minimal)
      : math_refusal("LevelTooSmall: minimal sufficient level is " + minimal),
        minimal_level(minimal) {}
  std::string minimal_level;
};

struct infinite_search_error : math_refusal {
  explicit infinite_search_error(const std::string& what)
      : math_refusal("InfiniteSearch: " + what) {}
};

struct size_limit_error : math_refusal {
  explicit size_limit_error(const std::string& what)
      : math_refusal("SizeLimit: " + what) {}
};

struct hypothesis_failure_error : math_refusal {
  explicit hypothesis_failure_error(const std::string& what, std::vector<int> failed = {})
      : math_refusal("HypothesisFailure: " + what), failed_conditions(std::move(failed)) {}
  std::vector<int> failed_conditions;
};

// Enumeration budget shared by all brute-force searches.  Controlled by the
// DIVKUMMER_MAX_ENUM environment variable (default 10^6).
std::uint64_t enum_budget();

inline void check_budget(std::uint64_t work, const char* where) {
  if (work > enum_budget()) throw size_limit_error(std::string(where) + " exceeds enumeration budget");
}

}  // namespace divkum
