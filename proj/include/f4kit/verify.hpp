#pragma once

// Seeded property suites over every module, shared by `f4kit verify` and the
// acceptance run. Every check is an exact identity; a suite passes when no
// sample fails.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "f4kit/io.hpp"

namespace f4kit::verify {

struct CheckResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::string first_failure;  // description of the first failing sample

  bool passed() const { return failures == 0 && samples > 0; }
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// "fields", "qforms", "composition", "albert", "groups".
const std::vector<std::string>& suite_names();

/// Throws InvalidInput for an unknown suite name.
SuiteResult run_suite(std::string_view name, std::uint64_t seed = kDefaultSeed);

/// A single suite, or every suite for "all".
std::vector<SuiteResult> run_suites(std::string_view name, std::uint64_t seed = kDefaultSeed);

io::Json to_json(const CheckResult& c);
io::Json to_json(const SuiteResult& s);

}  // namespace f4kit::verify
