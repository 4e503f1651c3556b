#pragma once

// Self-check suite: every invariant of the library evaluated at fixed seeds.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cyclat {

struct VerifyOptions {
  bool quick = false;          // skip enumeration suites with n > 8
  bool tamper = false;         // negative control: flip the sign of P(1)u in the norm expansion check
  std::uint64_t seed = 20240229;
};

struct PropertyOutcome {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;  // counterexample on failure, reason when skipped
};

struct VerifySummary {
  std::vector<PropertyOutcome> outcomes;

  bool all_passed() const;
  const PropertyOutcome* first_failure() const;
};

/// Runs every property; one line per property goes to `log` when given.
VerifySummary run_verify(const VerifyOptions& options, std::ostream* log = nullptr);

}  // namespace cyclat
