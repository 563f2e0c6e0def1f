#pragma once

#include <string>
#include <vector>

namespace r1c {

/// Pass/fail result with human-readable failure records. Checks report
/// through this type instead of throwing; failures carry the offending
/// location and the invariant that broke.
struct VerificationReport {
  struct Failure {
    std::string where;      // e.g. tree path "root.L.R" or sample index
    std::string invariant;  // which condition broke
    double value = 0.0;     // magnitude of the violation
  };

  bool passed = true;
  std::vector<Failure> failures;

  void fail(std::string where, std::string invariant, double value) {
    passed = false;
    failures.push_back({std::move(where), std::move(invariant), value});
  }
  std::string summary() const;
};

}  // namespace r1c
