#pragma once

#include "r1c/serialization.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace r1c::suites {

struct SuiteOptions {
  std::uint64_t seed = 0;
  bool quick = false;  // reduced sample counts for development loops
  int threads = 0;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;  // one-line summary; first few failures when red
  double seconds = 0.0;
  json data;
};

// One function per verification suite. Full-size runs execute the stated
// sample counts and tolerances; quick runs shrink counts only (never
// tolerances).
SuiteResult matrix_core_invariants(const SuiteOptions&);
SuiteResult zoo_metadata(const SuiteOptions&);
SuiteResult decomposition_identities(const SuiteOptions&);
SuiteResult lb_identity(const SuiteOptions&);
SuiteResult h_grid(const SuiteOptions&);
SuiteResult lemma_hom(const SuiteOptions&);
SuiteResult diag_split(const SuiteOptions&);
SuiteResult rank_one_scans(const SuiteOptions&);
SuiteResult zigzag(const SuiteOptions&);
SuiteResult homogeneity_bound(const SuiteOptions&);
SuiteResult euler_relation(const SuiteOptions&);
SuiteResult null_lagrangian(const SuiteOptions&);
SuiteResult minor_dependence(const SuiteOptions&);
SuiteResult jensen(const SuiteOptions&);
SuiteResult choquet_1d(const SuiteOptions&);

std::vector<SuiteResult> run_all(const SuiteOptions&);

}  // namespace r1c::suites
