#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ilab/group_spec.hpp"
#include "ilab/report.hpp"

namespace ilab {

class SuiteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::string suite;
  /// A catalog name or a group spec; empty runs the suite's default contexts.
  std::string group;
  /// Kernel words or "full"; empty takes the catalog default ("full" for raw specs).
  std::string kernel;
  std::optional<unsigned> characteristic;
  std::size_t cap_order = default_order_cap();
  std::size_t cap_series = 64;
  std::uint64_t cap_enum = 531441;
  std::size_t cap_rational = 64;
  std::uint64_t seed = 0;
  std::size_t samples = 200;       // random pairs per context for the axioms
  std::size_t unit_samples = 500;  // sampled symmetric units for the containment checks
  std::size_t witness_budget = 20000;
  unsigned jobs = 1;
  /// expected.json from the oracle; empty skips the fixture comparisons.
  std::string fixtures;
};

const std::vector<std::string>& suite_names();
/// Catalog names a suite runs over when no group is given.
const std::vector<std::string>& default_contexts(const std::string& suite);

/// Runs every check of the suite on every context. Contexts run on a pool of
/// `jobs` threads; the report is ordered by case id.
Report run_suite(const SuiteConfig& config);

}  // namespace ilab
