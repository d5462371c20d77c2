#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lagstab/lattice.hpp"

namespace lagstab {

struct AcceptanceConfig {
  /// Search-node cap per enumeration; 0 skips everything that enumerates.
  std::uint64_t budget = default_enumeration_budget();
  std::uint64_t seed = 0;
  long unipotent_samples = 1000;
};

enum class CriterionStatus { pass, fail, skipped };

std::string to_string(CriterionStatus s);

struct CriterionResult {
  int id = 0;
  std::string title;
  CriterionStatus status = CriterionStatus::pass;
  /// One-line summary of what was measured.
  std::string detail;
  /// Extra measurements that are reported but not asserted.
  std::vector<std::string> info;
};

/// Criteria 1 to 10 in order. Enumeration that runs over budget marks the
/// criterion skipped; any other error marks it failed.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config);

/// "PASS  3  title: detail".
std::string format_result_line(const CriterionResult& r);

/// True when no criterion failed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace lagstab
