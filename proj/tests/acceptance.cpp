// Acceptance criteria 1 to 10: one PASS/FAIL/SKIP line each.
#include <iostream>

#include "lagstab/acceptance.hpp"

int main() {
  const auto results = lagstab::run_acceptance(lagstab::AcceptanceConfig{});
  for (const auto& r : results) {
    std::cout << lagstab::format_result_line(r) << "\n";
    for (const auto& line : r.info) std::cout << "     INFO " << line << "\n";
  }
  return lagstab::all_passed(results) ? 0 : 1;
}
