// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <iostream>

#include "pgl3/acceptance.hpp"

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = pgl3::run_acceptance(pgl3::AcceptanceOptions{});
  std::cout << pgl3::format_report(results);
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << passed << "/" << results.size() << " criteria passed in " << secs << " s\n";
  return passed == results.size() && results.size() == 9 ? 0 : 1;
}
