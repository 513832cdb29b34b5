// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <iostream>

#include "learnaug/harness.hpp"

int main() {
  namespace h = learnaug::harness;
  const auto start = std::chrono::steady_clock::now();
  const auto checks = h::run_verify("all", 0);
  int failed = 0;
  int index = 1;
  for (const auto& check : checks) {
    std::cout << "[" << index++ << "] ";
    h::print_check(check, std::cout);
    if (!check.passed) ++failed;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << checks.size() - failed << "/" << checks.size() << " criteria passed in " << seconds
            << " s\n";
  return failed == 0 ? 0 : 1;
}
