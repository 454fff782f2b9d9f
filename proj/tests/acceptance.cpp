// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <iostream>

#include "spanlab/verify.hpp"

int main() {
  spanlab::VerifyOptions opt;
  int failed = 0;
  spanlab::run_verification(opt, [&](const spanlab::CriterionResult& r) {
    failed += !r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " | "
              << r.detail << std::endl;
  });
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
