// One line per acceptance criterion; nonzero exit if any fails.

#include <iostream>

#include "varinterp/acceptance.hpp"

int main() {
  varinterp::AcceptanceSuite suite;
  int failed = 0;
  for (const auto& r : suite.run_all()) {
    std::cout << varinterp::format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria pass") << std::endl;
  return failed ? 1 : 0;
}
