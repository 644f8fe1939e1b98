// One line per acceptance criterion; exit status 0 iff all pass.
#include <cstdio>

#include "vpt/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& r : vpt::run_acceptance()) {
    std::puts(vpt::format_result(r).c_str());
    failed += !r.passed;
  }
  std::printf("%d of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
