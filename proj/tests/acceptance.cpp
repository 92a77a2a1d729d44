#include <cstdio>

#include "acceptance.hpp"

int main() {
  const auto results = anharmonic::cli::run_acceptance({});
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s [%d] %s (%.1fs): %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    failed += r.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
