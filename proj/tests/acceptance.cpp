#include "divkummer/verification.hpp"

#include <cstdio>

int main() {
  auto results = divkum::run_acceptance();
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] criterion %2d: %s (%.0f ms)%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.ms, r.detail.empty() ? "" : " -- ", r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
