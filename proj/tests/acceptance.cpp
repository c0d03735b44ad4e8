#include <cstdio>

#include "emcoh/selftest.hpp"

int main() {
  bool all = true;
  emcoh::run_selftest([&](const emcoh::CriterionResult& r) {
    std::printf("criterion %2d: %s  %s  [%.2fs, limit %.0fs]  %s\n", r.id, r.pass() ? "PASS" : "FAIL", r.title.c_str(),
                r.seconds, r.limit, r.detail.c_str());
    std::fflush(stdout);
    all = all && r.pass();
  });
  return all ? 0 : 1;
}
