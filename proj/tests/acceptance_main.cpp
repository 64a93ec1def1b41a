#include <cstdio>
#include <exception>

#include "hankel/acceptance.hpp"

int main() {
  namespace acc = hankel::acceptance;
  int failures = 0;
  for (int id = 1; id <= acc::criterion_count; ++id) {
    acc::CriterionResult r;
    try {
      r = acc::run_criterion(id);
    } catch (const std::exception& e) {
      r.id = id;
      r.detail = e.what();
    }
    if (!r.passed) {
      ++failures;
    }
    std::printf("[%s] criterion %2d  %-44s worst=%.3g tol=%.3g time=%.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.worst, r.threshold, r.seconds, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", acc::criterion_count - failures, acc::criterion_count);
  return failures == 0 ? 0 : 1;
}
