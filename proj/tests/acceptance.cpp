// One line per acceptance criterion; non-zero exit when any fails.
#include "favsched/verify.hpp"

#include <iostream>

int main() {
  const favsched::VerifyOptions options;
  bool ok = true;
  for (int id = 1; id <= favsched::kCriterionCount; ++id) {
    const favsched::CriterionResult result = favsched::run_criterion(id, options);
    std::cout << favsched::format_result(result) << std::endl;
    ok = ok && result.passed;
  }
  return ok ? 0 : 1;
}
