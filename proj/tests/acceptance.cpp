// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "mixsum/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (int id : ids.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10} : ids) {
    const mixsum::CriterionResult r = mixsum::run_criterion(id);
    std::printf("%s\n", mixsum::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>((ids.empty() ? 10 : ids.size()) - failed),
              ids.empty() ? std::size_t{10} : ids.size());
  return failed == 0 ? 0 : 1;
}
