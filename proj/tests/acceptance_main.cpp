// Runs every acceptance criterion and prints one line per criterion.
#include <cstdio>

#include "seqbell/acceptance.hpp"

int main() {
  const auto results = seqbell::run_acceptance();
  int failed = 0;
  for (const auto& c : results) {
    std::printf("%s %2d %s\n", c.pass() ? "PASS" : "FAIL", c.id, c.name.c_str());
    for (const auto& k : c.checks) {
      if (!k.pass) {
        std::printf("       %s: measured %.17g %s %.17g (tol %g)\n", k.label.c_str(), k.measured,
                    seqbell::to_string(k.relation), k.expected, k.tol);
      }
    }
    if (!c.pass()) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
