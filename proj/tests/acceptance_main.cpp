#include <cstdio>
#include <cstdlib>
#include <string>

#include "cskern/acceptance.hpp"

// Usage: cskern_acceptance [group]
int main(int argc, char** argv) {
  cskern::AcceptanceOptions options;
  if (argc > 1) options.only = argv[1];
  int failures = 0;
  for (const auto& r : cskern::run_acceptance(options)) {
    std::printf("%s\n", cskern::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
