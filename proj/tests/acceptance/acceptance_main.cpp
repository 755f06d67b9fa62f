// Acceptance gate: runs the numbered release criteria and prints one
// PASS/FAIL line per criterion. With no argument every criterion runs;
// with a single numeric argument only that criterion runs. Exit code is
// zero only when everything that ran passed.

#include <cstdio>
#include <cstdlib>

#include "acceptance/criteria.hpp"

int main(int argc, char** argv) {
  if (argc > 2) {
    std::fprintf(stderr, "usage: %s [criterion 1..%d]\n", argv[0],
                 acceptance::num_criteria());
    return 2;
  }
  if (argc == 2) {
    char* end = nullptr;
    long n = std::strtol(argv[1], &end, 10);
    if (end == argv[1] || *end != '\0' || n < 1 || n > acceptance::num_criteria()) {
      std::fprintf(stderr, "usage: %s [criterion 1..%d]\n", argv[0],
                   acceptance::num_criteria());
      return 2;
    }
    return acceptance::run_criterion(static_cast<int>(n)) ? 0 : 1;
  }
  bool all_ok = true;
  for (int n = 1; n <= acceptance::num_criteria(); ++n)
    all_ok = acceptance::run_criterion(n) && all_ok;
  return all_ok ? 0 : 1;
}
