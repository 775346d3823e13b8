#include <cstdlib>
#include <cstdio>

#include "bolab/acceptance.hpp"

int main(int argc, char** argv) {
  const int only = (argc > 1) ? std::atoi(argv[1]) : 0;
  const int failures = bolab::acceptance_report(only);
  return failures == 0 ? 0 : 1;
}
