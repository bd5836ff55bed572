#include <iostream>

#include "hitchinlab/acceptance.hpp"
#include "hitchinlab/parallel.hpp"

int main() {
  auto criteria = hitchinlab::run_acceptance(hitchinlab::resolve_workers(0));
  bool ok = true;
  for (const auto& c : criteria) {
    std::cout << hitchinlab::summary_line(c) << "\n";
    ok = ok && c.pass();
  }
  return ok ? 0 : 1;
}
