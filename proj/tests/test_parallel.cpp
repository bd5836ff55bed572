#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "hitchinlab/parallel.hpp"

using namespace hitchinlab;

TEST_SUITE("parallel") {
  TEST_CASE("every index visited once") {
    for (int w : {1, 3, 8}) {
      std::vector<int> hits(1000, 0);
      parallel_for(hits.size(), w, [&](size_t k) { hits[k] += 1; });
      CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 1000);
      CHECK(*std::min_element(hits.begin(), hits.end()) == 1);
    }
  }

  TEST_CASE("explicit request wins over the environment") {
    setenv("HITCHINLAB_WORKERS", "5", 1);
    CHECK(resolve_workers(2) == 2);
    CHECK(resolve_workers(0) == 5);
    unsetenv("HITCHINLAB_WORKERS");
    CHECK(resolve_workers(0) >= 1);
  }
}
