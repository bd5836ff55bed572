#pragma once

#include <cstddef>
#include <functional>

namespace hitchinlab {

int resolve_workers(int requested);

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace hitchinlab
