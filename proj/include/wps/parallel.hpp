#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace wps {

void set_max_threads(int n);
int max_threads();

// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
// write results into per-index slots so the outcome does not depend on the
// worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Fixed-shape binary tree reduction.
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace wps
