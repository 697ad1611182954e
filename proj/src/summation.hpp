#pragma once

#include <cstdint>

namespace mdclt {

// Pairwise (tree) summation of count values spaced `stride` apart.
double pairwise_sum(const double* x, std::int64_t count, std::int64_t stride = 1);

// Builds the running prefix table P_0..P_n (P_0 = 0, vectors of dimension p,
// x laid out time-major: x[(i-1)*p + k]) out of binary-indexed block sums, so
// every entry is a tree combination of O(log n) blocks rather than a long
// sequential chain.
void build_prefix(const double* x, std::int64_t n, int p, double* prefix /* (n+1)*p */);

}  // namespace mdclt
