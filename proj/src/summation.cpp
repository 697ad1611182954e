#include "summation.hpp"

#include <cstring>
#include <vector>

namespace mdclt {

double pairwise_sum(const double* x, std::int64_t count, std::int64_t stride) {
    if (count <= 0) return 0.0;
    if (count <= 16) {
        double acc = 0.0;
        for (std::int64_t i = 0; i < count; ++i) acc += x[i * stride];
        return acc;
    }
    const std::int64_t half = count / 2;
    return pairwise_sum(x, half, stride) + pairwise_sum(x + half * stride, count - half, stride);
}

void build_prefix(const double* x, std::int64_t n, int p, double* prefix) {
    // Fenwick-style block sums: node i covers (i - lowbit(i), i], each node is
    // the sum of two half-size nodes, so block depth is O(log n).
    std::vector<double> node(static_cast<std::size_t>(n + 1) * p);
    if (n > 0) std::memcpy(node.data() + p, x, static_cast<std::size_t>(n) * p * sizeof(double));
    for (std::int64_t i = 1; i <= n; ++i) {
        const std::int64_t j = i + (i & -i);
        if (j <= n) {
            double* dst = node.data() + j * p;
            const double* src = node.data() + i * p;
            for (int k = 0; k < p; ++k) dst[k] += src[k];
        }
    }
    for (int k = 0; k < p; ++k) prefix[k] = 0.0;
    for (std::int64_t i = 1; i <= n; ++i) {
        const std::int64_t parent = i & (i - 1);
        const double* base = prefix + parent * p;
        const double* blk = node.data() + i * p;
        double* dst = prefix + i * p;
        for (int k = 0; k < p; ++k) dst[k] = base[k] + blk[k];
    }
}

}  // namespace mdclt
