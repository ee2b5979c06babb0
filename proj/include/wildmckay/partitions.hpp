#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

#include "wildmckay/exactq.hpp"

namespace wmk {

using Partition = std::vector<int>;  // parts in non-increasing order

// Memoized table of P(n, k), the number of partitions of n into exactly k parts.
// Grows on demand; lookups are thread-safe.
class PartitionTable {
public:
    explicit PartitionTable(int max_n = 0);

    Integer count(int n, int k);
    int max_n() const;

private:
    void extend(int max_n);

    mutable std::mutex mutex_;
    std::vector<std::vector<Integer>> rows_;  // rows_[n][k], 0 <= k <= n
};

// P(n, k); zero when k > n or exactly one of n, k is zero.
Integer partition_count(int n, int k);

// Partitions of n into exactly k parts in reverse lexicographic order
// (largest first part first). k < 0 means any number of parts.
std::vector<Partition> enumerate_partitions(int n, int k = -1);

// sum_{i=0}^{n-1} P(n, n-i) q^{2n-i}: point count of the Hilbert scheme of
// n points on the affine plane.
QExpr hilb_point_count(int n);

} // namespace wmk
