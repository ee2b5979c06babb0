#include "wildmckay/partitions.hpp"

#include <functional>

namespace wmk {

PartitionTable::PartitionTable(int max_n) {
    rows_.push_back({Integer(1)});
    extend(max_n);
}

int PartitionTable::max_n() const {
    std::lock_guard lock(mutex_);
    return static_cast<int>(rows_.size()) - 1;
}

void PartitionTable::extend(int max_n) {
    for (int n = static_cast<int>(rows_.size()); n <= max_n; ++n) {
        std::vector<Integer> row(static_cast<std::size_t>(n) + 1, Integer(0));
        for (int k = 1; k <= n; ++k) {
            // Either some part equals 1 (drop it), or every part is >= 2 (subtract 1 from each).
            Integer value = rows_[n - 1][k - 1];
            if (n - k >= k) {
                value += rows_[n - k][k];
            }
            row[k] = value;
        }
        rows_.push_back(std::move(row));
    }
}

Integer PartitionTable::count(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    std::lock_guard lock(mutex_);
    extend(n);
    return rows_[n][k];
}

Integer partition_count(int n, int k) {
    static PartitionTable table;
    return table.count(n, k);
}

std::vector<Partition> enumerate_partitions(int n, int k) {
    std::vector<Partition> out;
    if (n < 0) {
        return out;
    }
    Partition current;
    std::function<void(int, int)> recurse = [&](int remaining, int max_part) {
        if (remaining == 0) {
            if (k < 0 || static_cast<int>(current.size()) == k) {
                out.push_back(current);
            }
            return;
        }
        if (k >= 0 && static_cast<int>(current.size()) >= k) {
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            current.push_back(part);
            recurse(remaining - part, part);
            current.pop_back();
        }
    };
    recurse(n, n);
    return out;
}

QExpr hilb_point_count(int n) {
    if (n < 1) {
        throw DomainError("hilb_point_count: n must be at least 1");
    }
    QExpr total;
    for (int i = 0; i < n; ++i) {
        total += QExpr::monomial(Rational(partition_count(n, n - i)), Rational(2 * n - i));
    }
    return total;
}

} // namespace wmk
