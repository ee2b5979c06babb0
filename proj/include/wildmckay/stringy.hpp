#pragma once

// Stringy point counts of SNC log pairs from combinatorial stratum data.
//
// Caller obligations that cannot be checked from the data alone: the divisor
// is simple normal crossing, each horizontal component has irreducible
// completion, and stratum counts were taken on the O_K-smooth locus.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wildmckay/exactq.hpp"

namespace wmk {

using StringyValue = ExtendedValue;

// Sorted 1-based indices into the horizontal divisor list.
using DivisorSubset = std::vector<int>;

struct VerticalEntry {
    Rational a;  // 0 for points on no vertical divisor
    std::map<DivisorSubset, std::uint64_t> strata;
};

struct SncLogPairData {
    std::vector<Rational> horizontal;  // c_j
    std::vector<VerticalEntry> vertical;
    std::optional<std::uint64_t> total_points;

    // Throws MalformedInput on bad subset keys or inconsistent totals.
    void validate() const;
};

// q^a * prod_j (q - 1) / (q^{1 - c_j} - 1), Infinite if any c_j >= 1.
StringyValue stringy_point_contribution(const Rational& a, const std::vector<Rational>& cs);

// Sum over vertical entries and strata; empty strata never force Infinite.
StringyValue stringy_count_snc(const SncLogPairData& data);

} // namespace wmk
