#pragma once

#include <cstddef>
#include <vector>

#include "wildmckay/exactq.hpp"

namespace wmk {

inline constexpr std::size_t kDefaultTruncation = 12;

/// Power series in x with QFrac coefficients, truncated after x^N.
/// Binary operations truncate at the smaller of the two degrees.
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t truncation = kDefaultTruncation);
    explicit TruncatedSeries(std::vector<QFrac> coefficients);

    static TruncatedSeries one(std::size_t truncation = kDefaultTruncation);
    static TruncatedSeries x(std::size_t truncation = kDefaultTruncation);

    std::size_t truncation() const { return coeffs_.size() - 1; }
    const QFrac& operator[](std::size_t i) const { return coeffs_.at(i); }
    QFrac& operator[](std::size_t i) { return coeffs_.at(i); }
    const std::vector<QFrac>& coefficients() const { return coeffs_; }

    TruncatedSeries truncated(std::size_t degree) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<QFrac> coeffs_;
};

TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b);

// Throws DomainError unless the constant term is 0.
TruncatedSeries ts_exp(const TruncatedSeries& s);

// Throws DomainError unless the constant term is 1.
TruncatedSeries ts_log(const TruncatedSeries& s);

} // namespace wmk
