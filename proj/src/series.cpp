#include "wildmckay/series.hpp"

#include <algorithm>

namespace wmk {

TruncatedSeries::TruncatedSeries(std::size_t truncation) : coeffs_(truncation + 1, QFrac(0)) {}

TruncatedSeries::TruncatedSeries(std::vector<QFrac> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) {
        coeffs_.emplace_back(0);
    }
}

TruncatedSeries TruncatedSeries::one(std::size_t truncation) {
    TruncatedSeries s(truncation);
    s.coeffs_[0] = QFrac(1);
    return s;
}

TruncatedSeries TruncatedSeries::x(std::size_t truncation) {
    TruncatedSeries s(truncation);
    if (truncation >= 1) {
        s.coeffs_[1] = QFrac(1);
    }
    return s;
}

TruncatedSeries TruncatedSeries::truncated(std::size_t degree) const {
    std::vector<QFrac> c(coeffs_.begin(),
                         coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(degree, truncation()) + 1));
    return TruncatedSeries(std::move(c));
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.truncation(), b.truncation());
    TruncatedSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
        out.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    }
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.truncation(), b.truncation());
    TruncatedSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
        out.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    }
    return out;
}

TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.truncation(), b.truncation());
    TruncatedSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// E = exp(S) satisfies E' = S'E, so n*E_n = sum_{k=1}^{n} k*S_k*E_{n-k}.
TruncatedSeries ts_exp(const TruncatedSeries& s) {
    if (!s[0].is_zero()) {
        throw DomainError("ts_exp: constant term must be zero");
    }
    const std::size_t n = s.truncation();
    TruncatedSeries e(n);
    e[0] = QFrac(1);
    for (std::size_t m = 1; m <= n; ++m) {
        QFrac acc(0);
        for (std::size_t k = 1; k <= m; ++k) {
            if (s[k].is_zero() || e[m - k].is_zero()) continue;
            acc += QFrac(static_cast<long>(k)) * s[k] * e[m - k];
        }
        e[m] = acc / QFrac(static_cast<long>(m));
    }
    return e;
}

// L = log(F) satisfies F' = L'F with F_0 = 1, so
// L_n = F_n - (1/n) * sum_{k=1}^{n-1} k*L_k*F_{n-k}.
TruncatedSeries ts_log(const TruncatedSeries& s) {
    if (!(s[0] == QFrac(1))) {
        throw DomainError("ts_log: constant term must be one");
    }
    const std::size_t n = s.truncation();
    TruncatedSeries l(n);
    for (std::size_t m = 1; m <= n; ++m) {
        QFrac acc(0);
        for (std::size_t k = 1; k < m; ++k) {
            if (l[k].is_zero() || s[m - k].is_zero()) continue;
            acc += QFrac(static_cast<long>(k)) * l[k] * s[m - k];
        }
        l[m] = s[m] - acc / QFrac(static_cast<long>(m));
    }
    return l;
}

} // namespace wmk
