#include "wildmckay/massformulas.hpp"

#include "wildmckay/partitions.hpp"

namespace wmk {

namespace {

void require_positive(int value, const char* what) {
    if (value < 1) {
        throw DomainError(std::string(what) + " must be at least 1");
    }
}

} // namespace

QExpr serre_mass(int n, int f) {
    require_positive(n, "n");
    require_positive(f, "f");
    return QExpr::q_power(Rational(f * (1 - n)));
}

QExpr bhargava_mass(int n) {
    require_positive(n, "n");
    QExpr total;
    for (int i = 0; i < n; ++i) {
        total += QExpr::monomial(Rational(partition_count(n, n - i)), Rational(-i));
    }
    return total;
}

TruncatedSeries inner_series(const RamifiedMasses& masses, int n_max) {
    require_positive(n_max, "n_max");
    TruncatedSeries s(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        QFrac coeff(0);
        for (int f = 1; f <= n; ++f) {
            if (n % f != 0) continue;
            auto it = masses.find({f, n / f});
            if (it == masses.end()) {
                throw DomainError("missing N(K_" + std::to_string(f) + ", " + std::to_string(n / f) + ")");
            }
            coeff += it->second / QFrac(static_cast<long>(f));
        }
        s[static_cast<std::size_t>(n)] = coeff;
    }
    return s;
}

TruncatedSeries mass_series_from(const RamifiedMasses& masses, int n_max) {
    return ts_exp(inner_series(masses, n_max));
}

TruncatedSeries mass_series_via_exp(int n_max) {
    require_positive(n_max, "n_max");
    RamifiedMasses serre;
    for (int n = 1; n <= n_max; ++n) {
        for (int f = 1; f <= n; ++f) {
            if (n % f == 0) serre[{f, n / f}] = QFrac(serre_mass(n / f, f));
        }
    }
    return mass_series_from(serre, n_max);
}

TruncatedSeries bhargava_series(int n_max) {
    require_positive(n_max, "n_max");
    TruncatedSeries s = TruncatedSeries::one(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        s[static_cast<std::size_t>(n)] = QFrac(bhargava_mass(n));
    }
    return s;
}

RamifiedMasses recover_N_from_M(const TruncatedSeries& m_series, RecoveryMode mode) {
    const TruncatedSeries s = ts_log(m_series);
    const int n_max = static_cast<int>(s.truncation());
    RamifiedMasses out;
    for (int n = 1; n <= n_max; ++n) {
        // N(K_f, n/f) for f > 1 have smaller m = n/f, so they are known here.
        QFrac rest(0);
        for (int f = 2; f <= n; ++f) {
            if (n % f != 0) continue;
            const int m = n / f;
            QFrac value = mode == RecoveryMode::base_change
                              ? out.at({1, m}).substitute_power(Rational(f))
                              : QFrac(serre_mass(m, f));
            out[{f, m}] = value;
            rest += value / QFrac(static_cast<long>(f));
        }
        out[{1, n}] = s[static_cast<std::size_t>(n)] - rest;
    }
    return out;
}

} // namespace wmk
