#pragma once

// Test-only reference computations, kept independent of the library's
// algorithms: naive point evaluation, lift-tree counting, and direct
// substitution of sample values of q.

#include <cstdint>
#include <functional>
#include <vector>

#include "wildmckay/exactq.hpp"
#include "wildmckay/padic.hpp"

namespace wmk::oracle {

inline std::int64_t eval_poly_mod(const IntPolynomial& poly, const std::vector<std::int64_t>& x, std::int64_t m) {
    __int128 total = 0;
    for (const Monomial& mono : poly) {
        __int128 term = mono.coeff % m;
        for (std::size_t v = 0; v < x.size(); ++v) {
            for (int k = 0; k < mono.exponents[v]; ++k) term = term * x[v] % m;
        }
        total = (total + term) % m;
    }
    return static_cast<std::int64_t>((total % m + m) % m);
}

inline bool on_system(const PolySystem& sys, const std::vector<std::int64_t>& x, std::int64_t m) {
    for (const auto& poly : sys.polys) {
        if (eval_poly_mod(poly, x, m) != 0) return false;
    }
    return true;
}

// Every point of (Z/p^m)^n, evaluated one at a time.
inline std::uint64_t naive_count(const PolySystem& sys, int m) {
    std::int64_t mod = 1;
    for (int i = 0; i < m; ++i) mod *= static_cast<std::int64_t>(sys.p);
    std::vector<std::int64_t> x(static_cast<std::size_t>(sys.num_vars), 0);
    std::uint64_t count = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == x.size()) {
            count += on_system(sys, x, mod) ? 1 : 0;
            return;
        }
        for (std::int64_t a = 0; a < mod; ++a) {
            x[v] = a;
            rec(v + 1);
        }
    };
    rec(0);
    return count;
}

// Solutions mod p^{k+1} are exactly the lifts x + p^k delta of solutions mod p^k
// that still vanish, so counting through the lift tree is exact for any system.
inline std::vector<std::uint64_t> lift_tree_counts(const PolySystem& sys, int m_max) {
    const auto p = static_cast<std::int64_t>(sys.p);
    const auto n = static_cast<std::size_t>(sys.num_vars);
    std::vector<std::vector<std::int64_t>> level;
    std::vector<std::int64_t> x(n, 0);
    std::function<void(std::size_t)> base = [&](std::size_t v) {
        if (v == n) {
            if (on_system(sys, x, p)) level.push_back(x);
            return;
        }
        for (std::int64_t a = 0; a < p; ++a) {
            x[v] = a;
            base(v + 1);
        }
    };
    base(0);
    std::vector<std::uint64_t> counts{level.size()};
    std::int64_t pk = p;
    for (int k = 1; k < m_max; ++k) {
        std::vector<std::vector<std::int64_t>> next;
        const std::int64_t mod = pk * p;
        for (const auto& sol : level) {
            std::vector<std::int64_t> delta(n, 0);
            std::function<void(std::size_t)> lift = [&](std::size_t v) {
                if (v == n) {
                    std::vector<std::int64_t> y(n);
                    for (std::size_t i = 0; i < n; ++i) y[i] = sol[i] + pk * delta[i];
                    if (on_system(sys, y, mod)) next.push_back(std::move(y));
                    return;
                }
                for (std::int64_t a = 0; a < p; ++a) {
                    delta[v] = a;
                    lift(v + 1);
                }
            };
            lift(0);
        }
        level = std::move(next);
        counts.push_back(level.size());
        pk = mod;
    }
    return counts;
}

// Value of num/den at q = t^r for rational t, by direct substitution.
inline Rational eval_at_root(const QFrac& f, const Rational& t, long r) {
    auto eval = [&](const QExpr& e) {
        Rational total = 0;
        for (const auto& [exponent, coeff] : e.terms()) {
            Rational scaled = exponent * r;
            long k = scaled.get_num().get_si();
            Rational power = 1;
            for (long i = 0; i < (k < 0 ? -k : k); ++i) power *= t;
            total += coeff * (k < 0 ? Rational(1) / power : power);
        }
        return total;
    };
    return eval(f.num()) / eval(f.den());
}

} // namespace wmk::oracle
