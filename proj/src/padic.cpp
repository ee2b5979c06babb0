#include "wildmckay/padic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace wmk {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kDefaultBudget = 100'000'000;

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 reduce(std::int64_t c, u64 m) {
    const auto mm = static_cast<__int128>(m);
    __int128 r = static_cast<__int128>(c) % mm;
    if (r < 0) r += mm;
    return static_cast<u64>(r);
}

// p^e, or nullopt when it does not fit in 62 bits.
std::optional<u64> checked_pow(u64 p, int e) {
    u128 acc = 1;
    for (int i = 0; i < e; ++i) {
        acc *= p;
        if (acc > (u128{1} << 62)) return std::nullopt;
    }
    return static_cast<u64>(acc);
}

Integer ipow(u64 base, unsigned long e) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, e);
    return out;
}

u64 eval_mod(const IntPolynomial& poly, const std::vector<u64>& point, u64 m) {
    u64 total = 0;
    for (const Monomial& mono : poly) {
        u64 term = reduce(mono.coeff, m);
        for (std::size_t v = 0; v < point.size() && term != 0; ++v) {
            for (int k = 0; k < mono.exponents[v]; ++k) {
                term = mulmod(term, point[v], m);
            }
        }
        total = (total + term) % m;
    }
    return total;
}

IntPolynomial derivative(const IntPolynomial& poly, std::size_t var) {
    IntPolynomial out;
    for (const Monomial& mono : poly) {
        if (mono.exponents[var] == 0) continue;
        Monomial d = mono;
        d.coeff *= mono.exponents[var];
        d.exponents[var] -= 1;
        out.push_back(std::move(d));
    }
    return out;
}

// Per polynomial: terms grouped by the exponent of the last variable.
struct SplitPoly {
    struct OuterTerm {
        std::vector<int> exponents;  // first n-1 variables
        u64 coeff;                   // reduced mod M
    };
    std::vector<std::vector<OuterTerm>> by_last_degree;
};

class ResidueCounter {
public:
    ResidueCounter(const PolySystem& sys, u64 modulus, kernels::Isa isa)
        : n_(sys.num_vars), modulus_(modulus), isa_(isa), max_exp_(static_cast<std::size_t>(n_), 0) {
        for (const IntPolynomial& poly : sys.polys) {
            SplitPoly split;
            for (const Monomial& mono : poly) {
                const int last = mono.exponents.back();
                if (split.by_last_degree.size() <= static_cast<std::size_t>(last)) {
                    split.by_last_degree.resize(static_cast<std::size_t>(last) + 1);
                }
                SplitPoly::OuterTerm term{{mono.exponents.begin(), mono.exponents.end() - 1},
                                          reduce(mono.coeff, modulus_)};
                for (int v = 0; v + 1 < n_; ++v) {
                    max_exp_[v] = std::max(max_exp_[v], mono.exponents[v]);
                }
                split.by_last_degree[static_cast<std::size_t>(last)].push_back(std::move(term));
            }
            polys_.push_back(std::move(split));
        }
        offsets_.push_back(0);
        for (const SplitPoly& split : polys_) {
            offsets_.push_back(offsets_.back() + static_cast<std::uint32_t>(split.by_last_degree.size()));
        }
        coeffs_.resize(offsets_.back());
    }

    u64 outer_size() const {
        u64 size = 1;
        for (int v = 0; v + 1 < n_; ++v) size *= modulus_;
        return size;
    }

    // Counts solutions whose first n-1 coordinates have mixed-radix index in [lo, hi).
    u64 count_range(u64 lo, u64 hi) {
        std::vector<u64> digits(static_cast<std::size_t>(std::max(n_ - 1, 0)), 0);
        u64 rest = lo;
        for (std::size_t v = digits.size(); v-- > 0;) {
            digits[v] = rest % modulus_;
            rest /= modulus_;
        }
        std::vector<std::vector<u64>> powers(digits.size());
        u64 total = 0;
        for (u64 idx = lo; idx < hi; ++idx) {
            for (std::size_t v = 0; v < digits.size(); ++v) {
                auto& pw = powers[v];
                pw.assign(static_cast<std::size_t>(max_exp_[v]) + 1, 1 % modulus_);
                for (std::size_t k = 1; k < pw.size(); ++k) pw[k] = mulmod(pw[k - 1], digits[v], modulus_);
            }
            std::size_t slot = 0;
            for (const SplitPoly& split : polys_) {
                for (const auto& group : split.by_last_degree) {
                    u64 c = 0;
                    for (const auto& term : group) {
                        u64 value = term.coeff;
                        for (std::size_t v = 0; v < digits.size() && value != 0; ++v) {
                            value = mulmod(value, powers[v][static_cast<std::size_t>(term.exponents[v])], modulus_);
                        }
                        c = (c + value) % modulus_;
                    }
                    coeffs_[slot++] = c;
                }
            }
            kernels::UnivariateBatch batch{coeffs_, offsets_, modulus_};
            total += kernels::count_common_roots(batch, isa_);

            for (std::size_t v = digits.size(); v-- > 0;) {
                if (++digits[v] < modulus_) break;
                digits[v] = 0;
            }
        }
        return total;
    }

private:
    int n_;
    u64 modulus_;
    kernels::Isa isa_;
    std::vector<int> max_exp_;
    std::vector<SplitPoly> polys_;
    std::vector<std::uint32_t> offsets_;
    std::vector<u64> coeffs_;
};

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t default_budget() {
    if (const char* env = std::getenv("WMK_BUDGET")) {
        char* end = nullptr;
        unsigned long long value = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) {
            return value;
        }
    }
    return kDefaultBudget;
}

void PolySystem::validate() const {
    if (!is_prime(p)) {
        throw DomainError("p = " + std::to_string(p) + " is not prime");
    }
    if (num_vars < 0) {
        throw MalformedInput("number of variables must be non-negative");
    }
    if (dimension < 0 || dimension > num_vars) {
        throw MalformedInput("expected dimension must lie in [0, n]");
    }
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].empty()) {
            throw MalformedInput("polynomial " + std::to_string(i) + " has no terms");
        }
        for (const Monomial& mono : polys[i]) {
            if (mono.exponents.size() != static_cast<std::size_t>(num_vars)) {
                throw MalformedInput("polynomial " + std::to_string(i) + ": exponent vector length " +
                                     std::to_string(mono.exponents.size()) + " != n = " +
                                     std::to_string(num_vars));
            }
            if (std::any_of(mono.exponents.begin(), mono.exponents.end(), [](int e) { return e < 0; })) {
                throw MalformedInput("polynomial " + std::to_string(i) + " has a negative exponent");
            }
        }
    }
}

int largest_affordable_level(const PolySystem& sys, std::uint64_t budget) {
    int m = 0;
    while (true) {
        auto total = checked_pow(sys.p, (m + 1) * std::max(sys.num_vars, 1));
        if (!total || *total > budget) return m;
        ++m;
    }
}

ResidueCount count_points_mod(const PolySystem& sys, int m, const CountOptions& options) {
    sys.validate();
    if (m < 1) {
        throw DomainError("modulus exponent m must be at least 1");
    }
    auto total = checked_pow(sys.p, m * sys.num_vars);
    auto modulus = checked_pow(sys.p, m);
    if (!total || !modulus || *total > options.budget) {
        throw BudgetExceeded(total ? *total : std::numeric_limits<unsigned long long>::max(), options.budget);
    }

    ResidueCount out;
    out.m = m;
    if (sys.num_vars == 0) {
        const bool all_zero = std::all_of(sys.polys.begin(), sys.polys.end(), [&](const IntPolynomial& poly) {
            return eval_mod(poly, {}, *modulus) == 0;
        });
        out.count = all_zero ? 1 : 0;
    } else {
        const kernels::Isa isa = options.isa.value_or(kernels::default_isa());
        ResidueCounter probe(sys, *modulus, isa);
        const u64 outer = probe.outer_size();
        const unsigned workers = static_cast<unsigned>(std::clamp<u64>(options.workers, 1, outer));
        std::vector<u64> partial(workers, 0);
        if (workers == 1) {
            partial[0] = probe.count_range(0, outer);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                const u64 lo = outer * w / workers;
                const u64 hi = outer * (w + 1) / workers;
                pool.emplace_back([&sys, &partial, modulus, isa, w, lo, hi] {
                    ResidueCounter counter(sys, *modulus, isa);
                    partial[w] = counter.count_range(lo, hi);
                });
            }
            for (auto& t : pool) t.join();
        }
        out.count = 0;
        for (u64 c : partial) out.count += Integer(std::to_string(c));
    }
    out.normalized = Rational(out.count, ipow(sys.p, static_cast<unsigned long>(m * sys.dimension)));
    out.normalized.canonicalize();
    return out;
}

std::vector<std::vector<std::uint64_t>> solutions_mod_p(const PolySystem& sys) {
    sys.validate();
    auto total = checked_pow(sys.p, sys.num_vars);
    const u64 budget = default_budget();
    if (!total || *total > budget) {
        throw BudgetExceeded(total ? *total : std::numeric_limits<unsigned long long>::max(), budget);
    }
    std::vector<std::vector<u64>> out;
    std::vector<u64> point(static_cast<std::size_t>(sys.num_vars), 0);
    for (u64 idx = 0; idx < *total; ++idx) {
        u64 rest = idx;
        for (std::size_t v = point.size(); v-- > 0;) {
            point[v] = rest % sys.p;
            rest /= sys.p;
        }
        const bool on = std::all_of(sys.polys.begin(), sys.polys.end(),
                                    [&](const IntPolynomial& poly) { return eval_mod(poly, point, sys.p) == 0; });
        if (on) out.push_back(point);
    }
    return out;
}

int jacobian_rank_mod_p(const PolySystem& sys, const std::vector<std::uint64_t>& point) {
    const u64 p = sys.p;
    const std::size_t rows = sys.polys.size();
    const auto cols = static_cast<std::size_t>(sys.num_vars);
    std::vector<std::vector<u64>> jac(rows, std::vector<u64>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t v = 0; v < cols; ++v) {
            jac[i][v] = eval_mod(derivative(sys.polys[i], v), point, p);
        }
    }
    auto inverse = [p](u64 a) {
        u64 result = 1, base = a % p, e = p - 2;
        while (e > 0) {
            if (e & 1) result = mulmod(result, base, p);
            base = mulmod(base, base, p);
            e >>= 1;
        }
        return result;
    };
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        while (pivot < rows && jac[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(jac[pivot], jac[row]);
        const u64 inv = inverse(jac[row][col]);
        for (std::size_t r = row + 1; r < rows; ++r) {
            if (jac[r][col] == 0) continue;
            const u64 factor = mulmod(jac[r][col], inv, p);
            for (std::size_t c = col; c < cols; ++c) {
                jac[r][c] = (jac[r][c] + p - mulmod(factor, jac[row][c], p)) % p;
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

namespace {

std::string format_point(const std::vector<std::uint64_t>& point) {
    std::string s = "(";
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(point[i]);
    }
    return s + ")";
}

} // namespace

SmoothnessViolation::SmoothnessViolation(std::vector<std::uint64_t> point, int rank, int expected)
    : Error("not smooth at " + format_point(point) + " mod p: Jacobian rank " + std::to_string(rank) +
            ", expected " + std::to_string(expected)),
      point_(std::move(point)) {}

SmoothMeasureReport smooth_measure_check(const PolySystem& sys, int m_max, const CountOptions& options) {
    sys.validate();
    if (m_max < 1) {
        throw DomainError("m_max must be at least 1");
    }
    const int codim = sys.num_vars - sys.dimension;
    for (const auto& point : solutions_mod_p(sys)) {
        const int rank = jacobian_rank_mod_p(sys, point);
        if (rank != codim) {
            throw SmoothnessViolation(point, rank, codim);
        }
    }

    SmoothMeasureReport report;
    const Integer fiber = ipow(sys.p, static_cast<unsigned long>(sys.dimension));
    for (int m = 1; m <= m_max; ++m) {
        report.levels.push_back(count_points_mod(sys, m, options));
        if (m > 1) {
            const Integer& prev = report.levels[static_cast<std::size_t>(m - 2)].count;
            const Integer& cur = report.levels.back().count;
            if (cur != fiber * prev) {
                throw HenselMismatch("Hensel relation fails at m = " + std::to_string(m - 1) + ": count(" +
                                     std::to_string(m) + ") = " + cur.get_str() + " but p^d * count(" +
                                     std::to_string(m - 1) + ") = " + Integer(fiber * prev).get_str());
            }
        }
    }
    report.points_mod_p = report.levels.front().count;
    report.measure = Rational(report.points_mod_p, fiber);
    report.measure.canonicalize();
    return report;
}

MonomialIntegral monomial_integral(const Rational& c, std::uint64_t p, int terms) {
    if (terms < 1) {
        throw DomainError("monomial_integral: terms must be at least 1");
    }
    if (!is_prime(p)) {
        throw DomainError("p = " + std::to_string(p) + " is not prime");
    }
    MonomialIntegral out;
    // p^{ic}(p^{-i} - p^{-i-1}) = (1 - 1/p) r^i with r = p^{c-1}.
    const long double pd = static_cast<long double>(p);
    const long double ratio = std::pow(pd, static_cast<long double>(c.get_d()) - 1.0L);
    long double power = 1.0L;
    long double sum = 0.0L;
    for (int i = 1; i <= terms; ++i) {
        power *= ratio;
        sum += (1.0L - 1.0L / pd) * power;
    }
    out.partial = static_cast<double>(sum);

    if (c >= 1) {
        out.exact = Infinite{};
    } else {
        const QExpr q = QExpr::q_power(Rational(1));
        QFrac numerator = QFrac(QExpr::q_power(Rational(-1)) * (q - QExpr(1)));
        QFrac denominator = QFrac(QExpr::q_power(Rational(1 - c)) - QExpr(1));
        out.exact = numerator / denominator;
    }
    return out;
}

Rational null_set_fraction(const PolySystem& sys, int m, const CountOptions& options) {
    ResidueCount rc = count_points_mod(sys, m, options);
    Rational out(rc.count, ipow(sys.p, static_cast<unsigned long>(m * sys.num_vars)));
    out.canonicalize();
    return out;
}

} // namespace wmk
