#pragma once

// Brute-force p-adic measures over residue rings Z/p^m.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wildmckay/errors.hpp"
#include "wildmckay/exactq.hpp"
#include "wildmckay/kernels.hpp"

namespace wmk {

struct Monomial {
    std::vector<int> exponents;
    std::int64_t coeff = 0;
};

using IntPolynomial = std::vector<Monomial>;

// Affine scheme over Z_p cut out by integer polynomials, with its expected
// relative dimension d supplied by the caller.
struct PolySystem {
    std::uint64_t p = 2;
    int num_vars = 0;
    int dimension = 0;
    std::vector<IntPolynomial> polys;

    // Throws MalformedInput / DomainError on violated invariants.
    void validate() const;
};

bool is_prime(std::uint64_t n);

// Default budget for p^{m n}; the WMK_BUDGET environment variable overrides it.
std::uint64_t default_budget();

struct CountOptions {
    std::uint64_t budget = default_budget();
    unsigned workers = 1;
    std::optional<kernels::Isa> isa;  // unset: kernels::default_isa()
};

struct ResidueCount {
    int m = 0;
    Integer count;
    Rational normalized;  // count / p^{m d}
};

ResidueCount count_points_mod(const PolySystem& sys, int m, const CountOptions& options = {});

// Largest m >= 1 with p^{m n} within the budget (0 if even m = 1 is too large).
int largest_affordable_level(const PolySystem& sys, std::uint64_t budget);

// All solutions mod p, each as a coordinate vector.
std::vector<std::vector<std::uint64_t>> solutions_mod_p(const PolySystem& sys);

// Rank of the Jacobian matrix reduced mod p at a point.
int jacobian_rank_mod_p(const PolySystem& sys, const std::vector<std::uint64_t>& point);

class SmoothnessViolation : public Error {
public:
    SmoothnessViolation(std::vector<std::uint64_t> point, int rank, int expected);
    const std::vector<std::uint64_t>& point() const { return point_; }

private:
    std::vector<std::uint64_t> point_;
};

class HenselMismatch : public Error {
public:
    using Error::Error;
};

struct SmoothMeasureReport {
    std::vector<ResidueCount> levels;  // m = 1 .. m_max
    Integer points_mod_p;
    Rational measure;  // #X(F_p) / p^d
};

// Checks the Jacobian at every mod-p point, then count(m+1) = p^d count(m).
SmoothMeasureReport smooth_measure_check(const PolySystem& sys, int m_max,
                                         const CountOptions& options = {});

struct MonomialIntegral {
    double partial = 0.0;  // sum_{i=1}^{terms} p^{ic} (p^{-i} - p^{-i-1})
    ExtendedValue exact;   // q^{-1} (q-1) / (q^{1-c} - 1), or Infinite when c >= 1
};

// Integral of |x|^{-c} over the maximal ideal.
MonomialIntegral monomial_integral(const Rational& c, std::uint64_t p, int terms);

// count / p^{m n}, normalized by the ambient dimension.
Rational null_set_fraction(const PolySystem& sys, int m, const CountOptions& options = {});

} // namespace wmk
