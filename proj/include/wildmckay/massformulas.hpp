#pragma once

// Serre's and Bhargava's mass formulas and the exponential formula linking them:
//
//   sum_n M(K,n) x^n = exp( sum_n x^n sum_{f|n} N(K_f, n/f) / f )
//
// Note there is no 1/n in front of the inner sum. Grouping fields by their
// K-isomorphism class, a degree-n field with residue degree f contributes
// x^n q^{-d} / #Aut, and the classes over K of totally ramified extensions of
// K_f carry mass N(K_f, n/f) / f. With an extra 1/n the x^2 coefficient would
// be 3/4 + q^{-1}/2 instead of 1 + q^{-1}.

#include <map>
#include <utility>

#include "wildmckay/exactq.hpp"
#include "wildmckay/series.hpp"

namespace wmk {

// q^{f(1-n)}: Serre's mass over the degree-f unramified extension.
QExpr serre_mass(int n, int f = 1);

// sum_{i=0}^{n-1} P(n, n-i) q^{-i}
QExpr bhargava_mass(int n);

// (f, m) -> N(K_f, m)
using RamifiedMasses = std::map<std::pair<int, int>, QFrac>;

// Inner series sum_n x^n sum_{f|n} N(K_f, n/f) / f from a table covering every
// (f, n/f) with n <= n_max.
TruncatedSeries inner_series(const RamifiedMasses& masses, int n_max);

// exp of the inner series built from Serre's masses: sum_n M(K,n) x^n.
TruncatedSeries mass_series_via_exp(int n_max);

// exp of the inner series for an arbitrary table of N values.
TruncatedSeries mass_series_from(const RamifiedMasses& masses, int n_max);

TruncatedSeries bhargava_series(int n_max);

enum class RecoveryMode {
    // N(K_f, m) for f > 1 is N(K, m) with q replaced by q^f, using values
    // already recovered for smaller m; no mass formula is assumed.
    base_change,
    // N(K_f, m) for f > 1 is taken to be q^{f(1-m)}; only N(K, n) is solved for.
    serre_assumed,
};

// Solve S_n = sum_{f|n} N(K_f, n/f) / f, S = log(M), for all f m <= deg M.
// Throws DomainError when the constant term of M is not 1.
RamifiedMasses recover_N_from_M(const TruncatedSeries& m_series,
                                RecoveryMode mode = RecoveryMode::base_change);

} // namespace wmk
