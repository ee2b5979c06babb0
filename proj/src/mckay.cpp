#include "wildmckay/mckay.hpp"

#include "wildmckay/partitions.hpp"

namespace wmk {

McKayWeights weights_for_algebra(const EtaleAlgebra& algebra) {
    McKayWeights out;
    out.algebra = algebra;
    const int n = algebra.degree();
    // Over the maximal unramified extension a field factor splits into f
    // components of degree e, so inertia has sum f_i orbits on {1..n}; each
    // copy of the permutation representation loses n - sum f_i fixed dimensions.
    int orbits = 0;
    for (const EtaleFactor& factor : algebra.factors) {
        orbits += factor.multiplicity * factor.field.f;
    }
    out.v = algebra.disc_exponent();
    out.fixed_codim = 2 * (n - orbits);
    out.w = out.fixed_codim - out.v;
    out.centralizer_order = algebra.aut_order();
    out.ambient_dim = 2 * n;
    return out;
}

namespace {

Rational term_for(const McKayWeights& weights, std::uint64_t p) {
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), p, static_cast<unsigned long>(weights.ambient_dim - weights.v));
    Rational term(power, weights.centralizer_order);
    term.canonicalize();
    return term;
}

AlgebraEnumeration complete_enumeration(std::uint64_t p, int n) {
    AlgebraEnumeration all = enumerate_tame_etale_algebras(p, n);
    if (!all.complete) {
        throw PartialEnumeration("S_" + std::to_string(n) + "-étale algebras over Q_" + std::to_string(p) +
                                 " include wild ones the tame enumerator cannot produce; need p > n");
    }
    return all;
}

} // namespace

Rational mckay_mass_side(std::uint64_t p, int n) {
    Rational total = 0;
    for (const EtaleAlgebra& algebra : complete_enumeration(p, n).algebras) {
        total += term_for(weights_for_algebra(algebra), p);
    }
    return total;
}

McKayReport verify_wild_mckay(std::uint64_t p, int n) {
    McKayReport report;
    report.p = p;
    report.n = n;
    for (const EtaleAlgebra& algebra : complete_enumeration(p, n).algebras) {
        McKayTerm entry{weights_for_algebra(algebra), Rational(0)};
        entry.term = term_for(entry.weights, p);
        report.mass_side += entry.term;
        report.breakdown.push_back(std::move(entry));
    }
    report.hilbert_side = qe_eval(hilb_point_count(n), Rational(static_cast<unsigned long>(p)));
    return report;
}

} // namespace wmk
