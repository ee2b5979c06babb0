#pragma once

// Wild McKay correspondence for S_n acting on A^{2n} by two copies of the
// permutation representation. S_n-étale algebras M correspond to degree-n
// étale algebras M^{S_{n-1}}; the weight v of M is the discriminant exponent
// of M^{S_{n-1}} and the centralizer of the component stabilizer has the
// order of Aut(M^{S_{n-1}}).

#include <cstdint>
#include <vector>

#include "wildmckay/exactq.hpp"
#include "wildmckay/localfields.hpp"

namespace wmk {

struct McKayWeights {
    EtaleAlgebra algebra;
    int v = 0;
    int w = 0;
    int fixed_codim = 0;  // codimension of the fixed locus of the inertia subgroup
    Integer centralizer_order;
    int ambient_dim = 0;  // 2n
};

McKayWeights weights_for_algebra(const EtaleAlgebra& algebra);

// sum over M of p^{2n - v(M)} / #C(H); PartialEnumeration if p <= n.
Rational mckay_mass_side(std::uint64_t p, int n);

struct McKayTerm {
    McKayWeights weights;
    Rational term;  // p^{2n - v} / #C(H)
};

struct McKayReport {
    std::uint64_t p = 0;
    int n = 0;
    Rational mass_side;
    Rational hilbert_side;  // point count of Hilb^n(A^2) at q = p
    std::vector<McKayTerm> breakdown;

    bool passed() const { return mass_side == hilbert_side; }
};

// Never throws on a numeric disagreement; check passed(). Throws
// PartialEnumeration if p <= n.
McKayReport verify_wild_mckay(std::uint64_t p, int n);

} // namespace wmk
