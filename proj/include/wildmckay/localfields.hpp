#pragma once

// Tamely ramified extensions of Q_p and the étale algebras built from them.
//
// A tame extension with residue degree f and ramification index e (p ∤ e) is
// K_f(x) with x^e = u p, u a root of unity of order dividing q^f - 1. Its
// K-isomorphism class is the Frobenius orbit of the class of u in
// k_f^* / (k_f^*)^e ≅ Z/g, g = gcd(e, q^f - 1), where Frobenius acts as
// multiplication by q = p.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wildmckay/exactq.hpp"

namespace wmk {

struct TameFieldClass {
    std::uint64_t p = 0;
    int f = 1;
    int e = 1;
    std::uint64_t g = 1;               // gcd(e, p^f - 1)
    std::vector<std::uint64_t> orbit;  // sorted residues mod g

    int degree() const { return e * f; }
    int disc_exponent() const { return f * (e - 1); }
    std::uint64_t representative() const { return orbit.front(); }
    // g times the number of i in Z/f with c (p^i - 1) ≡ 0 mod g.
    std::uint64_t aut_order() const;
    std::string label() const;

    friend bool operator==(const TameFieldClass&, const TameFieldClass&) = default;
};

struct SkippedStratum {
    int f = 0;
    int e = 0;  // divisible by p
};

struct FieldEnumeration {
    std::vector<TameFieldClass> classes;  // f desc, e asc, orbit minimum asc
    std::vector<SkippedStratum> skipped;  // wild (f, e) strata, never computed
};

FieldEnumeration enumerate_tame_field_classes(std::uint64_t p, int n);

struct EtaleFactor {
    TameFieldClass field;
    int multiplicity = 1;
};

struct EtaleAlgebra {
    std::vector<EtaleFactor> factors;

    int degree() const;
    int disc_exponent() const;
    // prod over distinct factors of multiplicity! * aut(field)^multiplicity
    Integer aut_order() const;
    std::string label() const;
};

struct AlgebraEnumeration {
    std::vector<EtaleAlgebra> algebras;
    bool complete = true;  // false when some wild stratum was skipped (p <= n)
    std::vector<SkippedStratum> skipped;
};

AlgebraEnumeration enumerate_tame_etale_algebras(std::uint64_t p, int n);

// sum over degree-n étale algebras of p^{-d} / #Aut; PartialEnumeration if p <= n.
Rational algebra_mass_sum(std::uint64_t p, int n);

// One record of an external local-fields database export.
struct FieldFixture {
    std::uint64_t p = 0;
    int n = 0;
    int e = 0;
    int f = 0;
    int disc_exponent = 0;
    std::uint64_t aut_order = 0;
    std::string label;

    bool is_wild() const { return e % static_cast<int>(p) == 0; }
};

struct FixtureMismatch {
    std::string label;
    std::string reason;
};

struct CrossValidationReport {
    std::vector<std::string> matched;
    std::vector<std::string> uncheckable;  // wild fixtures
    std::vector<FixtureMismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
};

// Tame fixtures must match enumerated classes by (e, f, d, aut), with
// multiplicity; throws MalformedInput when n != e f or p is not prime.
CrossValidationReport crossvalidate_fixtures(std::span<const FieldFixture> fixtures);

} // namespace wmk
