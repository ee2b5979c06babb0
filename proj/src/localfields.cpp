#include "wildmckay/localfields.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "wildmckay/padic.hpp"

namespace wmk {

namespace {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    if (mod == 1) return 0;
    unsigned __int128 result = 1, b = base % mod;
    while (exp > 0) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

void require_prime(std::uint64_t p) {
    if (!is_prime(p)) {
        throw DomainError("p = " + std::to_string(p) + " is not prime");
    }
}

// Classes with fixed residue degree f and tame ramification index e.
std::vector<TameFieldClass> classes_for_stratum(std::uint64_t p, int f, int e) {
    // gcd(e, p^f - 1) computed from p^f mod e, avoiding the large power.
    const std::uint64_t pf_mod_e = powmod(p, static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(e));
    const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(e),
                                     (pf_mod_e + static_cast<std::uint64_t>(e) - 1) % static_cast<std::uint64_t>(e));

    std::vector<TameFieldClass> out;
    std::vector<bool> seen(g, false);
    for (std::uint64_t c = 0; c < g; ++c) {
        if (seen[c]) continue;
        TameFieldClass cls{p, f, e, g, {}};
        std::uint64_t x = c;
        do {
            seen[x] = true;
            cls.orbit.push_back(x);
            x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * p % g);
        } while (x != c);
        std::sort(cls.orbit.begin(), cls.orbit.end());
        out.push_back(std::move(cls));
    }
    return out;
}

} // namespace

std::uint64_t TameFieldClass::aut_order() const {
    std::uint64_t fixing = 0;
    const std::uint64_t c = representative();
    for (int i = 0; i < f; ++i) {
        const std::uint64_t qi = powmod(p, static_cast<std::uint64_t>(i), g);
        const auto diff = static_cast<unsigned __int128>(c) * ((qi + g - 1) % g) % g;
        if (diff == 0) ++fixing;
    }
    return g * fixing;
}

std::string TameFieldClass::label() const {
    return "F(f=" + std::to_string(f) + ",e=" + std::to_string(e) + ",c=" + std::to_string(representative()) +
           "/" + std::to_string(g) + ")";
}

FieldEnumeration enumerate_tame_field_classes(std::uint64_t p, int n) {
    require_prime(p);
    if (n < 1) {
        throw DomainError("degree must be at least 1");
    }
    FieldEnumeration out;
    for (int f = n; f >= 1; --f) {
        if (n % f != 0) continue;
        const int e = n / f;
        if (static_cast<std::uint64_t>(e) % p == 0) {
            out.skipped.push_back({f, e});
            continue;
        }
        auto stratum = classes_for_stratum(p, f, e);
        out.classes.insert(out.classes.end(), stratum.begin(), stratum.end());
    }
    return out;
}

int EtaleAlgebra::degree() const {
    int total = 0;
    for (const auto& factor : factors) total += factor.multiplicity * factor.field.degree();
    return total;
}

int EtaleAlgebra::disc_exponent() const {
    int total = 0;
    for (const auto& factor : factors) total += factor.multiplicity * factor.field.disc_exponent();
    return total;
}

Integer EtaleAlgebra::aut_order() const {
    Integer total = 1;
    for (const auto& factor : factors) {
        Integer fact, power;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(factor.multiplicity));
        mpz_ui_pow_ui(power.get_mpz_t(), factor.field.aut_order(),
                      static_cast<unsigned long>(factor.multiplicity));
        total *= fact * power;
    }
    return total;
}

std::string EtaleAlgebra::label() const {
    std::string s;
    for (const auto& factor : factors) {
        if (!s.empty()) s += " x ";
        s += factor.field.label();
        if (factor.multiplicity > 1) s += "^" + std::to_string(factor.multiplicity);
    }
    return s;
}

AlgebraEnumeration enumerate_tame_etale_algebras(std::uint64_t p, int n) {
    require_prime(p);
    if (n < 1) {
        throw DomainError("degree must be at least 1");
    }
    AlgebraEnumeration out;
    // Canonical global class order: by degree descending, then the per-degree order.
    std::vector<TameFieldClass> classes;
    for (int deg = n; deg >= 1; --deg) {
        FieldEnumeration fe = enumerate_tame_field_classes(p, deg);
        classes.insert(classes.end(), fe.classes.begin(), fe.classes.end());
        out.skipped.insert(out.skipped.end(), fe.skipped.begin(), fe.skipped.end());
    }
    out.complete = out.skipped.empty();

    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, int)> recurse = [&](std::size_t start, int remaining) {
        if (remaining == 0) {
            EtaleAlgebra algebra;
            for (std::size_t idx : chosen) {
                if (!algebra.factors.empty() && algebra.factors.back().field == classes[idx]) {
                    ++algebra.factors.back().multiplicity;
                } else {
                    algebra.factors.push_back({classes[idx], 1});
                }
            }
            out.algebras.push_back(std::move(algebra));
            return;
        }
        for (std::size_t i = start; i < classes.size(); ++i) {
            if (classes[i].degree() > remaining) continue;
            chosen.push_back(i);
            recurse(i, remaining - classes[i].degree());
            chosen.pop_back();
        }
    };
    recurse(0, n);
    return out;
}

Rational algebra_mass_sum(std::uint64_t p, int n) {
    AlgebraEnumeration all = enumerate_tame_etale_algebras(p, n);
    if (!all.complete) {
        throw PartialEnumeration("tame enumeration is incomplete for p = " + std::to_string(p) +
                                 ", n = " + std::to_string(n) + " (needs p > n)");
    }
    Rational total = 0;
    for (const EtaleAlgebra& algebra : all.algebras) {
        Integer pd;
        mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(algebra.disc_exponent()));
        total += Rational(Integer(1), pd * algebra.aut_order());
    }
    total.canonicalize();
    return total;
}

CrossValidationReport crossvalidate_fixtures(std::span<const FieldFixture> fixtures) {
    CrossValidationReport report;
    using Key = std::tuple<std::uint64_t, int, int, int, int, std::uint64_t>;  // p, n, e, f, d, aut
    std::map<Key, int> available;
    std::set<std::pair<std::uint64_t, int>> enumerated;

    for (const FieldFixture& fx : fixtures) {
        require_prime(fx.p);
        if (fx.e < 1 || fx.f < 1 || fx.n != fx.e * fx.f) {
            throw MalformedInput("fixture " + fx.label + ": n must equal e * f");
        }
        if (fx.is_wild()) {
            report.uncheckable.push_back(fx.label);
            continue;
        }
        if (enumerated.insert({fx.p, fx.n}).second) {
            for (const TameFieldClass& cls : enumerate_tame_field_classes(fx.p, fx.n).classes) {
                ++available[Key{cls.p, cls.degree(), cls.e, cls.f, cls.disc_exponent(), cls.aut_order()}];
            }
        }
        const Key key{fx.p, fx.n, fx.e, fx.f, fx.disc_exponent, fx.aut_order};
        auto it = available.find(key);
        if (it == available.end()) {
            report.mismatches.push_back(
                {fx.label, "no tame class over Q_" + std::to_string(fx.p) + " with e=" + std::to_string(fx.e) +
                               ", f=" + std::to_string(fx.f) + ", d=" + std::to_string(fx.disc_exponent) +
                               ", aut=" + std::to_string(fx.aut_order)});
        } else if (it->second == 0) {
            report.mismatches.push_back({fx.label, "more fixtures with these invariants than enumerated classes"});
        } else {
            --it->second;
            report.matched.push_back(fx.label);
        }
    }
    return report;
}

} // namespace wmk
