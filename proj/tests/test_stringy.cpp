#include <doctest.h>

#include <random>

#include "wildmckay/padic.hpp"
#include "wildmckay/stringy.hpp"

using namespace wmk;

namespace {

const QExpr q = QExpr::q_power(Rational(1));

SncLogPairData single_point(const Rational& c) {
    SncLogPairData d;
    d.horizontal = {c};
    d.vertical = {VerticalEntry{Rational(0), {{{1}, 1}}}};
    return d;
}

QFrac finite(const StringyValue& v) {
    REQUIRE_FALSE(is_infinite(v));
    return std::get<QFrac>(v);
}

} // namespace

TEST_CASE("smooth input counts points") {
    SncLogPairData d;
    d.vertical = {VerticalEntry{Rational(0), {{{}, 7}}}};
    d.total_points = 7;
    CHECK(finite(stringy_count_snc(d)) == QFrac(7));
}

TEST_CASE("single divisor through one point") {
    CHECK(finite(stringy_count_snc(single_point(make_rational(1, 2)))) ==
          QFrac(QExpr::q_power(make_rational(1, 2)) + 1));
    CHECK(is_infinite(stringy_count_snc(single_point(Rational(1)))));
    CHECK(is_infinite(stringy_count_snc(single_point(Rational(2)))));
}

TEST_CASE("point contributions") {
    CHECK(finite(stringy_point_contribution(Rational(0), {})) == QFrac(1));
    CHECK(finite(stringy_point_contribution(Rational(1), {Rational(-1)})) == QFrac(q, q + 1));
    const QExpr root = QExpr::q_power(make_rational(1, 2)) + 1;
    CHECK(finite(stringy_point_contribution(Rational(0), {make_rational(1, 2), make_rational(1, 2)})) ==
          QFrac(root * root));
    CHECK(is_infinite(stringy_point_contribution(Rational(3), {Rational(0), Rational(1)})));
}

TEST_CASE("contribution equals q^a times the local integrals") {
    // q^a * prod_j q * integral_{m_K} |x|^{-c_j} dx
    for (const Rational& c : {Rational(0), make_rational(1, 2), Rational(-1), make_rational(2, 3), make_rational(-5, 7)}) {
        for (const Rational& a : {Rational(0), Rational(2), make_rational(-1, 3)}) {
            QFrac via_integral = QFrac(QExpr::q_power(a)) * QFrac(q) *
                                 std::get<QFrac>(monomial_integral(c, 5, 1).exact);
            CHECK(finite(stringy_point_contribution(a, {c})) == via_integral);
        }
    }
}

TEST_CASE("empty strata never force divergence") {
    SncLogPairData d;
    d.horizontal = {Rational(2), Rational(0)};
    d.vertical = {VerticalEntry{Rational(0), {{{}, 3}, {{1}, 0}, {{2}, 2}}}};
    CHECK(finite(stringy_count_snc(d)) == QFrac(3) + QFrac(2) * QFrac(q - 1, q - 1));
    d.vertical[0].strata[{1}] = 1;
    CHECK(is_infinite(stringy_count_snc(d)));
}

TEST_CASE("zero coefficients reduce to the plain point count") {
    SncLogPairData d;
    d.horizontal = {Rational(0), Rational(0), Rational(0)};
    d.vertical = {VerticalEntry{Rational(0), {{{}, 4}, {{1}, 2}, {{1, 3}, 1}, {{2}, 5}}},
                  VerticalEntry{Rational(0), {{{}, 6}, {{1, 2, 3}, 1}}}};
    CHECK(finite(stringy_count_snc(d)) == QFrac(19));
}

TEST_CASE("decomposition into point contributions") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> cnum(-4, 2), cden(1, 4), count(0, 3), anum(-2, 2);
    for (int trial = 0; trial < 60; ++trial) {
        SncLogPairData d;
        const int n_div = 1 + static_cast<int>(rng() % 3);
        for (int j = 0; j < n_div; ++j) d.horizontal.push_back(make_rational(cnum(rng), cden(rng)));
        const int entries = 1 + static_cast<int>(rng() % 2);
        QFrac by_points(0);
        bool diverges = false;
        for (int h = 0; h < entries; ++h) {
            VerticalEntry v{make_rational(anum(rng), 2), {}};
            for (unsigned mask = 0; mask < (1u << n_div); ++mask) {
                DivisorSubset subset;
                std::vector<Rational> cs;
                for (int j = 0; j < n_div; ++j) {
                    if (mask & (1u << j)) {
                        subset.push_back(j + 1);
                        cs.push_back(d.horizontal[static_cast<std::size_t>(j)]);
                    }
                }
                const auto n = static_cast<std::uint64_t>(count(rng));
                v.strata[subset] = n;
                for (std::uint64_t k = 0; k < n; ++k) {
                    StringyValue point = stringy_point_contribution(v.a, cs);
                    if (is_infinite(point)) {
                        diverges = true;
                    } else {
                        by_points += std::get<QFrac>(point);
                    }
                }
            }
            d.vertical.push_back(std::move(v));
        }
        StringyValue total = stringy_count_snc(d);
        CHECK(is_infinite(total) == diverges);
        if (!diverges) CHECK(std::get<QFrac>(total) == by_points);
    }
}

TEST_CASE("adding a populated stratum increases the value") {
    SncLogPairData d = single_point(make_rational(-1, 2));
    const QFrac before = finite(stringy_count_snc(d));
    d.vertical[0].strata[{}] = 1;
    const QFrac after = finite(stringy_count_snc(d));
    for (long q0 : {2, 3, 5, 7}) {
        CHECK(qe_eval_real(after, Rational(q0)).value > qe_eval_real(before, Rational(q0)).value);
    }
}

TEST_CASE("malformed subsets and totals") {
    SncLogPairData d = single_point(make_rational(1, 2));
    d.vertical[0].strata[{2}] = 1;
    CHECK_THROWS_AS(stringy_count_snc(d), MalformedInput);
    d = single_point(make_rational(1, 2));
    d.vertical[0].strata[{1, 1}] = 1;
    CHECK_THROWS_AS(stringy_count_snc(d), MalformedInput);
    d = single_point(make_rational(1, 2));
    d.total_points = 5;
    CHECK_THROWS_AS(stringy_count_snc(d), MalformedInput);
}
