#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wildmckay/padic.hpp"

using namespace wmk;

namespace {

Monomial mono(std::vector<int> e, std::int64_t c) {
    return Monomial{std::move(e), c};
}

PolySystem circle(std::uint64_t p) {
    return {p, 2, 1, {{mono({2, 0}, 1), mono({0, 2}, 1), mono({0, 0}, -1)}}};
}

PolySystem cubic(std::uint64_t p) {
    // y^2 = x^3 + x + 1, smooth mod 5
    return {p, 2, 1, {{mono({0, 2}, 1), mono({3, 0}, -1), mono({1, 0}, -1), mono({0, 0}, -1)}}};
}

PolySystem cusp(std::uint64_t p) {
    return {p, 2, 1, {{mono({2, 0}, 1), mono({0, 3}, -1)}}};
}

PolySystem node(std::uint64_t p) {
    return {p, 2, 1, {{mono({1, 1}, 1)}}};
}

CountOptions with_isa(kernels::Isa isa, unsigned workers = 1) {
    CountOptions o;
    o.isa = isa;
    o.workers = workers;
    return o;
}

} // namespace

TEST_CASE("circle counts over Z/5 and Z/25") {
    ResidueCount c1 = count_points_mod(circle(5), 1);
    CHECK(c1.count == 4);
    CHECK(c1.normalized == make_rational(4, 5));
    ResidueCount c2 = count_points_mod(circle(5), 2);
    CHECK(c2.count == 20);
    CHECK(c2.normalized == make_rational(4, 5));
}

TEST_CASE("empty system counts the whole space") {
    PolySystem all{5, 1, 1, {}};
    ResidueCount c = count_points_mod(all, 2);
    CHECK(c.count == 25);
    CHECK(c.normalized == 1);
}

TEST_CASE("counts agree with naive evaluation and the lift tree") {
    for (const PolySystem& sys : {circle(5), circle(3), cubic(5), cusp(5), node(5), node(3), cusp(7)}) {
        auto lifted = oracle::lift_tree_counts(sys, 3);
        for (int m = 1; m <= 3; ++m) {
            CAPTURE(m);
            const std::uint64_t expected = lifted[static_cast<std::size_t>(m - 1)];
            if (m <= 2) {
                CHECK(oracle::naive_count(sys, m) == expected);
            }
            for (kernels::Isa isa : kernels::available_isas()) {
                CHECK(count_points_mod(sys, m, with_isa(isa)).count == Integer(static_cast<unsigned long>(expected)));
            }
        }
    }
}

TEST_CASE("three variables, two equations") {
    // x + y + z = 0, x y z = 1 over Z/7
    PolySystem sys{7, 3, 1, {{mono({1, 0, 0}, 1), mono({0, 1, 0}, 1), mono({0, 0, 1}, 1)}, {mono({1, 1, 1}, 1), mono({0, 0, 0}, -1)}}};
    auto lifted = oracle::lift_tree_counts(sys, 2);
    CHECK(count_points_mod(sys, 1).count == Integer(static_cast<unsigned long>(lifted[0])));
    CHECK(count_points_mod(sys, 2).count == Integer(static_cast<unsigned long>(lifted[1])));
    CHECK(oracle::naive_count(sys, 1) == lifted[0]);
}

TEST_CASE("results do not depend on the worker partition") {
    const Integer reference = count_points_mod(cusp(5), 4, with_isa(kernels::Isa::scalar, 1)).count;
    CHECK(reference == 1125);
    for (unsigned workers : {2u, 3u, 4u, 7u, 1000u}) {
        for (kernels::Isa isa : kernels::available_isas()) {
            CHECK(count_points_mod(cusp(5), 4, with_isa(isa, workers)).count == reference);
        }
    }
}

TEST_CASE("budget is enforced before enumeration") {
    CountOptions o;
    o.budget = 1000;
    CHECK_THROWS_AS(count_points_mod(circle(5), 3, o), BudgetExceeded);
    try {
        count_points_mod(circle(5), 3, o);
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() == 15625);
        CHECK(e.budget() == 1000);
    }
    CHECK(largest_affordable_level(circle(5), 1000) == 2);
    CHECK(largest_affordable_level(circle(5), 100'000'000) == 5);
}

TEST_CASE("invalid systems are rejected") {
    PolySystem bad = circle(6);
    CHECK_THROWS_AS(count_points_mod(bad, 1), DomainError);
    PolySystem wrong_arity{5, 2, 1, {{mono({1}, 1)}}};
    CHECK_THROWS_AS(count_points_mod(wrong_arity, 1), MalformedInput);
    PolySystem empty_poly{5, 2, 1, {{}}};
    CHECK_THROWS_AS(count_points_mod(empty_poly, 1), MalformedInput);
    PolySystem bad_dim{5, 2, 3, {}};
    CHECK_THROWS_AS(count_points_mod(bad_dim, 1), MalformedInput);
    CHECK_THROWS_AS(count_points_mod(circle(5), 0), DomainError);
}

TEST_CASE("smooth measure of the circle") {
    SmoothMeasureReport r = smooth_measure_check(circle(5), 3);
    CHECK(r.measure == make_rational(4, 5));
    REQUIRE(r.levels.size() == 3);
    CHECK(r.levels[2].count == 100);
    for (const auto& level : r.levels) CHECK(level.normalized == make_rational(4, 5));
}

TEST_CASE("smooth measure of a coordinate line") {
    PolySystem line{3, 2, 1, {{mono({1, 0}, 1)}}};
    SmoothMeasureReport r = smooth_measure_check(line, 3);
    CHECK(r.points_mod_p == 3);
    CHECK(r.measure == 1);
}

TEST_CASE("the node is caught at the origin") {
    try {
        smooth_measure_check(node(5), 2);
        FAIL("expected a smoothness violation");
    } catch (const SmoothnessViolation& e) {
        CHECK(e.point() == std::vector<std::uint64_t>{0, 0});
    }
    CHECK(jacobian_rank_mod_p(node(5), {0, 0}) == 0);
    CHECK(jacobian_rank_mod_p(node(5), {1, 0}) == 1);
}

TEST_CASE("a wrong expected dimension fails the rank check") {
    PolySystem circle_d0 = circle(5);
    circle_d0.dimension = 0;
    CHECK_THROWS_AS(smooth_measure_check(circle_d0, 2), SmoothnessViolation);
}

TEST_CASE("monomial integral closed forms") {
    const QExpr q = QExpr::q_power(Rational(1));
    MonomialIntegral c0 = monomial_integral(Rational(0), 5, 40);
    REQUIRE_FALSE(is_infinite(c0.exact));
    CHECK(std::get<QFrac>(c0.exact) == QFrac(QExpr::q_power(Rational(-1))));
    CHECK(std::fabs(c0.partial - 0.2) < 1e-12);

    MonomialIntegral half = monomial_integral(make_rational(1, 2), 5, 60);
    REQUIRE_FALSE(is_infinite(half.exact));
    const QFrac& exact = std::get<QFrac>(half.exact);
    CHECK(exact == QFrac(QExpr::q_power(make_rational(-1, 2)) + QExpr::q_power(Rational(-1))));
    const double value = qe_eval_real(exact, Rational(5), 1e-12).value;
    CHECK(std::fabs(value - 0.6472135954999579) < 1e-12);
    CHECK(std::fabs(half.partial - value) < 1e-9);

    CHECK(is_infinite(monomial_integral(Rational(1), 5, 10).exact));
    CHECK(is_infinite(monomial_integral(Rational(3), 5, 10).exact));
}

TEST_CASE("monomial integral partial sums increase toward the limit") {
    for (const Rational& c : {Rational(0), make_rational(1, 2), Rational(-1), make_rational(2, 3)}) {
        MonomialIntegral full = monomial_integral(c, 5, 200);
        const double limit = qe_eval_real(std::get<QFrac>(full.exact), Rational(5), 1e-15).value;
        double prev = 0.0;
        for (int terms = 1; terms <= 40; ++terms) {
            const double partial = monomial_integral(c, 5, terms).partial;
            // Increments fall below double resolution once r^i is tiny.
            if (terms <= 8) CHECK(partial > prev);
            CHECK(partial >= prev);
            CHECK(partial <= limit + 1e-15);
            CHECK(std::fabs(limit - monomial_integral(c, 5, terms + 5).partial) <
                  std::fabs(limit - partial) + 1e-16);
            prev = partial;
        }
    }
}

TEST_CASE("null set fractions") {
    CHECK(null_set_fraction(cusp(5), 1) == make_rational(1, 5));
    const Rational m3 = null_set_fraction(cusp(5), 3);
    CHECK(m3 == make_rational(9, 625));
    CHECK(m3 < make_rational(1, 5));
    CHECK(null_set_fraction(node(5), 3) == make_rational(17, 625));
    PolySystem constant{5, 2, 1, {{mono({0, 0}, 1)}}};
    CHECK(null_set_fraction(constant, 1) == 0);
    CHECK(null_set_fraction(constant, 3) == 0);
}

TEST_CASE("null set fractions decay in steps of two") {
    for (const PolySystem& sys : {cusp(5), node(5), cusp(3), node(3)}) {
        Rational prev = null_set_fraction(sys, 1);
        for (int m = 3; m <= largest_affordable_level(sys, 10'000'000); m += 2) {
            const Rational cur = null_set_fraction(sys, m);
            CHECK(cur <= prev);
            prev = cur;
        }
    }
}
