#include <doctest.h>

#include <random>

#include "wildmckay/json_io.hpp"

using namespace wmk;
using namespace wmk::json_io;

namespace {

std::string data_path(const char* name) {
    return std::string(WMK_TEST_DATA_DIR) + "/" + name;
}

} // namespace

TEST_CASE("big integers switch to strings") {
    Integer small(123456789);
    CHECK(integer_to_json(small) == json(123456789));
    Integer big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 30);
    CHECK(integer_to_json(big).is_string());
    CHECK(integer_from_json(integer_to_json(big)) == big);
    CHECK(integer_from_json(json(-7)) == -7);
    CHECK_THROWS_AS(integer_from_json(json("12x")), MalformedInput);
}

TEST_CASE("rationals") {
    CHECK(rational_to_json(make_rational(-2, 6)) == json::array({-1, 3}));
    CHECK(rational_from_json(json::array({4, -6})) == make_rational(-2, 3));
    CHECK(rational_from_json(json("5/10")) == make_rational(1, 2));
    CHECK(rational_from_json(json(3)) == 3);
    CHECK_THROWS_AS(rational_from_json(json::array({1, 0})), DivisionByZero);
    CHECK_THROWS_AS(rational_from_json(json(1.5)), MalformedInput);
}

TEST_CASE("QFrac round trip") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> c(-4, 4), e(-3, 3), d(1, 2);
    for (int i = 0; i < 100; ++i) {
        QExpr num, den = QExpr::q_power(Rational(4));
        for (int k = 0; k < 3; ++k) {
            num += QExpr::monomial(Rational(c(rng)), make_rational(e(rng), d(rng)));
            den += QExpr::monomial(Rational(c(rng)), make_rational(e(rng), d(rng)));
        }
        QFrac f(num, den);
        CHECK(qfrac_from_json(to_json(f)) == f);
        CHECK(to_json(qfrac_from_json(to_json(f))).dump() == to_json(f).dump());
    }
}

TEST_CASE("series and extended values") {
    TruncatedSeries s = TruncatedSeries::x(4);
    s[3] = QFrac(QExpr::q_power(Rational(-1)));
    CHECK(series_from_json(to_json(s)) == s);
    CHECK(to_json(ExtendedValue{Infinite{}}) == json{{"finite", false}});
    CHECK(to_json(ExtendedValue{QFrac(2)})["finite"] == true);
}

TEST_CASE("poly system files") {
    PolySystem sys = poly_system_from_json(read_json_file(data_path("circle_p5.json")));
    CHECK(sys.p == 5);
    CHECK(sys.num_vars == 2);
    CHECK(sys.dimension == 1);
    REQUIRE(sys.polys.size() == 1);
    CHECK(sys.polys[0].size() == 3);
    CHECK(poly_system_from_json(to_json(sys)).polys[0][2].coeff == -1);

    json bad = to_json(sys);
    bad["p"] = 6;
    CHECK_THROWS(poly_system_from_json(bad));
    bad = to_json(sys);
    bad["polys"][0][0][0] = json::array({1, 1, 1});
    CHECK_THROWS_AS(poly_system_from_json(bad), MalformedInput);
    bad = to_json(sys);
    bad.erase("d");
    CHECK_THROWS_AS(poly_system_from_json(bad), MalformedInput);
}

TEST_CASE("snc pair files") {
    SncLogPairData data = snc_from_json(read_json_file(data_path("stringy_pair.json")));
    CHECK(data.horizontal == std::vector<Rational>{make_rational(1, 2)});
    REQUIRE(data.vertical.size() == 1);
    CHECK(data.vertical[0].strata.at({}) == 5);
    CHECK(data.vertical[0].strata.at({1}) == 1);
    CHECK(snc_from_json(to_json(data)).vertical[0].strata == data.vertical[0].strata);

    json dup = to_json(data);
    dup["vertical"][0]["strata"].push_back({{"subset", json::array({1})}, {"count", 2}});
    CHECK_THROWS_AS(snc_from_json(dup), MalformedInput);
    json neg = to_json(data);
    neg["vertical"][0]["strata"][0]["count"] = -1;
    CHECK_THROWS_AS(snc_from_json(neg), MalformedInput);
    json wrong_total = to_json(data);
    wrong_total["total"] = 7;
    CHECK_THROWS_AS(snc_from_json(wrong_total), MalformedInput);
}

TEST_CASE("fixture files") {
    std::vector<FieldFixture> fx = fixtures_from_json(read_json_file(data_path("local_fields_fixtures.json")));
    CHECK(fx.size() == 26);
    CHECK(fx[0].label == "3.2.0.1");
    CrossValidationReport r = crossvalidate_fixtures(fx);
    CHECK(r.ok());
    CHECK(r.matched.size() == 20);
    CHECK(r.uncheckable.size() == 6);
    CHECK_THROWS_AS(fixtures_from_json(json::object()), MalformedInput);
}

TEST_CASE("unreadable files") {
    CHECK_THROWS_AS(read_json_file(data_path("does_not_exist.json")), MalformedInput);
}

TEST_CASE("mckay breakdown rows") {
    json rows = breakdown_to_json(verify_wild_mckay(5, 2));
    REQUIRE(rows.size() == 4);
    for (const json& row : rows) {
        for (const char* key : {"factors", "d", "v", "w", "aut", "term_num", "term_den"}) {
            CHECK(row.contains(key));
        }
    }
}
