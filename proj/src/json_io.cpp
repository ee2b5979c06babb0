#include "wildmckay/json_io.hpp"

#include <fstream>

namespace wmk::json_io {

namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw MalformedInput(what);
}

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) {
        malformed(std::string("missing field '") + key + "'");
    }
    return obj.at(key);
}

template <typename T>
T get_number(const json& j, const char* what) {
    if (!j.is_number_integer()) {
        malformed(std::string(what) + " must be an integer");
    }
    return j.get<T>();
}

} // namespace

json integer_to_json(const Integer& z) {
    if (z.fits_slong_p()) {
        return json(z.get_si());
    }
    return json(z.get_str());
}

Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) {
        return j.is_number_unsigned() ? Integer(j.get<unsigned long>()) : Integer(j.get<long>());
    }
    if (j.is_string()) {
        Integer z;
        if (z.set_str(j.get<std::string>(), 10) != 0) {
            malformed("not an integer: " + j.get<std::string>());
        }
        return z;
    }
    malformed("expected an integer, got " + j.dump());
}

json rational_to_json(const Rational& r) {
    return json::array({integer_to_json(r.get_num()), integer_to_json(r.get_den())});
}

Rational rational_from_json(const json& j) {
    if (j.is_array() && j.size() == 2) {
        Integer den = integer_from_json(j[1]);
        if (den == 0) throw DivisionByZero();
        Rational r(integer_from_json(j[0]), den);
        r.canonicalize();
        return r;
    }
    if (j.is_number_integer()) {
        return Rational(integer_from_json(j));
    }
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    malformed("expected a rational, got " + j.dump());
}

json to_json(const QExpr& e) {
    json out = json::array();
    for (const auto& [exponent, coeff] : e.terms()) {
        out.push_back({integer_to_json(exponent.get_num()), integer_to_json(exponent.get_den()),
                       integer_to_json(coeff.get_num()), integer_to_json(coeff.get_den())});
    }
    return out;
}

QExpr qexpr_from_json(const json& j) {
    if (!j.is_array()) malformed("QExpr must be an array of term quadruples");
    std::vector<std::pair<Rational, Rational>> terms;
    for (const json& t : j) {
        if (!t.is_array() || t.size() != 4) malformed("QExpr term must be [en, ed, cn, cd]");
        terms.emplace_back(rational_from_json(json::array({t[0], t[1]})),
                           rational_from_json(json::array({t[2], t[3]})));
    }
    return QExpr::from_terms(terms);
}

json to_json(const QFrac& f) {
    return {{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

QFrac qfrac_from_json(const json& j) {
    return QFrac(qexpr_from_json(field(j, "num")), qexpr_from_json(field(j, "den")));
}

json to_json(const TruncatedSeries& s) {
    json out = json::array();
    for (const QFrac& c : s.coefficients()) out.push_back(to_json(c));
    return out;
}

TruncatedSeries series_from_json(const json& j) {
    if (!j.is_array() || j.empty()) malformed("series must be a non-empty array");
    std::vector<QFrac> coeffs;
    for (const json& c : j) coeffs.push_back(qfrac_from_json(c));
    return TruncatedSeries(std::move(coeffs));
}

json to_json(const ExtendedValue& v) {
    if (is_infinite(v)) {
        return {{"finite", false}};
    }
    return {{"finite", true}, {"value", to_json(std::get<QFrac>(v))}};
}

PolySystem poly_system_from_json(const json& j) {
    PolySystem sys;
    sys.p = get_number<std::uint64_t>(field(j, "p"), "p");
    sys.num_vars = get_number<int>(field(j, "n"), "n");
    sys.dimension = get_number<int>(field(j, "d"), "d");
    const json& polys = field(j, "polys");
    if (!polys.is_array()) malformed("polys must be an array");
    for (const json& poly : polys) {
        if (!poly.is_array()) malformed("each polynomial must be an array of [exponents, coeff] terms");
        IntPolynomial out;
        for (const json& term : poly) {
            if (!term.is_array() || term.size() != 2 || !term[0].is_array()) {
                malformed("polynomial term must be [[exponents...], coeff]");
            }
            Monomial mono;
            for (const json& e : term[0]) mono.exponents.push_back(get_number<int>(e, "exponent"));
            mono.coeff = get_number<std::int64_t>(term[1], "coefficient");
            out.push_back(std::move(mono));
        }
        sys.polys.push_back(std::move(out));
    }
    sys.validate();
    return sys;
}

json to_json(const PolySystem& sys) {
    json polys = json::array();
    for (const IntPolynomial& poly : sys.polys) {
        json terms = json::array();
        for (const Monomial& mono : poly) terms.push_back({mono.exponents, mono.coeff});
        polys.push_back(terms);
    }
    return {{"p", sys.p}, {"n", sys.num_vars}, {"d", sys.dimension}, {"polys", polys}};
}

SncLogPairData snc_from_json(const json& j) {
    SncLogPairData data;
    const json& horizontal = j.contains("horizontal") ? j.at("horizontal") : json::array();
    if (!horizontal.is_array()) malformed("horizontal must be an array");
    for (const json& c : horizontal) data.horizontal.push_back(rational_from_json(c));
    const json& vertical = field(j, "vertical");
    if (!vertical.is_array()) malformed("vertical must be an array");
    for (const json& entry : vertical) {
        VerticalEntry v;
        v.a = entry.contains("a") ? rational_from_json(entry.at("a")) : Rational(0);
        const json& strata = field(entry, "strata");
        if (!strata.is_array()) malformed("strata must be an array");
        for (const json& stratum : strata) {
            const json& subset_json = field(stratum, "subset");
            if (!subset_json.is_array()) malformed("subset must be an index array");
            DivisorSubset subset;
            for (const json& idx : subset_json) subset.push_back(get_number<int>(idx, "subset index"));
            const auto count = get_number<std::int64_t>(field(stratum, "count"), "count");
            if (count < 0) malformed("stratum counts must be non-negative");
            if (!v.strata.emplace(subset, static_cast<std::uint64_t>(count)).second) {
                malformed("duplicate stratum key in a vertical entry");
            }
        }
        data.vertical.push_back(std::move(v));
    }
    if (j.contains("total")) {
        data.total_points = get_number<std::uint64_t>(j.at("total"), "total");
    }
    data.validate();
    return data;
}

json to_json(const SncLogPairData& data) {
    json horizontal = json::array();
    for (const Rational& c : data.horizontal) horizontal.push_back(rational_to_json(c));
    json vertical = json::array();
    for (const VerticalEntry& v : data.vertical) {
        json strata = json::array();
        for (const auto& [subset, count] : v.strata) strata.push_back({{"subset", subset}, {"count", count}});
        vertical.push_back({{"a", rational_to_json(v.a)}, {"strata", strata}});
    }
    json out{{"horizontal", horizontal}, {"vertical", vertical}};
    if (data.total_points) out["total"] = *data.total_points;
    return out;
}

std::vector<FieldFixture> fixtures_from_json(const json& j) {
    if (!j.is_array()) malformed("fixture file must hold a JSON array");
    std::vector<FieldFixture> out;
    for (const json& rec : j) {
        FieldFixture fx;
        fx.p = get_number<std::uint64_t>(field(rec, "p"), "p");
        fx.n = get_number<int>(field(rec, "n"), "n");
        fx.e = get_number<int>(field(rec, "e"), "e");
        fx.f = get_number<int>(field(rec, "f"), "f");
        fx.disc_exponent = get_number<int>(field(rec, "c"), "c");
        fx.aut_order = get_number<std::uint64_t>(field(rec, "aut"), "aut");
        fx.label = rec.contains("label") ? rec.at("label").get<std::string>() : std::string();
        out.push_back(std::move(fx));
    }
    return out;
}

json to_json(const TameFieldClass& cls) {
    return {{"f", cls.f},
            {"e", cls.e},
            {"g", cls.g},
            {"orbit", cls.orbit},
            {"degree", cls.degree()},
            {"d", cls.disc_exponent()},
            {"aut", cls.aut_order()}};
}

json to_json(const EtaleAlgebra& algebra) {
    json factors = json::array();
    for (const EtaleFactor& factor : algebra.factors) {
        json f = to_json(factor.field);
        f["multiplicity"] = factor.multiplicity;
        factors.push_back(f);
    }
    return {{"factors", factors},
            {"degree", algebra.degree()},
            {"d", algebra.disc_exponent()},
            {"aut", integer_to_json(algebra.aut_order())}};
}

json breakdown_to_json(const McKayReport& report) {
    json rows = json::array();
    for (const McKayTerm& t : report.breakdown) {
        rows.push_back({{"factors", t.weights.algebra.label()},
                        {"d", t.weights.algebra.disc_exponent()},
                        {"v", t.weights.v},
                        {"w", t.weights.w},
                        {"aut", integer_to_json(t.weights.centralizer_order)},
                        {"term_num", integer_to_json(t.term.get_num())},
                        {"term_den", integer_to_json(t.term.get_den())}});
    }
    return rows;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        malformed("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        malformed(path + ": " + e.what());
    }
}

} // namespace wmk::json_io
