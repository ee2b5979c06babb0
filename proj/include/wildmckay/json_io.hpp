#pragma once

// JSON encodings of the value types and the input file schemas.
// Big integers are written as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; readers accept either.

#include <json.hpp>

#include <string>
#include <vector>

#include "wildmckay/exactq.hpp"
#include "wildmckay/localfields.hpp"
#include "wildmckay/mckay.hpp"
#include "wildmckay/padic.hpp"
#include "wildmckay/series.hpp"
#include "wildmckay/stringy.hpp"

namespace wmk::json_io {

using nlohmann::json;

json integer_to_json(const Integer& z);
Integer integer_from_json(const json& j);

// [numerator, denominator]
json rational_to_json(const Rational& r);
// Accepts [num, den], an integer, or a string such as "-2/3".
Rational rational_from_json(const json& j);

// List of [exp_num, exp_den, coeff_num, coeff_den], exponents ascending.
json to_json(const QExpr& e);
QExpr qexpr_from_json(const json& j);

// {"num": QExpr, "den": QExpr}
json to_json(const QFrac& f);
QFrac qfrac_from_json(const json& j);

json to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const json& j);

// {"finite": true, "value": QFrac} or {"finite": false}
json to_json(const ExtendedValue& v);

// {p, n, d, polys: [[[exponents], coeff], ...] per polynomial}
PolySystem poly_system_from_json(const json& j);
json to_json(const PolySystem& sys);

// {horizontal: [c...], vertical: [{a, strata: [{subset: [...], count}]}], total?}
SncLogPairData snc_from_json(const json& j);
json to_json(const SncLogPairData& data);

// Array of {p, n, e, f, c, aut, label}
std::vector<FieldFixture> fixtures_from_json(const json& j);

json to_json(const TameFieldClass& cls);
json to_json(const EtaleAlgebra& algebra);
// [{factors, d, v, w, aut, term_num, term_den}]
json breakdown_to_json(const McKayReport& report);

json read_json_file(const std::string& path);

} // namespace wmk::json_io
