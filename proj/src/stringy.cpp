#include "wildmckay/stringy.hpp"

#include <algorithm>
#include <string>

namespace wmk {

namespace {

std::string subset_label(const DivisorSubset& subset) {
    std::string s = "{";
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(subset[i]);
    }
    return s + "}";
}

// (q - 1) / (q^{1-c} - 1) for c < 1.
QFrac divisor_factor(const Rational& c) {
    const QExpr q_minus_one = QExpr::q_power(Rational(1)) - QExpr(1);
    return QFrac(q_minus_one, QExpr::q_power(Rational(1 - c)) - QExpr(1));
}

} // namespace

void SncLogPairData::validate() const {
    const int n_div = static_cast<int>(horizontal.size());
    unsigned long long sum = 0;
    for (std::size_t h = 0; h < vertical.size(); ++h) {
        for (const auto& [subset, count] : vertical[h].strata) {
            for (std::size_t i = 0; i < subset.size(); ++i) {
                if (subset[i] < 1 || subset[i] > n_div) {
                    throw MalformedInput("vertical entry " + std::to_string(h) + ": subset " +
                                         subset_label(subset) + " refers to a divisor outside 1.." +
                                         std::to_string(n_div));
                }
                if (i > 0 && subset[i] <= subset[i - 1]) {
                    throw MalformedInput("vertical entry " + std::to_string(h) + ": subset " +
                                         subset_label(subset) + " is not strictly increasing");
                }
            }
            sum += count;
        }
    }
    if (total_points && *total_points != sum) {
        throw MalformedInput("stratum counts sum to " + std::to_string(sum) + " but total is " +
                             std::to_string(*total_points));
    }
}

StringyValue stringy_point_contribution(const Rational& a, const std::vector<Rational>& cs) {
    if (std::any_of(cs.begin(), cs.end(), [](const Rational& c) { return c >= 1; })) {
        return Infinite{};
    }
    QFrac value(QExpr::q_power(a));
    for (const Rational& c : cs) {
        value *= divisor_factor(c);
    }
    return value;
}

StringyValue stringy_count_snc(const SncLogPairData& data) {
    data.validate();
    QFrac total(0);
    for (const VerticalEntry& entry : data.vertical) {
        for (const auto& [subset, count] : entry.strata) {
            if (count == 0) continue;
            std::vector<Rational> cs;
            cs.reserve(subset.size());
            for (int j : subset) cs.push_back(data.horizontal[static_cast<std::size_t>(j - 1)]);
            StringyValue contribution = stringy_point_contribution(entry.a, cs);
            if (is_infinite(contribution)) {
                return Infinite{};
            }
            total += std::get<QFrac>(contribution) * QFrac(Rational(Integer(static_cast<unsigned long>(count))));
        }
    }
    return total;
}

} // namespace wmk
