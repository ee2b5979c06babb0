#pragma once

// Exact arithmetic in Q[q^{±1/r} : r >= 1] and its fraction field.
//
// A QExpr is a finite sum of rational multiples of rational powers of the
// formal variable q. Binary operations on fractions rescale both operands to
// the least common exponent denominator r and work with Laurent polynomials
// in t = q^{1/r}; the reduced form does not depend on which r was used.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wildmckay/errors.hpp"

namespace wmk {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

class QExpr {
public:
    using TermMap = std::map<Rational, Rational>;  // exponent -> nonzero coefficient

    QExpr() = default;
    QExpr(long constant);  // NOLINT: integers promote naturally
    QExpr(const Rational& constant);  // NOLINT

    static QExpr monomial(const Rational& coeff, const Rational& exponent);
    static QExpr q_power(const Rational& exponent) { return monomial(Rational(1), exponent); }
    static QExpr from_terms(const std::vector<std::pair<Rational, Rational>>& exp_coeff);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const TermMap& terms() const { return terms_; }
    Rational coefficient(const Rational& exponent) const;
    std::optional<Rational> min_exponent() const;
    std::optional<Rational> max_exponent() const;
    bool has_integral_exponents() const;
    // lcm of the denominators of all exponents (1 for the zero expression).
    Integer exponent_denominator() const;

    QExpr operator-() const;
    QExpr& operator+=(const QExpr& rhs);
    QExpr& operator-=(const QExpr& rhs);
    QExpr& operator*=(const QExpr& rhs);
    friend QExpr operator+(QExpr lhs, const QExpr& rhs) { return lhs += rhs; }
    friend QExpr operator-(QExpr lhs, const QExpr& rhs) { return lhs -= rhs; }
    friend QExpr operator*(QExpr lhs, const QExpr& rhs) { return lhs *= rhs; }
    friend bool operator==(const QExpr& a, const QExpr& b) { return a.terms_ == b.terms_; }

    QExpr scaled(const Rational& factor) const;
    QExpr shifted(const Rational& exponent_offset) const;  // multiply by q^offset
    // Substitute q := q^k (used for base change to the degree-k unramified extension).
    QExpr substitute_power(const Rational& k) const;

    std::string to_string() const;

private:
    void add_term(const Rational& exponent, const Rational& coeff);

    TermMap terms_;
};

// Element of the fraction field. Canonical form: numerator and denominator are
// coprime as Laurent polynomials in t = q^{1/r}; the denominator is a monic
// polynomial in t with nonzero constant term.
class QFrac {
public:
    QFrac() : den_(1) {}
    QFrac(long constant) : num_(constant), den_(1) {}  // NOLINT
    QFrac(const Rational& constant) : num_(constant), den_(1) {}  // NOLINT
    QFrac(const QExpr& expr) : num_(expr), den_(1) {}  // NOLINT
    QFrac(const QExpr& num, const QExpr& den);

    const QExpr& num() const { return num_; }
    const QExpr& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_expr() const { return den_ == QExpr(1); }
    // Numerator as a QExpr when the denominator is 1.
    std::optional<QExpr> as_expr() const;

    QFrac operator-() const;
    QFrac& operator+=(const QFrac& rhs);
    QFrac& operator-=(const QFrac& rhs);
    QFrac& operator*=(const QFrac& rhs);
    QFrac& operator/=(const QFrac& rhs);
    friend QFrac operator+(QFrac a, const QFrac& b) { return a += b; }
    friend QFrac operator-(QFrac a, const QFrac& b) { return a -= b; }
    friend QFrac operator*(QFrac a, const QFrac& b) { return a *= b; }
    friend QFrac operator/(QFrac a, const QFrac& b) { return a /= b; }
    friend bool operator==(const QFrac& a, const QFrac& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    QFrac substitute_power(const Rational& k) const;
    std::string to_string() const;

private:
    struct Canonical {};
    QFrac(QExpr num, QExpr den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
    void canonicalize();

    QExpr num_;
    QExpr den_;
};

enum class ArithKind { add, sub, mul, div };

QExpr qe_monomial(const Rational& coeff, const Rational& exponent);
QFrac qe_arith(const QFrac& lhs, const QFrac& rhs, ArithKind kind);

// Exact value at q = q0; requires integral exponents.
Rational qe_eval(const QExpr& expr, const Rational& q0);
Rational qe_eval(const QFrac& expr, const Rational& q0);

struct RealValue {
    double value = 0.0;
    std::string decimal;  // correctly rounded to the requested number of digits
};

// Real approximation at q = q0 > 0 with absolute error below `precision`.
// Works for any rational exponents.
RealValue qe_eval_real(const QFrac& expr, const Rational& q0, double precision = 1e-12);

struct Infinite {
    friend bool operator==(Infinite, Infinite) { return true; }
};

// Finite(QFrac) | Infinite; divergence is a legitimate result, not an error.
using ExtendedValue = std::variant<QFrac, Infinite>;

inline bool is_infinite(const ExtendedValue& v) { return std::holds_alternative<Infinite>(v); }
std::string to_string(const ExtendedValue& v);

} // namespace wmk
