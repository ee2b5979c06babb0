#include "wildmckay/exactq.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wmk {

Rational make_rational(long num, long den) {
    if (den == 0) {
        throw DivisionByZero();
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text) {
    Rational r;
    std::string trimmed = text;
    trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(), ::isspace), trimmed.end());
    if (trimmed.empty() || r.set_str(trimmed, 10) != 0) {
        throw MalformedInput("not a rational number: '" + text + "'");
    }
    if (r.get_den() == 0) {
        throw DivisionByZero();
    }
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    return r.get_str();
}

// ---------------------------------------------------------------------------
// QExpr

QExpr::QExpr(long constant) {
    add_term(Rational(0), Rational(constant));
}

QExpr::QExpr(const Rational& constant) {
    add_term(Rational(0), constant);
}

QExpr QExpr::monomial(const Rational& coeff, const Rational& exponent) {
    QExpr e;
    e.add_term(exponent, coeff);
    return e;
}

QExpr QExpr::from_terms(const std::vector<std::pair<Rational, Rational>>& exp_coeff) {
    QExpr e;
    for (const auto& [exponent, coeff] : exp_coeff) {
        e.add_term(exponent, coeff);
    }
    return e;
}

void QExpr::add_term(const Rational& exponent, const Rational& coeff) {
    if (coeff == 0) {
        return;
    }
    Rational key = exponent;
    key.canonicalize();
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

bool QExpr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Rational QExpr::coefficient(const Rational& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Rational> QExpr::min_exponent() const {
    if (terms_.empty()) {
        return std::nullopt;
    }
    return terms_.begin()->first;
}

std::optional<Rational> QExpr::max_exponent() const {
    if (terms_.empty()) {
        return std::nullopt;
    }
    return terms_.rbegin()->first;
}

bool QExpr::has_integral_exponents() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.first.get_den() == 1; });
}

Integer QExpr::exponent_denominator() const {
    Integer r = 1;
    for (const auto& [exponent, coeff] : terms_) {
        mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), exponent.get_den_mpz_t());
    }
    return r;
}

QExpr QExpr::operator-() const {
    QExpr out = *this;
    for (auto& [exponent, coeff] : out.terms_) {
        coeff = -coeff;
    }
    return out;
}

QExpr& QExpr::operator+=(const QExpr& rhs) {
    for (const auto& [exponent, coeff] : rhs.terms_) {
        add_term(exponent, coeff);
    }
    return *this;
}

QExpr& QExpr::operator-=(const QExpr& rhs) {
    for (const auto& [exponent, coeff] : rhs.terms_) {
        add_term(exponent, -coeff);
    }
    return *this;
}

QExpr& QExpr::operator*=(const QExpr& rhs) {
    QExpr product;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            product.add_term(ea + eb, ca * cb);
        }
    }
    terms_ = std::move(product.terms_);
    return *this;
}

QExpr QExpr::scaled(const Rational& factor) const {
    if (factor == 0) {
        return QExpr();
    }
    QExpr out = *this;
    for (auto& [exponent, coeff] : out.terms_) {
        coeff *= factor;
    }
    return out;
}

QExpr QExpr::shifted(const Rational& exponent_offset) const {
    QExpr out;
    for (const auto& [exponent, coeff] : terms_) {
        out.terms_.emplace_hint(out.terms_.end(), Rational(exponent + exponent_offset), coeff);
    }
    return out;
}

QExpr QExpr::substitute_power(const Rational& k) const {
    if (k == 0) {
        Rational total = 0;
        for (const auto& [exponent, coeff] : terms_) {
            total += coeff;
        }
        return QExpr(total);
    }
    QExpr out;
    for (const auto& [exponent, coeff] : terms_) {
        out.add_term(exponent * k, coeff);
    }
    return out;
}

namespace {

void append_monomial(std::ostringstream& os, const Rational& exponent, const Rational& coeff,
                     bool first) {
    Rational mag = abs(coeff);
    if (!first) {
        os << (coeff < 0 ? " - " : " + ");
    } else if (coeff < 0) {
        os << "-";
    }
    const bool unit = mag == 1;
    if (exponent == 0) {
        os << mag.get_str();
        return;
    }
    if (!unit) {
        os << mag.get_str() << "*";
    }
    os << "q";
    if (exponent != 1) {
        if (exponent.get_den() == 1 && exponent > 0) {
            os << "^" << exponent.get_str();
        } else {
            os << "^(" << exponent.get_str() << ")";
        }
    }
}

} // namespace

std::string QExpr::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    // Highest power first reads naturally; the stored order stays ascending.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        append_monomial(os, it->first, it->second, first);
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Q in t = q^{1/r}, ascending coefficients.

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

struct Laurent {
    long valuation = 0;  // power of t factored out
    Poly poly;           // nonzero constant term unless empty
};

// expr must be nonzero; every exponent times r is an integer.
Laurent to_laurent(const QExpr& expr, const Integer& r) {
    Laurent out;
    bool first = true;
    for (const auto& [exponent, coeff] : expr.terms()) {
        Rational scaled = exponent * Rational(r);
        long k = scaled.get_num().get_si();
        if (first) {
            out.valuation = k;
            first = false;
        }
        std::size_t idx = static_cast<std::size_t>(k - out.valuation);
        if (out.poly.size() <= idx) {
            out.poly.resize(idx + 1, Rational(0));
        }
        out.poly[idx] = coeff;
    }
    return out;
}

QExpr from_laurent(long valuation, const Poly& poly, const Integer& r) {
    QExpr out;
    std::vector<std::pair<Rational, Rational>> terms;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] != 0) {
            Rational exponent(Integer(valuation + static_cast<long>(i)), r);
            exponent.canonicalize();
            terms.emplace_back(exponent, poly[i]);
        }
    }
    return QExpr::from_terms(terms);
}

// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trim(a);
    if (a.size() < b.size()) {
        return {Poly{}, a};
    }
    Poly quot(a.size() - b.size() + 1, Rational(0));
    const Rational& lead = b.back();
    for (std::size_t i = a.size(); i >= b.size(); --i) {
        const std::size_t top = i - 1;
        if (a[top] == 0) {
            continue;
        }
        Rational factor = a[top] / lead;
        const std::size_t shift = top - (b.size() - 1);
        quot[shift] = factor;
        for (std::size_t j = 0; j < b.size(); ++j) {
            a[shift + j] -= factor * b[j];
        }
    }
    trim(a);
    trim(quot);
    return {quot, a};
}

void make_monic(Poly& p) {
    if (p.empty()) return;
    Rational lead = p.back();
    for (auto& c : p) {
        c /= lead;
    }
}

Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
        make_monic(b);
    }
    make_monic(a);
    return a;
}

} // namespace

// ---------------------------------------------------------------------------
// QFrac

QFrac::QFrac(const QExpr& num, const QExpr& den) : num_(num), den_(den) {
    if (den_.is_zero()) {
        throw DivisionByZero();
    }
    canonicalize();
}

void QFrac::canonicalize() {
    if (num_.is_zero()) {
        den_ = QExpr(1);
        return;
    }
    // Monomial denominator: divide through directly.
    if (den_.terms().size() == 1) {
        const auto& [exponent, coeff] = *den_.terms().begin();
        num_ = num_.shifted(-exponent).scaled(1 / coeff);
        den_ = QExpr(1);
        return;
    }
    Integer r = num_.exponent_denominator();
    Integer rd = den_.exponent_denominator();
    mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), rd.get_mpz_t());

    Laurent n = to_laurent(num_, r);
    Laurent d = to_laurent(den_, r);
    Poly g = gcd(n.poly, d.poly);
    if (g.size() > 1) {
        n.poly = divmod(n.poly, g).first;
        d.poly = divmod(d.poly, g).first;
    }
    Rational lead = d.poly.back();
    for (auto& c : n.poly) c /= lead;
    for (auto& c : d.poly) c /= lead;
    num_ = from_laurent(n.valuation - d.valuation, n.poly, r);
    den_ = from_laurent(0, d.poly, r);
}

std::optional<QExpr> QFrac::as_expr() const {
    if (!is_expr()) {
        return std::nullopt;
    }
    return num_;
}

QFrac QFrac::operator-() const {
    return QFrac(-num_, den_, Canonical{});
}

QFrac& QFrac::operator+=(const QFrac& rhs) {
    if (is_expr() && rhs.is_expr()) {
        num_ += rhs.num_;
        return *this;
    }
    if (den_ == rhs.den_) {
        num_ += rhs.num_;
    } else {
        num_ = num_ * rhs.den_ + rhs.num_ * den_;
        den_ *= rhs.den_;
    }
    canonicalize();
    return *this;
}

QFrac& QFrac::operator-=(const QFrac& rhs) {
    return *this += -rhs;
}

QFrac& QFrac::operator*=(const QFrac& rhs) {
    num_ *= rhs.num_;
    if (is_expr() && rhs.is_expr()) {
        return *this;
    }
    den_ *= rhs.den_;
    canonicalize();
    return *this;
}

QFrac& QFrac::operator/=(const QFrac& rhs) {
    if (rhs.is_zero()) {
        throw DivisionByZero();
    }
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    canonicalize();
    return *this;
}

QFrac QFrac::substitute_power(const Rational& k) const {
    if (k == 0) {
        throw DomainError("substitute_power: exponent scale must be nonzero");
    }
    return QFrac(num_.substitute_power(k), den_.substitute_power(k));
}

std::string QFrac::to_string() const {
    if (is_expr()) {
        return num_.to_string();
    }
    auto wrap = [](const QExpr& e) {
        std::string s = e.to_string();
        return e.terms().size() > 1 ? "(" + s + ")" : s;
    };
    return wrap(num_) + " / " + wrap(den_);
}

// ---------------------------------------------------------------------------
// Free operations

QExpr qe_monomial(const Rational& coeff, const Rational& exponent) {
    return QExpr::monomial(coeff, exponent);
}

QFrac qe_arith(const QFrac& lhs, const QFrac& rhs, ArithKind kind) {
    switch (kind) {
    case ArithKind::add: return lhs + rhs;
    case ArithKind::sub: return lhs - rhs;
    case ArithKind::mul: return lhs * rhs;
    case ArithKind::div: return lhs / rhs;
    }
    throw DomainError("unknown arithmetic kind");
}

namespace {

Rational rational_pow(const Rational& base, const Integer& exponent) {
    if (!exponent.fits_slong_p()) {
        throw DomainError("exponent too large for exact evaluation");
    }
    long e = exponent.get_si();
    if (e < 0 && base == 0) {
        throw PoleError("negative power of zero");
    }
    unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), mag);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), mag);
    Rational out = e < 0 ? Rational(den, num) : Rational(num, den);
    out.canonicalize();
    return out;
}

// Exact r-th root of a nonnegative rational, if it exists.
std::optional<Rational> exact_root(const Rational& x, const Integer& r) {
    unsigned long k = r.get_ui();
    Integer num, den;
    if (mpz_root(num.get_mpz_t(), x.get_num_mpz_t(), k) == 0) return std::nullopt;
    if (mpz_root(den.get_mpz_t(), x.get_den_mpz_t(), k) == 0) return std::nullopt;
    return Rational(num, den);
}

// Evaluate with exponents scaled by r at t0 = q0^{1/r} (exact).
Rational eval_scaled(const QExpr& expr, const Rational& t0, const Integer& r) {
    Rational total = 0;
    for (const auto& [exponent, coeff] : expr.terms()) {
        Rational scaled = exponent * Rational(r);
        total += coeff * rational_pow(t0, scaled.get_num());
    }
    return total;
}

class MpfrValue {
public:
    explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~MpfrValue() { mpfr_clear(v_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

void mpfr_eval(mpfr_ptr out, const QExpr& expr, const Rational& q0, mpfr_prec_t prec) {
    MpfrValue base(prec), power(prec), exponent(prec), coeff(prec);
    mpfr_set_q(base.get(), q0.get_mpq_t(), MPFR_RNDN);
    mpfr_set_zero(out, 1);
    for (const auto& [e, c] : expr.terms()) {
        mpfr_set_q(exponent.get(), e.get_mpq_t(), MPFR_RNDN);
        mpfr_pow(power.get(), base.get(), exponent.get(), MPFR_RNDN);
        mpfr_set_q(coeff.get(), c.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(power.get(), power.get(), coeff.get(), MPFR_RNDN);
        mpfr_add(out, out, power.get(), MPFR_RNDN);
    }
}

} // namespace

Rational qe_eval(const QExpr& expr, const Rational& q0) {
    if (!expr.has_integral_exponents()) {
        throw DomainError("exact evaluation needs integral exponents; request a real approximation");
    }
    return eval_scaled(expr, q0, Integer(1));
}

Rational qe_eval(const QFrac& expr, const Rational& q0) {
    Rational den = qe_eval(expr.den(), q0);
    if (den == 0) {
        throw PoleError("denominator vanishes at q = " + q0.get_str());
    }
    return qe_eval(expr.num(), q0) / den;
}

RealValue qe_eval_real(const QFrac& expr, const Rational& q0, double precision) {
    if (q0 <= 0) {
        throw DomainError("real evaluation needs q0 > 0");
    }
    if (!(precision > 0)) {
        throw DomainError("precision must be positive");
    }
    Integer r = expr.num().exponent_denominator();
    Integer rd = expr.den().exponent_denominator();
    mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), rd.get_mpz_t());

    // Poles are detected exactly whenever t0 = q0^{1/r} is rational.
    std::optional<Rational> t0 = exact_root(q0, r);
    if (t0 && eval_scaled(expr.den(), *t0, r) == 0) {
        throw PoleError("denominator vanishes at q = " + q0.get_str());
    }

    const int digits = std::max(1, static_cast<int>(std::ceil(-std::log10(precision))));
    double magnitude_bits = 0.0;
    for (const auto* part : {&expr.num(), &expr.den()}) {
        for (const auto& [e, c] : part->terms()) {
            double bits = std::fabs(e.get_d()) * std::fabs(std::log2(q0.get_d())) +
                          static_cast<double>(mpz_sizeinbase(c.get_num_mpz_t(), 2));
            magnitude_bits = std::max(magnitude_bits, bits);
        }
    }
    const auto prec = static_cast<mpfr_prec_t>(128 + 4 * digits + 2 * magnitude_bits);

    MpfrValue num(prec), den(prec);
    mpfr_eval(num.get(), expr.num(), q0, prec);
    mpfr_eval(den.get(), expr.den(), q0, prec);
    if (mpfr_zero_p(den.get()) || mpfr_get_exp(den.get()) < -static_cast<long>(prec / 2)) {
        throw PoleError("denominator vanishes at q = " + q0.get_str());
    }
    mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDN);

    RealValue out;
    out.value = mpfr_get_d(num.get(), MPFR_RNDN);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", digits, num.get());
    out.decimal = buf;
    mpfr_free_str(buf);
    return out;
}

std::string to_string(const ExtendedValue& v) {
    if (is_infinite(v)) {
        return "Infinite";
    }
    return std::get<QFrac>(v).to_string();
}

} // namespace wmk
