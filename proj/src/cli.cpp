#include "wildmckay/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "wildmckay/acceptance.hpp"
#include "wildmckay/json_io.hpp"
#include "wildmckay/localfields.hpp"
#include "wildmckay/massformulas.hpp"
#include "wildmckay/mckay.hpp"
#include "wildmckay/padic.hpp"
#include "wildmckay/stringy.hpp"

namespace wmk::cli {

namespace {

using json_io::json;

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> summary;
    json data = json::object();
    bool ok = true;
};

struct Config {
    std::string format = "text";
    std::uint64_t budget = 0;
    unsigned workers = 1;
    std::string kernel;

    CountOptions count_options() const {
        CountOptions o;
        o.budget = budget;
        o.workers = workers;
        if (!kernel.empty()) {
            auto isa = kernels::parse_isa(kernel);
            if (!isa) throw MalformedInput("unknown kernel '" + kernel + "'");
            if (!kernels::isa_available(*isa)) throw DomainError("kernel '" + kernel + "' is not available here");
            o.isa = isa;
        }
        return o;
    }
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void render(const std::string& command, const Report& r, const std::string& format, std::ostream& out) {
    if (format == "json") {
        json doc = {{"command", command}, {"ok", r.ok}};
        for (auto it = r.data.begin(); it != r.data.end(); ++it) doc[it.key()] = it.value();
        out << doc.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_field(r.columns[i]);
        out << "\n";
        for (const auto& row : r.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
            out << "\n";
        }
        return;
    }
    out << command << "\n";
    if (!r.columns.empty()) {
        std::vector<std::size_t> width(r.columns.size());
        for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
        for (const auto& row : r.rows)
            for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out << "  ";
                if (i + 1 == cells.size()) {
                    out << cells[i];
                } else {
                    out << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
                }
            }
            out << "\n";
        };
        line(r.columns);
        for (const auto& row : r.rows) line(row);
    }
    for (const auto& [key, value] : r.summary) out << key << ": " << value << "\n";
    out << "status: " << (r.ok ? "ok" : "FAILED") << "\n";
}

void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
}

std::string yes_no(bool b) {
    return b ? "yes" : "no";
}

std::string decimal(const Rational& r) {
    std::ostringstream s;
    s << std::setprecision(12) << r.get_d();
    return s.str();
}

// mass ---------------------------------------------------------------------

Report mass_table(int n_max, bool serre, int f) {
    Report r;
    r.columns = {"n", serre ? "N(K_f,n)" : "M(K,n)"};
    json rows = json::array();
    for (int n = 1; n <= n_max; ++n) {
        const QExpr v = serre ? serre_mass(n, f) : bhargava_mass(n);
        r.rows.push_back({std::to_string(n), v.to_string()});
        rows.push_back({{"n", n}, {"value", json_io::to_json(v)}});
    }
    if (serre) r.data["f"] = f;
    r.data["masses"] = rows;
    return r;
}

Report mass_expcheck(int n_max) {
    Report r;
    r.columns = {"n", "exp coefficient", "bhargava", "match"};
    const TruncatedSeries m = mass_series_via_exp(n_max);
    json rows = json::array();
    int matched = 0;
    for (int n = 1; n <= n_max; ++n) {
        const QFrac coeff = m[static_cast<std::size_t>(n)];
        const QFrac expected(bhargava_mass(n));
        const bool ok = coeff == expected;
        matched += ok;
        r.ok = r.ok && ok;
        r.rows.push_back({std::to_string(n), coeff.to_string(), expected.to_string(), yes_no(ok)});
        rows.push_back({{"n", n}, {"coefficient", json_io::to_json(coeff)}, {"match", ok}});
    }
    r.summary.push_back({"matched", std::to_string(matched) + "/" + std::to_string(n_max)});
    r.data["rows"] = rows;
    return r;
}

Report mass_invert(int n_max, RecoveryMode mode) {
    Report r;
    r.columns = {"f", "m", "recovered N(K_f,m)", "q^(f(1-m))", "match"};
    const RamifiedMasses recovered = recover_N_from_M(bhargava_series(n_max), mode);
    json rows = json::array();
    for (const auto& [key, value] : recovered) {
        const auto [f, m] = key;
        const QFrac expected(serre_mass(m, f));
        const bool ok = value == expected;
        r.ok = r.ok && ok;
        r.rows.push_back({std::to_string(f), std::to_string(m), value.to_string(), expected.to_string(), yes_no(ok)});
        rows.push_back({{"f", f}, {"m", m}, {"value", json_io::to_json(value)}, {"match", ok}});
    }
    r.data["mode"] = mode == RecoveryMode::base_change ? "base_change" : "serre_assumed";
    r.data["rows"] = rows;
    return r;
}

// etale --------------------------------------------------------------------

Report etale_crossvalidate(const std::string& path, Report r = {}) {
    const std::vector<FieldFixture> fixtures = json_io::fixtures_from_json(json_io::read_json_file(path));
    const CrossValidationReport cv = crossvalidate_fixtures(fixtures);
    if (r.columns.empty()) r.columns = {"label", "status", "reason"};
    json mismatches = json::array();
    auto add = [&](const std::string& label, const std::string& status, const std::string& reason) {
        if (r.columns.size() == 3) r.rows.push_back({label, status, reason});
    };
    for (const auto& label : cv.matched) add(label, "matched", "");
    for (const auto& label : cv.uncheckable) add(label, "wild", "not covered by tame enumeration");
    for (const auto& m : cv.mismatches) {
        add(m.label, "MISMATCH", m.reason);
        mismatches.push_back({{"label", m.label}, {"reason", m.reason}});
    }
    r.summary.push_back({"fixtures matched", std::to_string(cv.matched.size())});
    r.summary.push_back({"fixtures wild (unchecked)", std::to_string(cv.uncheckable.size())});
    r.summary.push_back({"fixtures mismatched", std::to_string(cv.mismatches.size())});
    r.data["fixtures"] = {{"matched", cv.matched}, {"uncheckable", cv.uncheckable}, {"mismatches", mismatches}};
    r.ok = r.ok && cv.ok();
    return r;
}

Report etale_enumerate(std::uint64_t p, int n, const std::string& fixtures) {
    require_prime(p);
    Report r;
    r.columns = {"field class", "f", "e", "d", "aut"};
    const FieldEnumeration fields = enumerate_tame_field_classes(p, n);
    json classes = json::array();
    for (const TameFieldClass& cls : fields.classes) {
        r.rows.push_back({cls.label(), std::to_string(cls.f), std::to_string(cls.e),
                          std::to_string(cls.disc_exponent()), std::to_string(cls.aut_order())});
        json j = json_io::to_json(cls);
        j["label"] = cls.label();
        classes.push_back(j);
    }
    const AlgebraEnumeration algebras = enumerate_tame_etale_algebras(p, n);
    json alg = json::array();
    for (const EtaleAlgebra& a : algebras.algebras) {
        json j = json_io::to_json(a);
        j["label"] = a.label();
        alg.push_back(j);
    }
    json skipped = json::array();
    std::string skipped_text;
    for (const SkippedStratum& s : algebras.skipped) {
        skipped.push_back({{"f", s.f}, {"e", s.e}});
        skipped_text += (skipped_text.empty() ? "" : " ") + std::string("(f=") + std::to_string(s.f) +
                        ",e=" + std::to_string(s.e) + ")";
    }
    r.summary.push_back({"field classes", std::to_string(fields.classes.size())});
    r.summary.push_back({"etale algebras", std::to_string(algebras.algebras.size())});
    r.summary.push_back({"complete", yes_no(algebras.complete)});
    if (!algebras.complete) r.summary.push_back({"skipped wild strata", skipped_text});
    r.data["p"] = p;
    r.data["n"] = n;
    r.data["field_classes"] = classes;
    r.data["algebras"] = alg;
    r.data["complete"] = algebras.complete;
    r.data["skipped"] = skipped;
    if (!fixtures.empty()) r = etale_crossvalidate(fixtures, std::move(r));
    return r;
}

Report etale_mass(std::uint64_t p, int n) {
    require_prime(p);
    Report r;
    const Rational total = algebra_mass_sum(p, n);  // throws when incomplete
    r.columns = {"algebra", "d", "aut", "p^-d/aut"};
    const Rational q0(static_cast<unsigned long>(p));
    for (const EtaleAlgebra& a : enumerate_tame_etale_algebras(p, n).algebras) {
        const Rational term = qe_eval(QExpr::q_power(Rational(-a.disc_exponent())), q0) / Rational(a.aut_order());
        r.rows.push_back({a.label(), std::to_string(a.disc_exponent()), a.aut_order().get_str(), to_string(term)});
    }
    const Rational expected = qe_eval(bhargava_mass(n), q0);
    r.ok = total == expected;
    r.summary.push_back({"mass sum", to_string(total)});
    r.summary.push_back({"bhargava", to_string(expected)});
    r.data["p"] = p;
    r.data["n"] = n;
    r.data["algebras"] = r.rows.size();
    r.data["mass_sum"] = json_io::rational_to_json(total);
    r.data["bhargava"] = json_io::rational_to_json(expected);
    return r;
}

// mckay --------------------------------------------------------------------

Report mckay_verify(std::uint64_t p, int n, const std::string& table_path) {
    require_prime(p);
    const McKayReport report = verify_wild_mckay(p, n);
    Report r;
    r.columns = {"algebra", "d", "v", "w", "aut", "term"};
    for (const McKayTerm& t : report.breakdown) {
        r.rows.push_back({t.weights.algebra.label(), std::to_string(t.weights.algebra.disc_exponent()),
                          std::to_string(t.weights.v), std::to_string(t.weights.w),
                          t.weights.centralizer_order.get_str(), to_string(t.term)});
    }
    r.ok = report.passed();
    r.summary.push_back({"mass side", to_string(report.mass_side)});
    r.summary.push_back({"hilbert side", to_string(report.hilbert_side)});
    r.data["p"] = p;
    r.data["n"] = n;
    r.data["mass_side"] = json_io::rational_to_json(report.mass_side);
    r.data["hilbert_side"] = json_io::rational_to_json(report.hilbert_side);
    r.data["breakdown"] = json_io::breakdown_to_json(report);
    if (!table_path.empty()) {
        std::ofstream f(table_path);
        if (!f) throw MalformedInput("cannot write " + table_path);
        f << json_io::breakdown_to_json(report).dump(2) << "\n";
    }
    return r;
}

// stringy ------------------------------------------------------------------

void add_value(Report& r, const StringyValue& v, const std::string& at_q, double precision) {
    r.columns = {"quantity", "value"};
    r.rows.push_back({"stringy count", to_string(v)});
    r.data["value"] = json_io::to_json(v);
    if (at_q.empty()) return;
    const Rational q0 = parse_rational(at_q);
    r.data["at_q"] = json_io::rational_to_json(q0);
    if (is_infinite(v)) {
        r.rows.push_back({"at q=" + to_string(q0), "Infinite"});
        return;
    }
    const QFrac& f = std::get<QFrac>(v);
    if (f.num().has_integral_exponents() && f.den().has_integral_exponents()) {
        const Rational exact = qe_eval(f, q0);
        r.rows.push_back({"at q=" + to_string(q0), to_string(exact)});
        r.data["exact"] = json_io::rational_to_json(exact);
    }
    const RealValue real = qe_eval_real(f, q0, precision);
    r.rows.push_back({"at q=" + to_string(q0) + " (real)", real.decimal});
    r.data["decimal"] = real.decimal;
    r.data["precision"] = precision;
}

// padic --------------------------------------------------------------------

PolySystem load_system(const std::string& path) {
    return json_io::poly_system_from_json(json_io::read_json_file(path));
}

Report padic_count(const std::string& path, int m, const Config& cfg) {
    const PolySystem sys = load_system(path);
    const ResidueCount c = count_points_mod(sys, m, cfg.count_options());
    Report r;
    r.columns = {"m", "count", "count/p^(md)"};
    r.rows.push_back({std::to_string(c.m), c.count.get_str(), to_string(c.normalized)});
    r.data["m"] = c.m;
    r.data["count"] = json_io::integer_to_json(c.count);
    r.data["normalized"] = json_io::rational_to_json(c.normalized);
    return r;
}

Report padic_measure(const std::string& path, int m_max, const Config& cfg) {
    const PolySystem sys = load_system(path);
    Report r;
    const SmoothMeasureReport rep = smooth_measure_check(sys, m_max, cfg.count_options());
    r.columns = {"m", "count", "count/p^(md)"};
    json levels = json::array();
    for (const ResidueCount& c : rep.levels) {
        r.rows.push_back({std::to_string(c.m), c.count.get_str(), to_string(c.normalized)});
        levels.push_back({{"m", c.m},
                          {"count", json_io::integer_to_json(c.count)},
                          {"normalized", json_io::rational_to_json(c.normalized)}});
    }
    r.summary.push_back({"points mod p", rep.points_mod_p.get_str()});
    r.summary.push_back({"measure", to_string(rep.measure)});
    r.data["levels"] = levels;
    r.data["points_mod_p"] = json_io::integer_to_json(rep.points_mod_p);
    r.data["measure"] = json_io::rational_to_json(rep.measure);
    return r;
}

Report padic_integral(const std::string& c_text, std::uint64_t p, int terms) {
    const Rational c = parse_rational(c_text);
    const MonomialIntegral mi = monomial_integral(c, p, terms);
    Report r;
    r.columns = {"quantity", "value"};
    std::ostringstream partial;
    partial << std::setprecision(17) << mi.partial;
    r.rows.push_back({"partial sum (" + std::to_string(terms) + " terms)", partial.str()});
    r.rows.push_back({"closed form", to_string(mi.exact)});
    r.data["c"] = json_io::rational_to_json(c);
    r.data["p"] = p;
    r.data["terms"] = terms;
    r.data["partial"] = mi.partial;
    r.data["exact"] = json_io::to_json(mi.exact);
    if (!is_infinite(mi.exact)) {
        const RealValue v = qe_eval_real(std::get<QFrac>(mi.exact), Rational(static_cast<unsigned long>(p)), 1e-15);
        r.rows.push_back({"closed form at q=" + std::to_string(p), v.decimal});
        r.data["exact_decimal"] = v.decimal;
    }
    return r;
}

Report padic_nullset(const std::string& path, int m, const Config& cfg) {
    const PolySystem sys = load_system(path);
    const CountOptions options = cfg.count_options();
    int lo = m, hi = m;
    if (m <= 0) {
        lo = 1;
        hi = largest_affordable_level(sys, options.budget);
        if (hi < 1) throw BudgetExceeded(0, options.budget);
    }
    Report r;
    r.columns = {"m", "fraction", "approx"};
    json rows = json::array();
    for (int k = lo; k <= hi; ++k) {
        const Rational f = null_set_fraction(sys, k, options);
        r.rows.push_back({std::to_string(k), to_string(f), decimal(f)});
        rows.push_back({{"m", k}, {"fraction", json_io::rational_to_json(f)}});
    }
    r.data["levels"] = rows;
    return r;
}

// selftest -----------------------------------------------------------------

Report selftest(int only, const Config& cfg) {
    acceptance::Options options;
    options.workers = cfg.workers;
    options.isa = cfg.count_options().isa;
    std::vector<acceptance::CriterionResult> results;
    if (only > 0) {
        results.push_back(acceptance::run_criterion(only, options));
    } else {
        results = acceptance::run_all(options);
    }
    Report r;
    r.columns = {"id", "criterion", "result", "detail"};
    json rows = json::array();
    for (const auto& c : results) {
        r.ok = r.ok && c.passed;
        r.rows.push_back({std::to_string(c.id), c.name, c.passed ? "PASS" : "FAIL", c.detail});
        rows.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    r.data["criteria"] = rows;
    return r;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verification of mass formulas, stringy counts and the wild McKay correspondence"};
    app.name("wildmckay");
    app.fallthrough();
    app.require_subcommand(1);

    Config cfg;
    std::uint64_t budget = 0;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--budget", budget, "Maximum number of residue points to enumerate (default: WMK_BUDGET or 1e8)");
    app.add_option("--workers", cfg.workers, "Worker threads for residue counting")->check(CLI::Range(1u, 256u));
    app.add_option("--kernel", cfg.kernel, "Counting kernel: scalar, avx2 or neon");

    std::string command;
    std::function<Report()> action;

    // mass
    auto* mass = app.add_subcommand("mass", "Serre and Bhargava mass formulas");
    mass->require_subcommand(1);
    int n_max = kDefaultTruncation;
    int serre_f = 1;
    std::string mode = "base_change";
    auto add_nmax = [&](CLI::App* sub) {
        sub->add_option("--nmax", n_max, "Largest degree")->check(CLI::Range(1, 40));
    };
    auto* m_serre = mass->add_subcommand("serre", "Serre's mass q^(f(1-n))");
    add_nmax(m_serre);
    m_serre->add_option("--f", serre_f, "Residue degree of the base")->check(CLI::Range(1, 40));
    m_serre->callback([&] { command = "mass serre"; action = [&] { return mass_table(n_max, true, serre_f); }; });
    auto* m_bhar = mass->add_subcommand("bhargava", "Bhargava's mass of degree-n etale algebras");
    add_nmax(m_bhar);
    m_bhar->callback([&] { command = "mass bhargava"; action = [&] { return mass_table(n_max, false, 1); }; });
    auto* m_exp = mass->add_subcommand("expcheck", "Compare the exponential formula with Bhargava's masses");
    add_nmax(m_exp);
    m_exp->callback([&] { command = "mass expcheck"; action = [&] { return mass_expcheck(n_max); }; });
    auto* m_inv = mass->add_subcommand("invert", "Recover Serre's masses from Bhargava's");
    add_nmax(m_inv);
    m_inv->add_option("--mode", mode, "Recovery of N(K_f, m) for f > 1")
        ->check(CLI::IsMember({"base_change", "serre_assumed"}));
    m_inv->callback([&] {
        command = "mass invert";
        action = [&] {
            return mass_invert(n_max, mode == "base_change" ? RecoveryMode::base_change : RecoveryMode::serre_assumed);
        };
    });

    // etale
    auto* etale = app.add_subcommand("etale", "Tame local fields and etale algebras over Q_p");
    etale->require_subcommand(1);
    std::uint64_t p = 0;
    int n = 0;
    std::string fixtures;
    auto* e_enum = etale->add_subcommand("enumerate", "List tame field classes and count etale algebras");
    e_enum->add_option("--p", p, "Prime")->required();
    e_enum->add_option("--n", n, "Degree")->required()->check(CLI::Range(1, 12));
    e_enum->add_option("--fixtures", fixtures, "Fixture file to cross-validate against");
    e_enum->callback([&] { command = "etale enumerate"; action = [&] { return etale_enumerate(p, n, fixtures); }; });
    auto* e_mass = etale->add_subcommand("mass", "Sum p^-d/#Aut over etale algebras and compare with Bhargava");
    e_mass->add_option("--p", p, "Prime")->required();
    e_mass->add_option("--n", n, "Degree")->required()->check(CLI::Range(1, 12));
    e_mass->callback([&] { command = "etale mass"; action = [&] { return etale_mass(p, n); }; });
    auto* e_cv = etale->add_subcommand("crossvalidate", "Match fixture records with enumerated classes");
    e_cv->add_option("--fixtures", fixtures, "Fixture file")->required();
    e_cv->callback([&] { command = "etale crossvalidate"; action = [&] { return etale_crossvalidate(fixtures); }; });

    // mckay
    auto* mckay = app.add_subcommand("mckay", "Wild McKay correspondence for S_n");
    mckay->require_subcommand(1);
    std::string table;
    auto* k_ver = mckay->add_subcommand("verify", "Compare the mass side with the Hilbert scheme count");
    k_ver->add_option("--p", p, "Prime")->required();
    k_ver->add_option("--n", n, "Degree")->required()->check(CLI::Range(1, 12));
    k_ver->add_option("--table", table, "Write the breakdown table as JSON");
    k_ver->callback([&] { command = "mckay verify"; action = [&] { return mckay_verify(p, n, table); }; });

    // stringy
    auto* stringy = app.add_subcommand("stringy", "Stringy point counts of SNC log pairs");
    stringy->require_subcommand(1);
    std::string input, at_q, a_text = "0";
    std::vector<std::string> cs;
    double precision = 1e-12;
    auto* s_eval = stringy->add_subcommand("eval", "Evaluate a pair described by a JSON file");
    s_eval->add_option("--input", input, "SNC pair JSON")->required();
    s_eval->add_option("--at-q", at_q, "Evaluate at q = Q");
    s_eval->add_option("--precision", precision, "Absolute precision of real evaluation")->check(CLI::PositiveNumber);
    s_eval->callback([&] {
        command = "stringy eval";
        action = [&] {
            Report r;
            add_value(r, stringy_count_snc(json_io::snc_from_json(json_io::read_json_file(input))), at_q, precision);
            return r;
        };
    });
    auto* s_point = stringy->add_subcommand("point", "Contribution of one point");
    s_point->add_option("--a", a_text, "Vertical coefficient");
    s_point->add_option("--c", cs, "Horizontal coefficients (repeatable)");
    s_point->add_option("--at-q", at_q, "Evaluate at q = Q");
    s_point->add_option("--precision", precision, "Absolute precision of real evaluation")->check(CLI::PositiveNumber);
    s_point->callback([&] {
        command = "stringy point";
        action = [&] {
            std::vector<Rational> coeffs;
            for (const auto& c : cs) coeffs.push_back(parse_rational(c));
            Report r;
            add_value(r, stringy_point_contribution(parse_rational(a_text), coeffs), at_q, precision);
            return r;
        };
    });

    // padic
    auto* padic = app.add_subcommand("padic", "Brute-force p-adic measures");
    padic->require_subcommand(1);
    int m = 0;
    std::string c_text;
    int terms = 60;
    auto* p_count = padic->add_subcommand("count", "Count solutions mod p^m");
    p_count->add_option("--input", input, "PolySystem JSON")->required();
    p_count->add_option("--m", m, "Level")->required()->check(CLI::Range(1, 64));
    p_count->callback([&] { command = "padic count"; action = [&] { return padic_count(input, m, cfg); }; });
    auto* p_meas = padic->add_subcommand("measure", "Check the smooth measure formula up to level mmax");
    p_meas->add_option("--input", input, "PolySystem JSON")->required();
    p_meas->add_option("--mmax", m, "Largest level")->required()->check(CLI::Range(1, 64));
    p_meas->callback([&] { command = "padic measure"; action = [&] { return padic_measure(input, m, cfg); }; });
    auto* p_int = padic->add_subcommand("integral", "Integral of |x|^-c over the maximal ideal");
    p_int->add_option("--c", c_text, "Exponent c")->required();
    p_int->add_option("--p", p, "Prime")->required();
    p_int->add_option("--terms", terms, "Terms of the partial sum")->check(CLI::Range(1, 100000));
    p_int->callback([&] { command = "padic integral"; action = [&] { return padic_integral(c_text, p, terms); }; });
    auto* p_null = padic->add_subcommand("nullset", "Fraction of (Z/p^m)^n on the zero set");
    p_null->add_option("--input", input, "PolySystem JSON")->required();
    p_null->add_option("--m", m, "Level (default: every affordable level)")->check(CLI::Range(1, 64));
    p_null->callback([&] { command = "padic nullset"; action = [&] { return padic_nullset(input, m, cfg); }; });

    // selftest
    int criterion = 0;
    auto* self = app.add_subcommand("selftest", "Run every acceptance criterion");
    self->add_option("--criterion", criterion, "Run only this criterion")
        ->check(CLI::Range(1, acceptance::kCriterionCount));
    self->callback([&] { command = "selftest"; action = [&] { return selftest(criterion, cfg); }; });

    std::vector<const char*> argv;
    argv.push_back("wildmckay");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (budget > 0) {
            cfg.budget = budget;
        } else if (app.count("--budget") > 0) {
            throw DomainError("budget must be positive");
        } else {
            cfg.budget = default_budget();
        }
        cfg.count_options();  // validates --kernel up front
        const Report r = action();
        render(command, r, cfg.format, out);
        return r.ok ? 0 : 1;
    } catch (const HenselMismatch& e) {
        err << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const json_io::json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return 2;
    }
}

} // namespace wmk::cli
