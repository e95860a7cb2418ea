// radmach: Rademacher sums and series for Gamma_0(n) with eta-power and
// rho_{n|h} multiplier systems.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "radmach/json_out.hpp"
#include "radmach/kloosterman.hpp"
#include "radmach/qseries.hpp"
#include "radmach/radseries.hpp"
#include "radmach/radsums.hpp"
#include "radmach/verify.hpp"

using namespace radmach;

namespace {

constexpr int EXIT_VALIDATION = 2;
constexpr int EXIT_NUMERIC = 3;

GroupSpec parse_group(const std::string& s) {
    if (s.rfind("gamma0:", 0) != 0)
        throw std::invalid_argument("group must be gamma0:<n>");
    std::int64_t n = std::stoll(s.substr(7));
    if (n < 1) throw std::invalid_argument("group level must be positive");
    return GroupSpec{n, 1};
}

Complex parse_tau(const std::string& s) {
    // <re>+<im>i or <re>-<im>i, e.g. 0+1i, 0.5+2i
    std::size_t pos = s.find_first_of("+-", 1);
    while (pos != std::string::npos && (s[pos - 1] == 'e' || s[pos - 1] == 'E'))
        pos = s.find_first_of("+-", pos + 1);
    if (pos == std::string::npos || s.back() != 'i')
        throw std::invalid_argument("tau must look like <re>+<im>i");
    double re = std::stod(s.substr(0, pos));
    double im = std::stod(s.substr(pos, s.size() - pos - 1));
    return {re, im};
}

struct ClassRow {
    std::int64_t n = 1, h = 1, chi = 24;
};

// Sectioned key/value class-data file:
//   [1A]
//   n = 1
//   h = 1
//   chi = 24
std::map<std::string, ClassRow> parse_class_file(std::istream& in) {
    std::map<std::string, ClassRow> rows;
    std::string line, current;
    while (std::getline(in, line)) {
        auto l = line.find_first_not_of(" \t");
        if (l == std::string::npos || line[l] == '#') continue;
        auto r = line.find_last_not_of(" \t\r");
        std::string t = line.substr(l, r - l + 1);
        if (t.front() == '[' && t.back() == ']') {
            current = t.substr(1, t.size() - 2);
            rows[current];
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos || current.empty())
            throw std::invalid_argument("malformed class file line: " + line);
        std::string key = t.substr(0, t.find_last_not_of(" \t", eq - 1) + 1);
        std::int64_t val = std::stoll(t.substr(eq + 1));
        if (key == "n") rows[current].n = val;
        else if (key == "h") rows[current].h = val;
        else if (key == "chi") rows[current].chi = val;
        else throw std::invalid_argument("unknown class key '" + key + "'");
    }
    return rows;
}

struct CommonArgs {
    std::string group = "gamma0:1";
    std::string multiplier = "trivial";
    std::string weight = "0";
    std::string mu = "-1";
    std::string cls, class_file;
    std::int64_t cmax = 1000;
    int window = 0;
    int threads = 0;
    bool use_cache = false;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_weight_mu = true) {
    cmd->add_option("--group", a.group, "gamma0:<n>");
    cmd->add_option("--multiplier", a.multiplier, "trivial | eta:<s> | rho:<n>|<h>, '*'-joined");
    if (with_weight_mu) {
        cmd->add_option("--weight", a.weight, "rational p/q");
        cmd->add_option("--mu", a.mu, "rational p/q");
    }
    cmd->add_option("--class", a.cls, "Mathieu class name (overrides group/multiplier)");
    cmd->add_option("--class-file", a.class_file, "class-data config file");
    cmd->add_option("--cmax", a.cmax, "modulus truncation");
    cmd->add_option("--window", a.window, "trailing-window average width (0 = off)");
    cmd->add_option("--threads", a.threads, "worker threads (0 = machine parallelism)");
    cmd->add_flag("--cache", a.use_cache, "use RADMACH_CACHE_DIR for per-modulus sums");
}

struct Resolved {
    GroupSpec spec;
    MultiplierSystem sys;
    Rational weight, mu;
    SeriesOptions opt;
    std::optional<KloostermanCache> cache;
};

Resolved resolve(const CommonArgs& a, bool with_weight_mu = true) {
    Resolved r{parse_group(a.group), MultiplierSystem::parse(a.multiplier), Rational(0),
               Rational(0), {}, std::nullopt};
    if (!a.cls.empty()) {
        std::map<std::string, ClassRow> rows = {{"1A", ClassRow{}}}; // bundled identity class
        if (!a.class_file.empty()) {
            std::ifstream in(a.class_file);
            if (!in) throw std::invalid_argument("cannot open class file " + a.class_file);
            auto extra = parse_class_file(in);
            rows.insert(extra.begin(), extra.end());
        }
        auto it = rows.find(a.cls);
        if (it == rows.end()) throw std::invalid_argument("unknown class '" + a.cls + "'");
        r.spec = GroupSpec{it->second.n, 1};
        r.sys = MultiplierSystem::product({MultiplierSystem::rho_nh(it->second.n, it->second.h),
                                           MultiplierSystem::eta_power(-3)});
    }
    if (with_weight_mu) {
        r.weight = Rational::parse(a.weight);
        r.mu = Rational::parse(a.mu);
    }
    if (r.spec.level % r.sys.level() != 0)
        throw std::invalid_argument("multiplier requires level divisible by " +
                                    std::to_string(r.sys.level()));
    r.opt.c_max = a.cmax;
    r.opt.window = a.window;
    r.opt.threads = a.threads;
    if (a.use_cache) {
        r.cache = KloostermanCache::from_env();
        if (r.cache) r.opt.cache = &*r.cache;
    }
    return r;
}

void emit_series_csv(const std::string& group, const std::string& mult, const Rational& w,
                     const Rational& mu, const Rational& nu, const SeriesResult& res) {
    std::cout << "# group=" << group << " multiplier=" << mult << " weight=" << w.str()
              << " mu=" << mu.str() << " nu=" << nu.str() << " c_max=" << res.c_max
              << " window=" << res.window << "\n";
    std::cout << "c,partial_re,partial_im\n";
    for (const auto& [c, s] : res.partial_sums)
        std::cout << c << ',' << fmt_double(s.real()) << ',' << fmt_double(s.imag()) << "\n";
    std::cout << "value," << fmt_double(res.value.real()) << ',' << fmt_double(res.value.imag())
              << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"Rademacher sums and series engine"};
    app.require_subcommand(1);

    CommonArgs ca;
    std::string nu_str, nu_range, format = "json";
    auto* coeff = app.add_subcommand("coeff", "Rademacher series coefficient c(mu,nu)");
    add_common(coeff, ca);
    coeff->add_option("--nu", nu_str, "rational p/q");
    coeff->add_option("--nu-range", nu_range, "a..b over the spectral grid");
    coeff->add_option("--format", format, "json | csv");

    CommonArgs qa;
    int terms = 8;
    auto* qexp = app.add_subcommand("qexp", "q-expansion of the Rademacher sum");
    add_common(qexp, qa);
    qexp->add_option("--terms", terms, "number of grid coefficients");
    bool shadow = false, eichler = false;
    qexp->add_flag("--shadow", shadow, "emit the shadow expansion instead");
    qexp->add_flag("--eichler", eichler, "emit the Eichler integral instead");

    CommonArgs ea;
    std::string tau_str = "0+1i";
    double K = 100.0;
    std::int64_t cmax_const = 2000;
    auto* eval = app.add_subcommand("eval", "pointwise Rademacher sum over the K-box");
    add_common(eval, ea);
    eval->add_option("--tau", tau_str, "<re>+<im>i");
    eval->add_option("--K", K, "box parameter (|c|<K, |d|<K^2)");
    eval->add_option("--cmax-const", cmax_const, "truncation for the constant-term series");

    CommonArgs da;
    std::string kind = "zagier", dnu = "1";
    auto* dual = app.add_subcommand("duality", "duality residuals");
    add_common(dual, da);
    dual->add_option("--kind", kind, "zagier | eichler | derivative");
    dual->add_option("--nu", dnu, "rational p/q (or n count for derivative)");

    CommonArgs za;
    std::string znu = "1", zmu = "0", s_str = "1";
    auto* zeta = app.add_subcommand("zeta", "truncated Kloosterman zeta");
    add_common(zeta, za, false);
    zeta->add_option("--mu", zmu, "rational p/q");
    zeta->add_option("--nu", znu, "rational p/q");
    zeta->add_option("--s", s_str, "real (or <re>+<im>i)");

    std::string suite;
    int vthreads = 0;
    bool vquick = false;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", suite, "suite name or 'all'")->required();
    ver->add_option("--threads", vthreads, "worker threads");
    ver->add_flag("--quick", vquick, "reduced truncations (smoke run)");

    std::string series_name = "mathieuH", order_str = "10";
    auto* orc = app.add_subcommand("oracle", "dump exact q-series coefficients");
    orc->add_option("--series", series_name,
                    "eta:<p> | j | J | mathieuH | level2 | eisenstein:<2k> | unary:<l>,<r> | "
                    "theta:<i>,<0|half>");
    orc->add_option("--order", order_str, "truncation exponent (rational)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e); // prints the message / help text
        return rc == 0 ? 0 : EXIT_VALIDATION;
    }

    if (coeff->parsed()) {
        auto r = resolve(ca);
        std::vector<Rational> nus;
        if (!nu_range.empty()) {
            auto dots = nu_range.find("..");
            if (dots == std::string::npos)
                throw std::invalid_argument("--nu-range must look like a..b");
            Rational lo = Rational::parse(nu_range.substr(0, dots));
            Rational hi = Rational::parse(nu_range.substr(dots + 2));
            Rational step(1, r.spec.width);
            Rational alpha = alpha_at_infinity(r.sys, r.spec.width);
            Rational nu = (-alpha).mod1() / Rational(r.spec.width);
            while (nu > lo) nu -= step;
            while (nu < lo) nu += step;
            for (; !(nu > hi); nu += step) nus.push_back(nu);
            if (nus.empty()) throw std::invalid_argument("empty --nu-range over the grid");
        } else if (!nu_str.empty()) {
            nus.push_back(Rational::parse(nu_str));
        } else {
            throw std::invalid_argument("coeff needs --nu or --nu-range");
        }
        std::vector<IndexPair> pairs;
        for (const auto& nu : nus) pairs.push_back({r.mu, nu});
        auto res = coefficient_batch(r.spec, r.sys, r.weight, pairs, r.opt);
        for (std::size_t i = 0; i < res.size(); ++i) {
            if (format == "csv")
                emit_series_csv(ca.group, r.sys.str(), r.weight, r.mu, nus[i], res[i]);
            else
                std::cout << series_result_json(ca.group, r.sys.str(), r.weight, r.mu, nus[i],
                                                res[i])
                          << "\n";
        }
        return 0;
    }

    if (qexp->parsed()) {
        auto r = resolve(qa);
        QExpansion q;
        if (shadow) q = shadow_expansion(r.spec, r.sys, r.weight, r.mu, terms, r.opt);
        else if (eichler) q = eichler_integral(r.spec, r.sys, r.weight, r.mu, terms, r.opt);
        else q = q_expansion(r.spec, r.sys, r.weight, r.mu, terms, r.opt);
        std::cout << qexpansion_json(qa.group, r.sys.str(), r.weight, r.mu, r.opt.c_max,
                                     r.opt.window, q)
                  << "\n";
        return 0;
    }

    if (eval->parsed()) {
        auto r = resolve(ea);
        SumOptions su;
        su.K = K;
        su.threads = ea.threads;
        su.c_max_for_const = cmax_const;
        auto res = sum_eval(r.spec, r.sys, r.weight, r.mu, parse_tau(tau_str), su);
        std::ostringstream os;
        os << "{\"group\":\"" << json_escape(ea.group) << "\",\"multiplier\":\""
           << json_escape(r.sys.str()) << "\",\"weight\":\"" << r.weight.str() << "\",\"mu\":\""
           << r.mu.str() << "\",\"tau\":\"" << tau_str << "\",\"K\":" << fmt_double(res.K)
           << ",\"value_re\":" << fmt_double(res.value.real())
           << ",\"value_im\":" << fmt_double(res.value.imag()) << ",\"trace\":[";
        for (std::size_t i = 0; i < res.trace.size(); ++i) {
            if (i) os << ',';
            os << '[' << fmt_double(res.trace[i].first) << ','
               << fmt_double(res.trace[i].second.real()) << ','
               << fmt_double(res.trace[i].second.imag()) << ']';
        }
        os << "]}";
        std::cout << os.str() << "\n";
        return 0;
    }

    if (dual->parsed()) {
        auto r = resolve(da);
        double residual;
        if (kind == "zagier")
            residual = zagier_duality_residual(r.spec, r.sys, r.weight, r.mu,
                                               Rational::parse(dnu), r.opt);
        else if (kind == "eichler")
            residual = eichler_duality_residual(r.spec, r.sys, r.weight, r.mu,
                                                Rational::parse(dnu), r.opt);
        else if (kind == "derivative")
            residual = derivative_relation_residual(r.spec, -r.mu.num(),
                                                    (int)Rational::parse(dnu).num(), r.opt);
        else
            throw std::invalid_argument("duality kind must be zagier|eichler|derivative");
        std::cout << "{\"kind\":\"" << kind << "\",\"group\":\"" << json_escape(da.group)
                  << "\",\"multiplier\":\"" << json_escape(r.sys.str()) << "\",\"weight\":\""
                  << r.weight.str() << "\",\"mu\":\"" << r.mu.str() << "\",\"nu\":\""
                  << Rational::parse(dnu).str() << "\",\"c_max\":" << r.opt.c_max
                  << ",\"residual\":" << fmt_double(residual) << "}\n";
        return 0;
    }

    if (zeta->parsed()) {
        auto r = resolve(za, false);
        Rational mu = Rational::parse(zmu), nu = Rational::parse(znu);
        Complex s;
        if (s_str.find('i') != std::string::npos) s = parse_tau(s_str);
        else s = {std::stod(s_str), 0.0};
        auto res = kloosterman_zeta_partial(r.spec, r.sys, mu, nu, s, za.cmax, za.threads);
        std::ostringstream os;
        os << "{\"group\":\"" << json_escape(za.group) << "\",\"multiplier\":\""
           << json_escape(r.sys.str()) << "\",\"mu\":\"" << mu.str() << "\",\"nu\":\""
           << nu.str() << "\",\"s_re\":" << fmt_double(s.real())
           << ",\"s_im\":" << fmt_double(s.imag()) << ",\"c_max\":" << za.cmax
           << ",\"value_re\":" << fmt_double(res.value.real())
           << ",\"value_im\":" << fmt_double(res.value.imag()) << ",\"partial_sums\":[";
        for (std::size_t i = 0; i < res.partial_sums.size(); ++i) {
            if (i) os << ',';
            os << '[' << res.partial_sums[i].first << ','
               << fmt_double(res.partial_sums[i].second.real()) << ','
               << fmt_double(res.partial_sums[i].second.imag()) << ']';
        }
        os << "]}";
        std::cout << os.str() << "\n";
        return 0;
    }

    if (ver->parsed()) {
        verify::VerifyOptions vo;
        vo.threads = vthreads;
        vo.quick = vquick;
        bool pass = true;
        auto names = (suite == "all") ? verify::suite_names() : std::vector<std::string>{suite};
        for (const auto& name : names) {
            auto rep = verify::run_suite(name, vo);
            verify::print_report(rep, std::cout);
            pass = pass && rep.pass();
        }
        return pass ? 0 : 1;
    }

    if (orc->parsed()) {
        Rational order = Rational::parse(order_str);
        ExactQSeries s;
        if (series_name.rfind("eta:", 0) == 0)
            s = jacobi::eta_power(std::stoi(series_name.substr(4)), order);
        else if (series_name == "j")
            s = jacobi::j_oracle(order);
        else if (series_name == "J")
            s = jacobi::j_oracle(order) - ExactQSeries::constant(BigRational(744), order);
        else if (series_name == "mathieuH")
            s = jacobi::mathieu_H_series(order);
        else if (series_name == "level2")
            s = jacobi::level2_hauptmodul_oracle(order);
        else if (series_name.rfind("eisenstein:", 0) == 0)
            s = jacobi::eisenstein_series(std::stoi(series_name.substr(11)), order);
        else if (series_name.rfind("unary:", 0) == 0) {
            auto body = series_name.substr(6);
            auto comma = body.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("unary needs --series unary:<l>,<r>");
            s = jacobi::unary_theta(std::stoi(body.substr(0, comma)),
                                    std::stoi(body.substr(comma + 1)), order);
        } else if (series_name.rfind("theta:", 0) == 0) {
            auto body = series_name.substr(6);
            auto comma = body.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("theta needs --series theta:<i>,<0|half>");
            s = jacobi::theta_series(std::stoi(body.substr(0, comma)),
                                     body.substr(comma + 1) == "half", order);
        } else {
            throw std::invalid_argument("unknown oracle series '" + series_name + "'");
        }
        std::ostringstream os;
        os << "{\"series\":\"" << json_escape(series_name) << "\",\"order\":\"" << order.str()
           << "\",\"coefficients\":[";
        bool first = true;
        for (std::size_t k = 0; k < s.size(); ++k) {
            const auto& v = s.coeff_at_index(k);
            if (v == BigRational(0)) continue;
            if (!first) os << ',';
            first = false;
            Rational e = s.exponent(k);
            os << '[' << numerator(v).str() << ',' << denominator(v).str() << ',' << e.num()
               << ',' << e.den() << ']';
        }
        os << "]}";
        std::cout << os.str() << "\n";
        return 0;
    }
    return EXIT_VALIDATION;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    } catch (const std::runtime_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return EXIT_NUMERIC;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_NUMERIC;
    }
}
