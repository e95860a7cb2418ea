#include "radmach/radseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "radmach/arith.hpp"
#include "radmach/special.hpp"

namespace radmach {

namespace {

constexpr double TWO_PI = 6.283185307179586476925286766559;

void check_branch(const Rational& w, const Rational& mu) {
    if (w < Rational(1) && mu > Rational(0))
        throw std::invalid_argument("weight < 1 requires a non-positive index mu");
}

// Least-squares fit of log|increment| against log c over the last decade of
// moduli, extrapolated to a geometric tail estimate.
double fit_tail(const std::vector<std::pair<std::int64_t, Complex>>& partials,
                const std::vector<Complex>& increments) {
    if (increments.size() < 8) return std::numeric_limits<double>::infinity();
    std::size_t lo = increments.size() / 10; // last decade: c in (c_max/10, c_max]
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = lo; i < increments.size(); ++i) {
        double a = std::abs(increments[i]);
        if (a < 1e-300) continue;
        double x = std::log((double)partials[i].first);
        double y = std::log(a);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 4) return std::numeric_limits<double>::infinity();
    double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12) return std::numeric_limits<double>::infinity();
    double slope = (n * sxy - sx * sy) / det;
    double inter = (sy * sxx - sx * sxy) / det;
    double p = -slope;
    double cmax = (double)partials.back().first;
    if (p <= 1.05) return std::numeric_limits<double>::infinity();
    // sum_{c > cmax} A c^{-p} ~ A cmax^{1-p}/(p-1)
    return std::exp(inter) * std::pow(cmax, 1.0 - p) / (p - 1.0);
}

SeriesResult assemble(const GroupSpec& spec, const std::vector<Complex>& sums,
                      const std::vector<Complex>& kernels, const SeriesOptions& opt) {
    SeriesResult r;
    r.c_max = opt.c_max;
    r.partial_sums.reserve(sums.size());
    std::vector<Complex> increments(sums.size());
    double cr = 0, ci = 0, sr = 0, si = 0; // compensated accumulation
    for (std::size_t i = 0; i < sums.size(); ++i) {
        Complex t = sums[i] * kernels[i] / (double)spec.width;
        increments[i] = t;
        double yr = t.real() - cr, yi = t.imag() - ci;
        double tr = sr + yr, ti = si + yi;
        cr = (tr - sr) - yr;
        ci = (ti - si) - yi;
        sr = tr;
        si = ti;
        r.partial_sums.emplace_back(spec.level * (std::int64_t)(i + 1), Complex(sr, si));
    }
    r.value = r.partial_sums.empty() ? Complex(0, 0) : r.partial_sums.back().second;
    if (opt.window > 0 && !r.partial_sums.empty()) {
        std::size_t w = std::min<std::size_t>(opt.window, r.partial_sums.size());
        Complex acc(0, 0);
        for (std::size_t i = r.partial_sums.size() - w; i < r.partial_sums.size(); ++i)
            acc += r.partial_sums[i].second;
        r.value = acc / (double)w;
        r.window = (int)w;
        r.window_applied = true;
    }
    r.tail_estimate = fit_tail(r.partial_sums, increments);
    r.converged = r.tail_estimate <= 1e-3 * std::max(1.0, std::abs(r.value));
    return r;
}

std::vector<Complex> kernels_over_moduli(const GroupSpec& spec, const Rational& w,
                                         const Rational& mu, const Rational& nu,
                                         std::int64_t c_max) {
    std::vector<Complex> ker;
    ker.reserve(c_max / spec.level);
    for (std::int64_t c = spec.level; c <= c_max; c += spec.level)
        ker.push_back(b_kernel(c, w, mu, nu));
    return ker;
}

double rel_residual(Complex a, Complex b) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale < 1e-30) return std::abs(a - b);
    return std::abs(a - b) / scale;
}

// First grid slot >= 0 for exponents nu with h*nu + alpha in Z:
// nu0 = ((-alpha) mod 1)/h.
Rational first_slot(const GroupSpec& spec, const Rational& alpha) {
    return (-alpha).mod1() / Rational(spec.width);
}

} // namespace

Complex b_kernel(std::int64_t c, const Rational& w, const Rational& mu, const Rational& nu) {
    if (c < 1) throw std::invalid_argument("b_kernel: need c > 0");
    const double wd = w.to_double();
    double s, t, u, v;
    if (wd >= 1.0) {
        s = wd;
        t = wd - 1.0;
        u = nu.to_double();
        v = -mu.to_double();
    } else {
        check_branch(w, mu);
        s = 2.0 - wd;
        t = 1.0 - wd;
        u = -mu.to_double();
        v = nu.to_double();
    }
    const Complex root = unit_phase((-(w / Rational(4))).mod1());
    const double x = TWO_PI / (double)c;
    if (u == 0.0) {
        // u^{k+t} kills every term except k = 0 when t = 0
        if (t == 0.0) return root * std::pow(x, s);
        return {0.0, 0.0};
    }
    // term_k = x^{2k+s} u^{k+t} v^k / (Gamma(k+t+1) k!): complex phase enters
    // only through u^t; the rest is a real iteration.
    Complex phase0 = special::principal_power(Complex(u, 0.0), t);
    double real0 = std::pow(x, s) * special::rgamma(t + 1.0);
    double term = real0, sum = real0;
    const double q = x * x * u * v; // signed ratio numerator
    for (int k = 1; k < 1000000; ++k) {
        term *= q / ((double)k * ((double)k + t));
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum) && k >= 4) break;
    }
    return root * phase0 * sum;
}

Complex b_kernel_bessel(std::int64_t c, const Rational& w, const Rational& mu,
                        const Rational& nu) {
    if (!(mu < Rational(0)) || !(nu > Rational(0)))
        throw std::invalid_argument("b_kernel_bessel: closed form needs mu < 0 < nu");
    double wd = w.to_double();
    double m = -mu.to_double(), n = nu.to_double();
    double arg = 4.0 * M_PI / (double)c * std::sqrt(m * n);
    double body = std::pow(m, (1.0 - wd) / 2.0) * std::pow(n, (wd - 1.0) / 2.0) *
                  (TWO_PI / (double)c) * special::bessel_i(std::abs(wd - 1.0), arg);
    return unit_phase((-(w / Rational(4))).mod1()) * body;
}

SeriesResult coefficient(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                         const Rational& mu, const Rational& nu, const SeriesOptions& opt) {
    check_branch(w, mu);
    auto sums = kloosterman_sums_batch(spec, sys, {{mu, nu}}, opt.c_max, opt.threads, opt.cache);
    auto kers = kernels_over_moduli(spec, w, mu, nu, opt.c_max);
    return assemble(spec, sums[0], kers, opt);
}

std::vector<SeriesResult> coefficient_batch(const GroupSpec& spec, const MultiplierSystem& sys,
                                            const Rational& w, const std::vector<IndexPair>& pairs,
                                            const SeriesOptions& opt) {
    for (const auto& p : pairs) check_branch(w, p.mu);
    auto sums = kloosterman_sums_batch(spec, sys, pairs, opt.c_max, opt.threads, opt.cache);
    std::vector<SeriesResult> out;
    out.reserve(pairs.size());
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        auto kers = kernels_over_moduli(spec, w, pairs[j].mu, pairs[j].nu, opt.c_max);
        out.push_back(assemble(spec, sums[j], kers, opt));
    }
    return out;
}

SeriesResult constant_term(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                           const Rational& mu, const SeriesOptions& opt) {
    if (w >= Rational(1)) {
        SeriesResult r;
        r.c_max = opt.c_max;
        r.value = {0.0, 0.0};
        r.converged = true;
        r.tail_estimate = 0.0;
        return r;
    }
    Rational alpha = alpha_at_infinity(sys, spec.width);
    if (!alpha.is_zero())
        throw std::invalid_argument("constant_term: requires alpha = 0");
    check_branch(w, mu);
    // (1/h) e(-w/4) (2pi)^{2-w} (-mu)^{1-w} / Gamma(2-w) * sum e(mu a/c) psi / c^{2-w},
    // which is the nu = 0 column of the generic kernel; computed via b_kernel.
    auto sums = kloosterman_sums_batch(spec, sys, {{mu, Rational(0)}}, opt.c_max, opt.threads,
                                       opt.cache);
    auto kers = kernels_over_moduli(spec, w, mu, Rational(0), opt.c_max);
    return assemble(spec, sums[0], kers, opt);
}

QExpansion q_expansion(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                       const Rational& mu, int nu_count, const SeriesOptions& opt) {
    check_branch(w, mu);
    validate_grid(spec, sys, mu);
    Rational alpha = alpha_at_infinity(sys, spec.width);
    QExpansion out;
    out.step = Rational(1, spec.width);
    out.offset = first_slot(spec, alpha);
    if (nu_count <= 0) return out;

    std::vector<IndexPair> pairs;
    pairs.reserve(nu_count);
    for (int k = 0; k < nu_count; ++k) pairs.push_back({mu, out.exponent(k)});
    auto sums = kloosterman_sums_batch(spec, sys, pairs, opt.c_max, opt.threads, opt.cache);
    out.coeffs.resize(nu_count);
    for (int k = 0; k < nu_count; ++k) {
        auto kers = kernels_over_moduli(spec, w, mu, pairs[k].nu, opt.c_max);
        out.coeffs[k] = assemble(spec, sums[k], kers, opt).value;
    }
    // the constant slot exists only when alpha = 0; for w >= 1 it is exact 0
    if (alpha.is_zero() && out.offset.is_zero() && w >= Rational(1)) out.coeffs[0] = {0.0, 0.0};

    if (mu < Rational(0)) {
        out.singular_exponent = mu;
    } else {
        Rational idx = (mu - out.offset) / out.step;
        if (!idx.is_integer() || idx < Rational(0) ||
            idx >= Rational((std::int64_t)out.coeffs.size()))
            throw std::invalid_argument("q_expansion: mu slot outside requested window");
        out.coeffs[(std::size_t)idx.floor()] += 1.0;
    }
    return out;
}

QExpansion shadow_expansion(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                            const Rational& mu, int nu_count, const SeriesOptions& opt) {
    validate_grid(spec, sys, mu);
    check_branch(w, mu);
    QExpansion out;
    out.step = Rational(1, spec.width);
    // shadow lives on the inverse-multiplier grid: h nu - alpha in Z
    Rational alpha = alpha_at_infinity(sys, spec.width);
    Rational alpha_bar = (-alpha).mod1();
    out.offset = first_slot(spec, alpha_bar);
    if (nu_count <= 0) return out;

    double wd = w.to_double();
    double rg = special::rgamma(1.0 - wd);
    if (rg == 0.0) {
        out.coeffs.assign(nu_count, Complex(0.0, 0.0));
        out.shadow_zero_flag = true;
        return out;
    }
    Complex pref = special::principal_power(Complex(-mu.to_double(), 0.0), 1.0 - wd) * rg;

    std::vector<IndexPair> pairs;
    pairs.reserve(nu_count);
    for (int k = 0; k < nu_count; ++k) pairs.push_back({-out.exponent(k), mu});
    auto sums = kloosterman_sums_batch(spec, sys, pairs, opt.c_max, opt.threads, opt.cache);
    out.coeffs.resize(nu_count);
    for (int k = 0; k < nu_count; ++k) {
        auto kers = kernels_over_moduli(spec, w, pairs[k].mu, mu, opt.c_max);
        Complex ck = assemble(spec, sums[k], kers, opt).value;
        out.coeffs[k] = -pref * ck;
        if (out.exponent(k) == -mu) out.coeffs[k] += pref; // q^{-mu} lattice slot
    }
    return out;
}

double zagier_duality_residual(const GroupSpec& spec, const MultiplierSystem& sys,
                               const Rational& w, const Rational& mu, const Rational& nu,
                               const SeriesOptions& opt) {
    SeriesOptions plain = opt;
    plain.window = 0;
    SeriesResult lhs = coefficient(spec, sys.inverse(), Rational(2) - w, -nu, -mu, plain);
    SeriesResult rhs = coefficient(spec, sys, w, mu, nu, plain);
    return rel_residual(lhs.value, -rhs.value);
}

double eichler_duality_residual(const GroupSpec& spec, const MultiplierSystem& sys,
                                const Rational& w, const Rational& mu, const Rational& nu,
                                const SeriesOptions& opt) {
    if (w < Rational(1))
        throw std::invalid_argument("eichler_duality_residual: stated for w >= 1");
    SeriesOptions plain = opt;
    plain.window = 0;
    double wd = w.to_double();
    Complex lhs = -std::conj(coefficient(spec, sys.inverse(), Rational(2) - w, -mu, -nu, plain)
                                 .value *
                             special::principal_power(Complex(mu.to_double(), 0.0), 1.0 - wd));
    Complex rhs = coefficient(spec, sys, w, mu, nu, plain).value *
                  special::principal_power(Complex(nu.to_double(), 0.0), 1.0 - wd);
    return rel_residual(lhs, rhs);
}

QExpansion eichler_integral(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                            const Rational& mu, int nu_count, const SeriesOptions& opt) {
    validate_grid(spec, sys, mu);
    QExpansion out;
    out.step = Rational(1, spec.width);
    Rational alpha = alpha_at_infinity(sys, spec.width);
    Rational f = first_slot(spec, alpha);
    out.offset = f.is_zero() ? out.step : f; // nu > 0 strictly
    if (nu_count <= 0) return out;

    double wd = w.to_double();
    Complex pref = -std::conj(special::principal_power(Complex(mu.to_double(), 0.0), 1.0 - wd));
    MultiplierSystem dual = sys.inverse();
    Rational wdual = Rational(2) - w;
    std::vector<IndexPair> pairs;
    for (int k = 0; k < nu_count; ++k) pairs.push_back({-mu, -out.exponent(k)});
    auto sums = kloosterman_sums_batch(spec, dual, pairs, opt.c_max, opt.threads, opt.cache);
    out.coeffs.resize(nu_count);
    for (int k = 0; k < nu_count; ++k) {
        auto kers = kernels_over_moduli(spec, wdual, -mu, pairs[k].nu, opt.c_max);
        out.coeffs[k] = pref * std::conj(assemble(spec, sums[k], kers, opt).value);
    }
    return out;
}

double derivative_relation_residual(const GroupSpec& spec, std::int64_t m, int nu_count,
                                    const SeriesOptions& opt) {
    if (m < 1) throw std::invalid_argument("derivative_relation_residual: need m >= 1");
    auto sys = MultiplierSystem::trivial();
    SeriesOptions plain = opt;
    plain.window = 0;
    double worst = 0.0;
    for (int n = 1; n <= nu_count; ++n) {
        Complex c2 = coefficient(spec, sys, Rational(2), Rational(-m), Rational(n), plain).value;
        Complex c0 = coefficient(spec, sys, Rational(0), Rational(-m), Rational(n), plain).value;
        worst = std::max(worst, rel_residual(c2 * (double)-m, c0 * (double)n));
    }
    return worst;
}

} // namespace radmach
