#include "radmach/radsums.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "radmach/arith.hpp"
#include "radmach/kloosterman.hpp"
#include "radmach/special.hpp"

namespace radmach {

namespace {

constexpr double TWO_PI = 6.283185307179586476925286766559;

struct KahanC {
    double sr = 0, si = 0, cr = 0, ci = 0;
    void add(Complex z) {
        double yr = z.real() - cr, yi = z.imag() - ci;
        double tr = sr + yr, ti = si + yi;
        cr = (tr - sr) - yr;
        ci = (ti - si) - yi;
        sr = tr;
        si = ti;
    }
    Complex get() const { return {sr, si}; }
};

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? (int)hc : 1;
}

// 16-point Gauss-Legendre nodes/weights on [-1,1].
constexpr double GL_X[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
constexpr double GL_W[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                            0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};

} // namespace

Complex regularizer(const Rational& w, const Rational& mu, const GroupElement& g, Complex tau) {
    if (w >= Rational(1) || g.c == 0) return {1.0, 0.0};
    if (mu > Rational(0))
        throw std::invalid_argument("regularizer: weight < 1 requires mu <= 0");
    // gamma tau - gamma inf = -1/(c (c tau + d))
    Complex den = (double)g.c * ((double)g.c * tau + (double)g.d);
    Complex diff = -1.0 / den;
    Complex arg = Complex(0.0, TWO_PI) * mu.to_double() * diff;
    return special::lower_incomplete_gamma_regularized(1.0 - w.to_double(), arg);
}

EvalResult sum_eval(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                    const Rational& mu, Complex tau, const SumOptions& opt) {
    if (tau.imag() <= 0.0) throw std::invalid_argument("sum_eval: need Im(tau) > 0");
    validate_grid(spec, sys, mu);
    if (w < Rational(1) && mu > Rational(0))
        throw std::invalid_argument("sum_eval: weight < 1 requires mu <= 0");

    const double wd = w.to_double();
    const double mud = mu.to_double();
    const bool reg = w < Rational(1);
    const double K = opt.K;
    const int NCHK = 8;
    double chk[NCHK];
    for (int i = 0; i < NCHK; ++i) chk[i] = K * (i + 1) / NCHK;

    // per-coset term, accumulated per checkpoint: a term with lower row (c,d)
    // belongs to checkpoint i iff c < chk[i] and |d| < chk[i]^2
    std::vector<std::int64_t> cs;
    for (std::int64_t c = spec.level; (double)c < K; c += spec.level) cs.push_back(c);

    std::vector<std::array<Complex, 8>> partial(cs.size());
    std::atomic<std::size_t> next(0);
    auto worker = [&] {
        for (;;) {
            std::size_t ic = next.fetch_add(1);
            if (ic >= cs.size()) break;
            std::int64_t c = cs[ic];
            KahanC acc[NCHK];
            const bool trivial_psi = sys.is_trivial();
            const bool mu_zero = mu.is_zero();
            const std::int64_t pden = mu.den() * c;
            std::int64_t dmax = (std::int64_t)std::ceil(K * K) - 1;
            while ((double)dmax >= K * K) --dmax;
            for (std::int64_t d = -dmax; d <= dmax; ++d) {
                std::int64_t dm = d % c;
                if (dm < 0) dm += c;
                // one extended-Euclid pass yields both the gcd and the inverse
                auto eg = arith::gcd_ext(dm, c);
                if (eg.g != 1) continue;
                std::int64_t a;
                if (c == 1) {
                    a = 0;
                } else {
                    a = eg.x % c;
                    if (a < 0) a += c;
                }

                Complex czd = (double)c * tau + (double)d;
                // e(mu gamma tau) = e(mu a/c) e(-mu/(c(c tau+d))), exact phase split
                Complex unit;
                if (trivial_psi) {
                    std::int64_t k = (std::int64_t)((__int128)mu.num() * a % pden);
                    if (k < 0) k += pden;
                    double ang = TWO_PI * ((double)k / (double)pden);
                    unit = {std::cos(ang), std::sin(ang)};
                } else {
                    std::int64_t b = (a * d - 1) / c;
                    Rational full = Rational::from_i128((__int128)mu.num() * a, pden) +
                                    phase(sys, GroupElement{a, b, c, d});
                    unit = unit_phase(full.mod1());
                }
                Complex diff = -1.0 / ((double)c * czd);
                Complex emugt =
                    mu_zero ? Complex(1.0, 0.0) : std::exp(Complex(0.0, TWO_PI) * (mud * diff));
                Complex term;
                if (wd == 0.0) {
                    // r telescopes: e(mu g tau) r = e(mu g tau) - e(mu g inf)
                    term = unit * (emugt - 1.0);
                } else {
                    term = unit * emugt;
                    if (reg) {
                        Complex arg = Complex(0.0, TWO_PI) * mud * diff;
                        term *= special::lower_incomplete_gamma_regularized(1.0 - wd, arg);
                    }
                }
                if (wd == 2.0) term /= czd * czd;
                else if (wd != 0.0) term *= special::principal_power(czd, -wd);
                std::int64_t dd = d < 0 ? -d : d;

                int first = NCHK;
                for (int i = NCHK - 1; i >= 0; --i) {
                    if ((double)c < chk[i] && (double)dd < chk[i] * chk[i]) first = i;
                    else break;
                }
                for (int i = first; i < NCHK; ++i) acc[i].add(term);
            }
            for (int i = 0; i < NCHK; ++i) partial[ic][i] = acc[i].get();
        }
    };
    int nt = resolve_threads(opt.threads);
    if (nt <= 1 || cs.size() < 8) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Complex base = std::exp(Complex(0.0, TWO_PI) * (mud * tau)); // identity coset
    if (reg) {
        Rational alpha = alpha_at_infinity(sys, spec.width);
        if (alpha.is_zero()) {
            SeriesOptions so;
            so.c_max = opt.c_max_for_const;
            so.threads = opt.threads;
            base += 0.5 * constant_term(spec, sys, w, mu, so).value;
        }
    }
    EvalResult out;
    out.K = K;
    KahanC sums[NCHK];
    for (std::size_t ic = 0; ic < cs.size(); ++ic)
        for (int i = 0; i < NCHK; ++i) sums[i].add(partial[ic][i]);
    for (int i = 0; i < NCHK; ++i) out.trace.emplace_back(chk[i], base + sums[i].get());
    out.value = out.trace.back().second;
    return out;
}

QEvalResult qexp_eval(const QExpansion& exp, Complex tau, double tol) {
    if (tau.imag() <= 0.0) throw std::invalid_argument("qexp_eval: need Im(tau) > 0");
    QEvalResult r;
    KahanC acc;
    for (std::size_t k = 0; k < exp.coeffs.size(); ++k) {
        double e = exp.exponent(k).to_double();
        acc.add(exp.coeffs[k] * std::exp(Complex(0.0, TWO_PI) * (e * tau)));
    }
    if (exp.singular_exponent)
        acc.add(std::exp(Complex(0.0, TWO_PI) * (exp.singular_exponent->to_double() * tau)));
    r.value = acc.get();
    if (!exp.coeffs.empty()) {
        double qstep = std::exp(-TWO_PI * exp.step.to_double() * tau.imag());
        double last = std::abs(exp.coeffs.back()) *
                      std::exp(-TWO_PI * exp.exponent(exp.coeffs.size() - 1).to_double() *
                               tau.imag());
        r.tail_bound = (qstep < 1.0) ? last * qstep / (1.0 - qstep) : HUGE_VAL;
        r.tail_ok = r.tail_bound <= tol;
    }
    return r;
}

namespace {

// Prefactor of the period integral. The phase is fixed by the pairing that
// keeps the completed sum invariant: sign(Gamma(1-w)) i^{w-1} (2pi)^{1-w},
// with the Gamma poles at integer w >= 1 resolved from the (1-w)+eps side.
// At even integer weights this coincides with (2 pi i)^{1-w}; the weight-2
// constant-shadow case reproduces the classical E2 - 3/(pi y).
Complex completion_prefactor(double w) {
    double x = 1.0 - w;
    int sgn = +1;
    if (x < 0.0) {
        // Gamma alternates sign on (-k-1, -k); poles resolved from x + eps
        double fl = std::floor(-x);
        std::int64_t k = (-x == fl) ? (std::int64_t)fl - 1 : (std::int64_t)fl;
        sgn = (k % 2 == 0) ? -1 : +1;
    }
    return (double)sgn * std::pow(2.0 * M_PI, 1.0 - w) *
           std::exp(Complex(0.0, M_PI * (w - 1.0) / 2.0));
}

} // namespace

CompletionResult completion_eval(const QExpansion& f, const QExpansion& shadow,
                                 const Rational& w, Complex tau) {
    if (tau.imag() <= 0.0) throw std::invalid_argument("completion_eval: need Im(tau) > 0");
    CompletionResult out;
    Complex fval = qexp_eval(f, tau, 1e30).value;

    bool shadow_empty = shadow.coeffs.empty() ||
                        std::all_of(shadow.coeffs.begin(), shadow.coeffs.end(),
                                    [](Complex z) { return z == Complex(0.0, 0.0); });
    if (shadow_empty && !shadow.singular_exponent) {
        out.value = fval;
        return out;
    }

    const double wd = w.to_double();
    const double x = tau.real(), y = tau.imag();
    // z = -conj(tau) + i t:  z + tau = i(2y + t),  -conj(z) = x + i(y + t)
    auto integrand = [&](double t) -> Complex {
        Complex zp = special::principal_power(Complex(0.0, 2.0 * y + t), -wd);
        Complex gval = qexp_eval(shadow, Complex(x, y + t), 1e30).value;
        return zp * std::conj(gval);
    };
    // geometric panels [0,1],[1,2],[2,4],... with 16-pt Gauss-Legendre
    Complex total(0.0, 0.0);
    double a = 0.0, b = 1.0;
    bool converged = false;
    for (int panel = 0; panel < 200; ++panel) {
        Complex ps(0.0, 0.0);
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double env = 0.0;
        for (int i = 0; i < 8; ++i) {
            Complex f1 = integrand(mid - half * GL_X[i]);
            Complex f2 = integrand(mid + half * GL_X[i]);
            ps += GL_W[i] * (f1 + f2);
            env = std::max({env, std::abs(f1), std::abs(f2)});
        }
        total += ps * half;
        if (env * (b - a) < 1e-14) {
            converged = true;
            break;
        }
        a = b;
        b = 2.0 * b;
    }
    out.quadrature_converged = converged;
    out.value = fval - completion_prefactor(wd) * Complex(0.0, 1.0) * total; // dz = i dt
    return out;
}

double completion_invariance_residual(const QExpansion& f, const QExpansion& shadow,
                                      const MultiplierSystem& sys, const Rational& w,
                                      const GroupElement& g, Complex tau) {
    Complex gtau = moebius_and_j(g, tau).image;
    Complex lhs = completion_eval(f, shadow, w, gtau).value * unit_phase(phase(sys, g)) *
                  j_power(g, tau, w.to_double());
    Complex rhs = completion_eval(f, shadow, w, tau).value;
    return std::abs(lhs - rhs);
}

QExpansion e2_expansion(int terms) {
    QExpansion e2;
    e2.offset = Rational(0);
    e2.step = Rational(1);
    e2.coeffs.resize(terms);
    e2.coeffs[0] = 1.0;
    for (int n = 1; n < terms; ++n)
        e2.coeffs[n] = -24.0 * arith::sigma(1, n).convert_to<double>();
    return e2;
}

double quasimodularity_residual_E2(const GroupElement& g, Complex tau, int terms) {
    QExpansion e2 = e2_expansion(terms);
    Complex gtau = moebius_and_j(g, tau).image;
    if (gtau.imag() * TWO_PI < 1.0 || tau.imag() * TWO_PI < 1.0)
        throw std::runtime_error("quasimodularity_residual_E2: truncation bound unusable");
    Complex lhs = qexp_eval(e2, gtau, 1e30).value * moebius_and_j(g, tau).j;
    if (g.c != 0) {
        // g^{-1} inf = -d/c
        Complex pole = tau + (double)g.d / (double)g.c;
        lhs += Complex(0.0, 6.0 / M_PI) / pole;
    }
    return std::abs(lhs - qexp_eval(e2, tau, 1e30).value);
}

} // namespace radmach
