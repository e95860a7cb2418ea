#include "radmach/special.hpp"

#include <cmath>
#include <stdexcept>

namespace radmach {
namespace special {

namespace {
constexpr double TWO_PI = 6.283185307179586476925286766559;
constexpr int SERIES_CAP = 1000000;

inline Complex expi2pi(Complex z) { return std::exp(Complex(0.0, TWO_PI) * z); }
} // namespace

double gamma_fn(double s) {
    if (s <= 0.0 && s == std::floor(s))
        throw std::invalid_argument("gamma_fn: pole at non-positive integer");
    return std::tgamma(s);
}

double rgamma(double s) {
    if (s <= 0.0 && s == std::floor(s)) return 0.0;
    return 1.0 / std::tgamma(s);
}

Complex principal_power(Complex x, double s) {
    if (x == Complex(0.0, 0.0)) {
        if (s > 0.0) return {0.0, 0.0};
        throw std::domain_error("principal_power: zero base with s <= 0");
    }
    double theta;
    if (x.imag() == 0.0)
        theta = (x.real() > 0.0) ? 0.0 : M_PI; // pin arg(-r) = +pi
    else
        theta = std::atan2(x.imag(), x.real());
    double r = std::abs(x);
    return std::polar(std::pow(r, s), theta * s);
}

Complex lower_incomplete_gamma(double s, Complex x) {
    return lower_incomplete_gamma_regularized(s, x) * gamma_fn(s);
}

Complex lower_incomplete_gamma_regularized(double s, Complex x) {
    if (s <= 0.0) throw std::invalid_argument("lower_incomplete_gamma: need s > 0");
    if (x == Complex(0.0, 0.0)) return {0.0, 0.0};
    if (s == 1.0) return 1.0 - std::exp(-x); // the series in closed form
    // e^{-x} sum_{n>=0} x^{n+s} / Gamma(n+s+1)
    Complex term = principal_power(x, s) * rgamma(s + 1.0);
    Complex sum = term;
    for (int n = 1; n <= SERIES_CAP; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum))
            return std::exp(-x) * sum;
    }
    throw std::runtime_error("lower_incomplete_gamma: series did not converge");
}

double bessel_i_series(double alpha, double x) {
    // All terms positive for x > 0; no cancellation.
    double term = std::exp(alpha * std::log(x / 2.0) - std::lgamma(alpha + 1.0));
    double sum = term;
    double q = x * x / 4.0;
    for (int m = 1; m <= SERIES_CAP; ++m) {
        term *= q / (m * (m + alpha));
        sum += term;
        if (term < 1e-17 * sum) return sum;
    }
    throw std::runtime_error("bessel_i: series did not converge");
}

double bessel_i_asymptotic(double alpha, double x) {
    // I_a(x) ~ e^x/sqrt(2 pi x) * sum_k (-1)^k a_k(alpha)/x^k with
    // a_k = prod_{j=1}^{k} (4a^2-(2j-1)^2) / (k! 8^k); truncated at the
    // smallest term. The e^{-x} companion is negligible for x > 30.
    double mu = 4.0 * alpha * alpha;
    double term = 1.0, sum = 1.0;
    double prev = std::abs(term);
    for (int k = 1; k < 40; ++k) {
        double f = (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        term *= -f;
        if (std::abs(term) > prev) break; // divergent tail reached
        sum += term;
        prev = std::abs(term);
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(x) / std::sqrt(TWO_PI * x) * sum;
}

double bessel_i(double alpha, double x) {
    if (alpha < 0.0) throw std::invalid_argument("bessel_i: need alpha >= 0");
    if (x <= 0.0) throw std::invalid_argument("bessel_i: need x > 0");
    return (x > 30.0) ? bessel_i_asymptotic(alpha, x) : bessel_i_series(alpha, x);
}

double lipschitz_residual(double s, double alpha, Complex tau, long K) {
    if (s < 1.0) throw std::invalid_argument("lipschitz_residual: need s >= 1");
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("lipschitz_residual: need alpha in [0,1)");
    if (tau.imag() <= 0.0)
        throw std::invalid_argument("lipschitz_residual: need Im(tau) > 0");

    // k-side: sum_{k>=1} (k-alpha)^{s-1} e((k-alpha) tau), truncated when
    // terms fall below 1e-18 in magnitude.
    Complex ksum(0.0, 0.0);
    for (int k = 1; k <= SERIES_CAP; ++k) {
        double a = k - alpha;
        Complex t = std::pow(a, s - 1.0) * expi2pi(a * tau);
        ksum += t;
        if (std::abs(t) < 1e-18) break;
    }

    Complex lhs, rhs;
    if (s > 1.0) {
        // (-2 pi i)^s / Gamma(s) * ksum  vs  sum_{|ell|<K} e(alpha ell)(tau+ell)^{-s}
        lhs = principal_power(Complex(0.0, -TWO_PI), s) * rgamma(s) * ksum;
        Complex acc(0.0, 0.0), comp(0.0, 0.0);
        for (long ell = -(K - 1); ell <= K - 1; ++ell) {
            Complex t = principal_power(tau + (double)ell, -s) * expi2pi(alpha * ell);
            // Kahan accumulation; the tails nearly cancel pairwise
            Complex y = t - comp;
            Complex u = acc + y;
            comp = (u - acc) - y;
            acc = u;
        }
        rhs = acc;
    } else {
        // s = 1: symmetric-window analogue
        lhs = (alpha == 0.0) ? ksum + 0.5 : ksum;
        Complex acc(0.0, 0.0);
        const Complex pref = 1.0 / Complex(0.0, -TWO_PI);
        for (long ell = -(K - 1); ell <= K - 1; ++ell)
            acc += expi2pi(alpha * ell) * pref / (tau + (double)ell);
        rhs = acc;
    }
    return std::abs(lhs - rhs);
}

} // namespace special
} // namespace radmach
