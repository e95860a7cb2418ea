#ifndef RADMACH_RADSUMS_HPP
#define RADMACH_RADSUMS_HPP

#include <complex>
#include <vector>

#include "radmach/modgroup.hpp"
#include "radmach/multiplier.hpp"
#include "radmach/radseries.hpp"

namespace radmach {

// Pointwise Rademacher-sum value with the K-checkpoint trace.
struct EvalResult {
    Complex value{0.0, 0.0};
    double K = 0.0;
    std::vector<std::pair<double, Complex>> trace; // checkpoints at K/8 steps
};

// r^{[mu]}_w(gamma,tau): 1 for w >= 1 or upper-triangular gamma, else
// P(1-w, 2 pi i mu (gamma tau - gamma inf)) with gamma tau - gamma inf
// = -1/(c(c tau + d)) evaluated in closed form.
Complex regularizer(const Rational& w, const Rational& mu, const GroupElement& g, Complex tau);

struct SumOptions {
    double K = 100.0;
    std::int64_t c_max_for_const = 2000; // truncation of the constant-term series
    int threads = 0;
};

// delta_{alpha,0} c(mu,0)/2 + sum over the K-box cosets of
// e(mu gamma tau) r psi(gamma) j^{w/2}; the identity coset contributes q^mu.
EvalResult sum_eval(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                    const Rational& mu, Complex tau, const SumOptions& opt);

struct QEvalResult {
    Complex value{0.0, 0.0};
    double tail_bound = 0.0;
    bool tail_ok = true;
};

// Evaluate a QExpansion at tau; the tail bound is a geometric estimate from
// the last coefficient, flagged when above tol.
QEvalResult qexp_eval(const QExpansion& exp, Complex tau, double tol = 1e-8);

// Completion f_hat(tau) = f(tau) - (2 pi i)^{1-w} int_{-conj(tau)}^{i inf}
// (z+tau)^{-w} conj(shadow(-conj(z))) dz, by Gauss-Legendre panels on a
// geometric subdivision.
struct CompletionResult {
    Complex value;
    bool quadrature_converged = true;
};
CompletionResult completion_eval(const QExpansion& f, const QExpansion& shadow,
                                 const Rational& w, Complex tau);

// | f_hat(g tau) psi(g) j(g,tau)^{w/2} - f_hat(tau) |
double completion_invariance_residual(const QExpansion& f, const QExpansion& shadow,
                                      const MultiplierSystem& sys, const Rational& w,
                                      const GroupElement& g, Complex tau);

// | R(g tau) j(g,tau) + (6i/pi)/(tau - g^{-1} inf) - R(tau) | for the
// weight-2 mu=0 Rademacher sum R given by its truncated q-series.
double quasimodularity_residual_E2(const GroupElement& g, Complex tau, int terms);

// 1 - 24 sum sigma_1(n) q^n as a QExpansion (helper shared by tests/CLI).
QExpansion e2_expansion(int terms);

} // namespace radmach

#endif
