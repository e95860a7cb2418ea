#ifndef RADMACH_SPECIAL_HPP
#define RADMACH_SPECIAL_HPP

#include <complex>

namespace radmach {
namespace special {

using Complex = std::complex<double>;

// Gamma function on the real line (poles at non-positive integers rejected).
double gamma_fn(double s);

// 1/Gamma(s), zero at the poles.
double rgamma(double s);

// Principal branch power x^s: |x|^s e^{i*theta*s}, theta in (-pi, pi].
Complex principal_power(Complex x, double s);

// Lower incomplete gamma gamma(s,x) for s > 0 and complex x, by the
// everywhere-convergent series Gamma(s) e^{-x} sum x^{n+s}/Gamma(n+s+1).
Complex lower_incomplete_gamma(double s, Complex x);

// Regularized P(s,x) = gamma(s,x)/Gamma(s); this is the form the Rademacher
// regularizer consumes.
Complex lower_incomplete_gamma_regularized(double s, Complex x);

// Modified Bessel I_alpha(x), alpha >= 0, x > 0. Power series, with an
// asymptotic branch above x = 30.
double bessel_i(double alpha, double x);
double bessel_i_series(double alpha, double x);     // exposed for branch tests
double bessel_i_asymptotic(double alpha, double x); // valid for large x

// |LHS - RHS| of the Lipschitz summation formula with the ell-sum cut at
// |ell| < K; s = 1 uses the symmetric-window analogue (alpha in (0,1)) or
// the halved-constant form at alpha = 0.
double lipschitz_residual(double s, double alpha, Complex tau, long K);

} // namespace special
} // namespace radmach

#endif
