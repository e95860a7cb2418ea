#ifndef RADMACH_RADSERIES_HPP
#define RADMACH_RADSERIES_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "radmach/kloosterman.hpp"
#include "radmach/modgroup.hpp"
#include "radmach/multiplier.hpp"
#include "radmach/rational.hpp"

namespace radmach {

// A truncated Rademacher-series value with its per-modulus partial-sum trace.
struct SeriesResult {
    Complex value{0.0, 0.0};
    std::vector<std::pair<std::int64_t, Complex>> partial_sums; // ascending c
    double tail_estimate = 0.0;
    std::int64_t c_max = 0;
    bool converged = false;
    int window = 0;            // trailing-window width actually applied (0 = off)
    bool window_applied = false;
};

// Truncated Fourier expansion on the lattice offset + k*step.
struct QExpansion {
    Rational offset{0};
    Rational step{1};
    std::vector<Complex> coeffs;
    // Leading singular part q^mu with coefficient 1, kept separate when mu < 0.
    std::optional<Rational> singular_exponent;
    bool shadow_zero_flag = false; // set when 1/Gamma(1-w) vanished identically

    Rational exponent(std::size_t k) const { return offset + step * Rational((std::int64_t)k); }
};

struct SeriesOptions {
    std::int64_t c_max = 1000;
    int window = 0;  // 0 = plain truncation; >0 = mean of last `window` partial sums
    int threads = 0; // 0 = hardware parallelism
    const KloostermanCache* cache = nullptr;
};

// The Bessel-type kernel B_{gamma,w}(mu,nu); depends on gamma only through c.
// Branch selection follows the weight: the w>=1 and w<=1 power series
// (they agree at w=1). Relative truncation 1e-16.
Complex b_kernel(std::int64_t c, const Rational& w, const Rational& mu, const Rational& nu);

// Closed Bessel-I form, valid for mu < 0 < nu; test cross-check route.
Complex b_kernel_bessel(std::int64_t c, const Rational& w, const Rational& mu,
                        const Rational& nu);

// c_{Gamma,psi,w}(mu,nu) truncated at c_max.
SeriesResult coefficient(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                         const Rational& mu, const Rational& nu, const SeriesOptions& opt);

// Batched variant sharing one modulus sweep across all index pairs.
std::vector<SeriesResult> coefficient_batch(const GroupSpec& spec, const MultiplierSystem& sys,
                                            const Rational& w, const std::vector<IndexPair>& pairs,
                                            const SeriesOptions& opt);

// Constant term c(mu,0): requires alpha = 0 and w < 1 (exact 0 for w >= 1).
SeriesResult constant_term(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                           const Rational& mu, const SeriesOptions& opt);

// q^mu + sum over the first nu_count grid slots nu >= 0 of c(mu,nu) q^nu.
// The nu = 0 slot (present iff alpha = 0) is filled by constant_term for w < 1.
// For mu >= 0 the leading q^mu merges into its lattice slot.
QExpansion q_expansion(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                       const Rational& mu, int nu_count, const SeriesOptions& opt);

// Shadow expansion ((-mu)^{1-w}/Gamma(1-w)) (q^{-mu} - sum c(-nu,mu) q^nu) on
// the inverse-multiplier grid. Zero (flagged) at the 1/Gamma poles w in Z>=1.
QExpansion shadow_expansion(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                            const Rational& mu, int nu_count, const SeriesOptions& opt);

// Relative residual of the dual-weight coefficient identity
// c_{psi-bar,2-w}(-nu,-mu) = -c_{psi,w}(mu,nu), both sides truncated at the
// same c_max (the identity holds per modulus).
double zagier_duality_residual(const GroupSpec& spec, const MultiplierSystem& sys,
                               const Rational& w, const Rational& mu, const Rational& nu,
                               const SeriesOptions& opt);

// Relative residual of -conj(c_{psi-bar,2-w}(-mu,-nu) mu^{1-w}) =
// c_{psi,w}(mu,nu) nu^{1-w}; stated for w >= 1.
double eichler_duality_residual(const GroupSpec& spec, const MultiplierSystem& sys,
                                const Rational& w, const Rational& mu, const Rational& nu,
                                const SeriesOptions& opt);

// Eichler integral -conj(mu^{1-w}) sum_{nu>0} conj(c_{psi-bar,2-w}(-mu,-nu)) q^nu.
QExpansion eichler_integral(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& w,
                            const Rational& mu, int nu_count, const SeriesOptions& opt);

// max_n relative residual of -m c_{Gamma,1,2}(-m,n) = n c_{Gamma,1,0}(-m,n),
// n = 1..nu_count (the n = 0 slot is excluded).
double derivative_relation_residual(const GroupSpec& spec, std::int64_t m, int nu_count,
                                    const SeriesOptions& opt);

} // namespace radmach

#endif
