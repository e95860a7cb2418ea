#ifndef RADMACH_MULTIPLIER_HPP
#define RADMACH_MULTIPLIER_HPP

#include <string>
#include <vector>

#include "radmach/modgroup.hpp"
#include "radmach/rational.hpp"

namespace radmach {

// Multiplier system as a finite product of eta-power and rho_{n|h} factors,
// evaluated to an exact rational phase per group element. The trivial system
// is the empty product.
class MultiplierSystem {
public:
    static MultiplierSystem trivial() { return MultiplierSystem(); }
    static MultiplierSystem eta_power(int s);
    static MultiplierSystem rho_nh(std::int64_t n, std::int64_t h);
    static MultiplierSystem product(const std::vector<MultiplierSystem>& factors);

    int eta_exponent() const { return eta_exp_; }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& rho_factors() const {
        return rhos_;
    }
    bool is_trivial() const { return eta_exp_ == 0 && rhos_.empty(); }

    // Smallest level n with the system defined on Gamma_0(n).
    std::int64_t level() const;

    // Inverse (conjugate) system: eta^{-s}, rho bar factors.
    MultiplierSystem inverse() const;

    // CLI/config syntax: trivial | eta:<s> | rho:<n>|<h>, '*'-joined.
    std::string str() const;
    static MultiplierSystem parse(const std::string& s);

private:
    int eta_exp_ = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> rhos_; // (n, h), exponent +1 each
    std::vector<std::pair<std::int64_t, std::int64_t>> rho_inv_; // (n, h) inverted factors
    friend MultiplierSystem make_inverse(const MultiplierSystem&);

public:
    // internal: signed rho factors, +1 entries in rhos_, -1 entries in rho_inv_
    const std::vector<std::pair<std::int64_t, std::int64_t>>& rho_inverse_factors() const {
        return rho_inv_;
    }
};

// Phase p in [0,1) with eps(g) = e(p); exact. Defined for every g in SL2(Z).
Rational eta_phase(const GroupElement& g);

// Exact phase of the full system at g; throws if g is outside the level.
Rational phase(const MultiplierSystem& sys, const GroupElement& g);

// psi(T^h) = e(alpha), alpha in [0,1).
Rational alpha_at_infinity(const MultiplierSystem& sys, std::int64_t h_width = 1);

// |psi(g1)psi(g2) j(g1,g2 tau)^{w/2} j(g2,tau)^{w/2} - psi(g1 g2) j(g1g2,tau)^{w/2}|
double cocycle_residual(const MultiplierSystem& sys, const Rational& w,
                        const GroupElement& g1, const GroupElement& g2, Complex tau);

// psi(-I) == e(w/2) mod 1?
bool consistency_check(const MultiplierSystem& sys, const Rational& w);

// e(p) for an exact phase, evaluated once in double precision.
Complex unit_phase(const Rational& p);

} // namespace radmach

#endif
