#ifndef RADMACH_QSERIES_HPP
#define RADMACH_QSERIES_HPP

#include <cstdint>
#include <vector>

#include "radmach/rational.hpp"

namespace radmach {

// Truncated q-series with exact rational coefficients on the lattice
// (1/den)Z; coefficient k sits at exponent (lo + k)/den. All arithmetic is
// exact and closed under the common truncation order.
class ExactQSeries {
public:
    ExactQSeries() : den_(1), lo_(0), cap_num_(0), cap_den_(1) {}

    static ExactQSeries zero(const Rational& order);
    static ExactQSeries constant(const BigRational& v, const Rational& order);
    // q^{p/q} monomial
    static ExactQSeries monomial(const BigRational& coeff, const Rational& exponent,
                                 const Rational& order);

    std::int64_t lattice_den() const { return den_; }
    Rational order() const { return Rational(cap_num_, cap_den_); }
    bool is_zero() const;

    Rational exponent(std::size_t k) const { return Rational(lo_ + (std::int64_t)k, den_); }
    std::size_t size() const { return c_.size(); }
    const BigRational& coeff_at_index(std::size_t k) const { return c_[k]; }
    // Coefficient at an exact exponent (0 if absent/off-lattice).
    BigRational coeff(const Rational& e) const;
    Rational first_exponent() const; // throws on the zero series

    ExactQSeries operator+(const ExactQSeries& o) const;
    ExactQSeries operator-(const ExactQSeries& o) const;
    ExactQSeries operator*(const ExactQSeries& o) const;
    ExactQSeries& operator+=(const ExactQSeries& o) { return *this = *this + o; }
    ExactQSeries& operator-=(const ExactQSeries& o) { return *this = *this - o; }
    ExactQSeries& operator*=(const ExactQSeries& o) { return *this = *this * o; }
    ExactQSeries scaled(const BigRational& f) const;
    ExactQSeries pow(int p) const; // negative p via inversion
    // Requires an invertible (nonzero) leading coefficient.
    ExactQSeries inverse() const;
    ExactQSeries operator/(const ExactQSeries& o) const { return *this * o.inverse(); }

    // Substitute q -> q^m (exponents scaled by m > 0).
    ExactQSeries rescale_exponents(std::int64_t m) const;

    // Multiply by q^e exactly: exponents and the truncation cap both shift,
    // so no stored coefficient is lost (unlike multiplying by a capped
    // monomial, which propagates the smaller cap).
    ExactQSeries shifted(const Rational& e) const;

    // Drop to a smaller truncation order.
    ExactQSeries truncated(const Rational& new_order) const;

    bool operator==(const ExactQSeries& o) const;

    // Drop trailing/leading zeros and shrink the lattice to the coarsest one
    // containing all nonzero exponents.
    void normalize();

private:
    std::int64_t den_;                // exponent lattice denominator
    std::int64_t lo_;                 // exponent of c_[0], in 1/den units
    std::vector<BigRational> c_;
    std::int64_t cap_num_;            // truncation order cap (exponents <= cap kept)
    std::int64_t cap_den_;

    void align(const ExactQSeries& o, ExactQSeries& a, ExactQSeries& b) const;
    void set_cap(const Rational& cap);
    void trim_to_cap();
};

namespace jacobi {

// Dedekind eta q^{1/24} prod (1-q^n) via the pentagonal-number expansion.
ExactQSeries eta_series(const Rational& order);
// eta^p; negative powers via series inversion.
ExactQSeries eta_power(int p, const Rational& order);

// Jacobi theta constants: theta_i(tau, z) at z = 0 or z = 1/2 (y = e(z) = 1
// or -1). theta_1 at z = 0 is the zero series; theta_1(tau,1/2) uses the
// exact-limit convention y^{1/2} = i, making the series real.
ExactQSeries theta_series(int i, bool z_half, const Rational& order);

// mu(tau, 1/2): Appell-Lerch sum at y = -1, exact.
ExactQSeries appell_mu_series(const Rational& order);

// Z_K3(tau, 1/2) = 8 sum of squared theta quotients.
ExactQSeries zk3_series(const Rational& order);

// H(tau) = (Z_K3(tau,1/2) eta^3 - 24 theta_1(tau,1/2)^2 mu(tau,1/2)) / theta_1(tau,1/2)^2.
// Returns t_1..t_n; asserts the leading term -2 q^{-1/8} and exact integrality.
std::vector<BigInt> mathieu_H_oracle(int n);
ExactQSeries mathieu_H_series(const Rational& order); // exponents in Z - 1/8

// S^{(l)}_r(tau) = sum_k (2lk + r) q^{(2lk+r)^2/4l}.
ExactQSeries unary_theta(int ell, int r, const Rational& order);

// E_{2k} = 1 - (4k/B_{2k}) sum sigma_{2k-1}(n) q^n, exact; j = E_4^3/eta^24,
// J = j - 744.
ExactQSeries eisenstein_series(int k2, const Rational& order);
ExactQSeries j_oracle(const Rational& order);

// (eta(tau)/eta(2tau))^24 + 24: level-2 hauptmodul normal form.
ExactQSeries level2_hauptmodul_oracle(const Rational& order);

} // namespace jacobi
} // namespace radmach

#endif
