#ifndef RADMACH_MODGROUP_HPP
#define RADMACH_MODGROUP_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "radmach/rational.hpp"

namespace radmach {

using Complex = std::complex<double>;

// Integer 2x2 unimodular matrix (a b; c d), ad - bc = 1.
struct GroupElement {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const { return a * d - b * c; }
    bool unimodular() const { return det() == 1; }

    GroupElement operator*(const GroupElement& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    GroupElement operator-() const { return {-a, -b, -c, -d}; }
    GroupElement inverse() const { return {d, -b, -c, a}; }
    bool operator==(const GroupElement& o) const = default;

    static GroupElement identity() { return {1, 0, 0, 1}; }
    static GroupElement T(std::int64_t m = 1) { return {1, m, 0, 1}; }
    static GroupElement S() { return {0, -1, 1, 0}; }
};

// Gamma_0(n); n = 1 is SL2(Z). Width at infinity is 1 for these groups.
struct GroupSpec {
    std::int64_t level = 1;
    std::int64_t width = 1;

    bool contains(const GroupElement& g) const {
        return g.unimodular() && g.c % level == 0;
    }
};

// Canonical double-coset representative: c > 0, 0 <= d < c, gcd(c,d) = 1,
// a = d^{-1} mod c in [0,c), b = (ad-1)/c.
struct DoubleCosetRep {
    std::int64_t c, d, a, b;
    GroupElement matrix() const { return {a, b, c, d}; }
};

DoubleCosetRep make_double_coset_rep(std::int64_t c, std::int64_t d);

// Moebius image (a tau + b)/(c tau + d) together with j(g,tau) = (c tau + d)^{-2}.
struct MoebiusResult {
    Complex image;
    Complex j;
};
MoebiusResult moebius_and_j(const GroupElement& g, Complex tau);

// The automorphy factor j(g,tau)^{w/2}, realised as (c tau + d)^{-w} on the
// principal branch of c tau + d. This is the determination under which the
// eta multiplier formula is a constant per group element.
Complex j_power(const GroupElement& g, Complex tau, double w);

// g(infinity) = a/c, or nullopt for upper-triangular g.
std::optional<Rational> cusp_image(const GroupElement& g);

// One representative per non-trivial right coset of Gamma_inf inside the box
// |c| < K, |d| < K^2 (signs folded to c > 0), streamed in ascending c then d.
// The identity coset is not emitted; callers add it separately.
void coset_reps_box(const GroupSpec& spec, double K,
                    const std::function<void(const GroupElement&)>& visit);
std::vector<GroupElement> coset_reps_box(const GroupSpec& spec, double K);

// Canonical reps of double cosets with 0 < c <= c_max, n | c, grouped by c.
std::vector<DoubleCosetRep> double_coset_reps(const GroupSpec& spec, std::int64_t c_max);
// Streaming per-modulus variant: visit(d) for each 0 <= d < c with gcd(c,d)=1.
void double_coset_mods(const GroupSpec& spec, std::int64_t c_max,
                       const std::function<void(std::int64_t c)>& per_c);

} // namespace radmach

#endif
