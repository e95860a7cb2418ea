#include "radmach/modgroup.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "radmach/arith.hpp"
#include "radmach/special.hpp"

namespace radmach {

DoubleCosetRep make_double_coset_rep(std::int64_t c, std::int64_t d) {
    if (c < 1) throw std::invalid_argument("double coset rep: need c > 0");
    std::int64_t dm = d % c;
    if (dm < 0) dm += c;
    std::int64_t a = arith::mod_inverse(dm, c);
    std::int64_t b = (a * d - 1) / c;
    return {c, d, a, b};
}

MoebiusResult moebius_and_j(const GroupElement& g, Complex tau) {
    if (tau.imag() <= 0.0) throw std::invalid_argument("moebius_and_j: need Im(tau) > 0");
    Complex den = (double)g.c * tau + (double)g.d;
    Complex num = (double)g.a * tau + (double)g.b;
    return {num / den, 1.0 / (den * den)};
}

Complex j_power(const GroupElement& g, Complex tau, double w) {
    if (w == 0.0) return {1.0, 0.0};
    Complex den = (double)g.c * tau + (double)g.d;
    if (w == 2.0) return 1.0 / (den * den);
    return special::principal_power(den, -w);
}

std::optional<Rational> cusp_image(const GroupElement& g) {
    if (g.c == 0) return std::nullopt;
    return Rational(g.a, g.c); // normalises sign of c into the fraction
}

void coset_reps_box(const GroupSpec& spec, double K,
                    const std::function<void(const GroupElement&)>& visit) {
    if (K <= 0.0) return;
    const double K2 = K * K;
    for (std::int64_t c = spec.level; c < K; c += spec.level) {
        // |d| < K^2, strict
        std::int64_t dmax = (std::int64_t)std::ceil(K2) - 1;
        while ((double)dmax >= K2) --dmax;
        for (std::int64_t d = -dmax; d <= dmax; ++d) {
            if (std::gcd(c, d < 0 ? -d : d) != 1) continue;
            std::int64_t dm = d % c;
            if (dm < 0) dm += c;
            std::int64_t a = arith::mod_inverse(dm, c);
            std::int64_t b = (a * d - 1) / c;
            visit({a, b, c, d});
        }
    }
}

std::vector<GroupElement> coset_reps_box(const GroupSpec& spec, double K) {
    std::vector<GroupElement> out;
    coset_reps_box(spec, K, [&](const GroupElement& g) { out.push_back(g); });
    return out;
}

std::vector<DoubleCosetRep> double_coset_reps(const GroupSpec& spec, std::int64_t c_max) {
    std::vector<DoubleCosetRep> out;
    for (std::int64_t c = spec.level; c <= c_max; c += spec.level)
        for (std::int64_t d = 0; d < c; ++d) {
            if (c > 1 && std::gcd(c, d) != 1) continue;
            if (c == 1 && d != 0) continue;
            out.push_back(make_double_coset_rep(c, d));
        }
    return out;
}

void double_coset_mods(const GroupSpec& spec, std::int64_t c_max,
                       const std::function<void(std::int64_t)>& per_c) {
    for (std::int64_t c = spec.level; c <= c_max; c += spec.level) per_c(c);
}

} // namespace radmach
