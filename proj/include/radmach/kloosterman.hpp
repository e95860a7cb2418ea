#ifndef RADMACH_KLOOSTERMAN_HPP
#define RADMACH_KLOOSTERMAN_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radmach/modgroup.hpp"
#include "radmach/multiplier.hpp"
#include "radmach/rational.hpp"

namespace radmach {

// Spectral index mu with h*mu + alpha required to be integral for the
// attached group/multiplier pair.
struct SpectralIndex {
    Rational value;
};

// Throws std::invalid_argument unless h*mu + alpha is an integer.
void validate_grid(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& mu);
bool on_grid(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& mu);

// 12*c*s(d,c) as an exact integer (integer-only reciprocity recursion).
std::int64_t dedekind_num_12c(std::int64_t d, std::int64_t c);

// K_{gamma,psi}(mu,nu) = e(mu a/c) e(nu d/c) psi(gamma); the phase is
// accumulated exactly as a rational before the single exponentiation.
Complex k_term(const DoubleCosetRep& rep, const MultiplierSystem& sys,
               const Rational& mu, const Rational& nu);

struct IndexPair {
    Rational mu, nu;
};

// Optional on-disk cache of per-modulus Kloosterman sums, keyed by
// (level, multiplier string, mu, nu). One record per modulus: two
// little-endian 64-bit floats, with a JSON sidecar manifest.
class KloostermanCache {
public:
    explicit KloostermanCache(std::string dir) : dir_(std::move(dir)) {}
    // Values for c = level, 2*level, ..., count*level; empty if absent.
    std::vector<Complex> load(const GroupSpec& spec, const MultiplierSystem& sys,
                              const IndexPair& idx) const;
    void store(const GroupSpec& spec, const MultiplierSystem& sys, const IndexPair& idx,
               const std::vector<Complex>& sums) const;
    // Cache from RADMACH_CACHE_DIR, if set.
    static std::optional<KloostermanCache> from_env();

private:
    std::string dir_;
    std::string key_path(const GroupSpec&, const MultiplierSystem&, const IndexPair&) const;
};

// S_{Gamma,psi}(mu,nu,c): sum of k_term over the double cosets at modulus c,
// ascending d, compensated accumulation. lift_shift moves the canonical lift
// a from [0,c) to [lift_shift*c, (lift_shift+1)*c) (grid-invariance hook).
Complex kloosterman_sum(const GroupSpec& spec, const MultiplierSystem& sys,
                        const Rational& mu, const Rational& nu, std::int64_t c,
                        std::int64_t lift_shift = 0);

// Batched sweep: result[j][i] = S(mu_j, nu_j, c_i) for c_i = level*(i+1) up to
// c_max. The per-(c,d) work (inverse, Dedekind sum) is shared by all pairs.
// Deterministic regardless of thread count.
std::vector<std::vector<Complex>> kloosterman_sums_batch(
    const GroupSpec& spec, const MultiplierSystem& sys, const std::vector<IndexPair>& pairs,
    std::int64_t c_max, int threads = 0, const KloostermanCache* cache = nullptr,
    std::int64_t lift_shift = 0);

// lhs = sum_{c<=c_max} (Ramanujan sum at n) c^{-s}; rhs = n^{1-s} sigma_{s-1}(n)/zeta(s).
std::pair<double, double> ramanujan_dirichlet_check(std::int64_t n, double s,
                                                    std::int64_t c_max);

struct ZetaPartial {
    Complex value;
    std::vector<std::pair<std::int64_t, Complex>> partial_sums;
};

// Truncated Kloosterman zeta: sum_{c<=c_max, level|c} S(mu,nu,c) c^{-2s}.
ZetaPartial kloosterman_zeta_partial(const GroupSpec& spec, const MultiplierSystem& sys,
                                     const Rational& mu, const Rational& nu, Complex s,
                                     std::int64_t c_max, int threads = 0);

// Euler phi, used by tests and the |S| <= phi(c) monitor.
std::int64_t euler_phi(std::int64_t c);

} // namespace radmach

#endif
