#include "radmach/kloosterman.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "radmach/arith.hpp"
#include "radmach/special.hpp"

namespace radmach {

namespace {

constexpr double TWO_PI = 6.283185307179586476925286766559;

struct KahanC {
    double sr = 0, si = 0, cr = 0, ci = 0;
    void add(double xr, double xi) {
        double yr = xr - cr, yi = xi - ci;
        double tr = sr + yr, ti = si + yi;
        cr = (tr - sr) - yr;
        ci = (ti - si) - yi;
        sr = tr;
        si = ti;
    }
    Complex get() const { return {sr, si}; }
};

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    std::int64_t l = std::lcm(a, b);
    if (l <= 0 || l > (std::int64_t)4e15)
        throw std::overflow_error("phase lattice denominator overflow");
    return l;
}

// Phase bookkeeping for one modulus c: every phase occurring in the modulus-c
// Kloosterman loop is an integer multiple of 1/D.
struct PhasePlan {
    std::int64_t c = 1, D = 1;
    int eta_s = 0;
    std::int64_t m_eta = 0; // D/(24c)
    std::int64_t d8 = 0;    // D/8
    struct Rho {
        std::int64_t m; // D/(n*h)
        int sign;
    };
    std::vector<Rho> rhos;
    struct Job {
        std::int64_t p_mu, m_mu; // p_mu * a * m_mu, m_mu = D/(q_mu c)
        std::int64_t p_nu, m_nu;
    };
    std::vector<Job> jobs;

    PhasePlan(const GroupSpec& spec, const MultiplierSystem& sys,
              const std::vector<IndexPair>& pairs, std::int64_t c_) {
        c = c_;
        eta_s = sys.eta_exponent();
        D = 1;
        if (eta_s != 0) D = lcm_checked(D, 24 * c);
        for (const auto& [n, h] : sys.rho_factors()) D = lcm_checked(D, n * h);
        for (const auto& [n, h] : sys.rho_inverse_factors()) D = lcm_checked(D, n * h);
        for (const auto& p : pairs) {
            D = lcm_checked(D, p.mu.den() * c);
            D = lcm_checked(D, p.nu.den() * c);
        }
        if (eta_s != 0) {
            m_eta = D / (24 * c);
            d8 = D / 8;
        }
        for (const auto& [n, h] : sys.rho_factors()) rhos.push_back({D / (n * h), +1});
        for (const auto& [n, h] : sys.rho_inverse_factors()) rhos.push_back({D / (n * h), -1});
        jobs.reserve(pairs.size());
        for (const auto& p : pairs)
            jobs.push_back({p.mu.num(), D / (p.mu.den() * c), p.nu.num(), D / (p.nu.den() * c)});
    }

    // psi(gamma) phase numerator for the rep with entries (a,*;c,d), times D.
    __int128 psi_num(std::int64_t a, std::int64_t d, std::int64_t ded12c) const {
        __int128 ph = 0;
        if (eta_s != 0)
            ph += (__int128)eta_s * ((__int128)(ded12c - a - d) * m_eta + d8);
        for (const auto& r : rhos)
            ph -= (__int128)r.sign * c * d % D * r.m; // (-cd/nh) * D, reduced early
        return ph;
    }
};

// sums[j] accumulated over d at fixed modulus c.
void modulus_sweep(const GroupSpec& spec, const MultiplierSystem& sys,
                   const std::vector<IndexPair>& pairs, std::int64_t c,
                   std::int64_t lift_shift, Complex* out) {
    PhasePlan plan(spec, sys, pairs, c);
    const std::size_t J = pairs.size();
    std::vector<KahanC> acc(J);
    const bool need_eta = plan.eta_s != 0;
    const double invD = 1.0 / (double)plan.D;

    auto emit = [&](std::int64_t a, std::int64_t d) {
        std::int64_t ded = need_eta ? dedekind_num_12c(d % c, c) : 0;
        __int128 base = plan.psi_num(a, d, ded);
        for (std::size_t j = 0; j < J; ++j) {
            const auto& jb = plan.jobs[j];
            __int128 ph = base + (__int128)jb.p_mu * a * jb.m_mu + (__int128)jb.p_nu * d * jb.m_nu;
            std::int64_t k = (std::int64_t)(ph % plan.D);
            if (k < 0) k += plan.D;
            double ang = TWO_PI * ((double)k * invD);
            acc[j].add(std::cos(ang), std::sin(ang));
        }
    };

    if (c == 1) {
        emit(lift_shift, 0);
    } else {
        for (std::int64_t d = 1; d < c; ++d) {
            auto eg = arith::gcd_ext(d, c);
            if (eg.g != 1) continue;
            std::int64_t a = eg.x % c;
            if (a < 0) a += c;
            emit(a + lift_shift * c, d);
        }
    }
    for (std::size_t j = 0; j < J; ++j) out[j] = acc[j].get();
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? (int)hc : 1;
}

} // namespace

std::int64_t dedekind_num_12c(std::int64_t d, std::int64_t c) {
    // N(d,c) = 12 c s(d,c) via N(d,c) = (d^2 + c^2 + 1 - 3cd - c N(c mod d, d))/d.
    std::int64_t ds[64], cs[64];
    int depth = 0;
    while (c > 1 && d > 0) {
        ds[depth] = d;
        cs[depth] = c;
        ++depth;
        std::int64_t t = c % d;
        c = d;
        d = t;
    }
    __int128 n = 0;
    for (int i = depth - 1; i >= 0; --i) {
        __int128 di = ds[i], ci = cs[i];
        n = (di * di + ci * ci + 1 - 3 * ci * di - ci * n) / di;
    }
    return (std::int64_t)n;
}

void validate_grid(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& mu) {
    if (!on_grid(spec, sys, mu))
        throw std::invalid_argument("spectral index " + mu.str() +
                                    " violates h*mu + alpha in Z for multiplier " + sys.str());
}

bool on_grid(const GroupSpec& spec, const MultiplierSystem& sys, const Rational& mu) {
    Rational alpha = alpha_at_infinity(sys, spec.width);
    return (mu * Rational(spec.width) + alpha).is_integer();
}

Complex k_term(const DoubleCosetRep& rep, const MultiplierSystem& sys,
               const Rational& mu, const Rational& nu) {
    Rational p = Rational::from_i128((__int128)mu.num() * rep.a, (__int128)mu.den() * rep.c)
                 + Rational::from_i128((__int128)nu.num() * rep.d, (__int128)nu.den() * rep.c)
                 + phase(sys, rep.matrix());
    return unit_phase(p.mod1());
}

Complex kloosterman_sum(const GroupSpec& spec, const MultiplierSystem& sys,
                        const Rational& mu, const Rational& nu, std::int64_t c,
                        std::int64_t lift_shift) {
    if (c < 1 || c % spec.level != 0)
        throw std::invalid_argument("kloosterman_sum: modulus not divisible by level");
    validate_grid(spec, sys, mu);
    validate_grid(spec, sys, nu);
    Complex out;
    modulus_sweep(spec, sys, {{mu, nu}}, c, lift_shift, &out);
    return out;
}

std::vector<std::vector<Complex>> kloosterman_sums_batch(
    const GroupSpec& spec, const MultiplierSystem& sys, const std::vector<IndexPair>& pairs,
    std::int64_t c_max, int threads, const KloostermanCache* cache, std::int64_t lift_shift) {
    if (pairs.empty()) return {};
    for (const auto& p : pairs) {
        validate_grid(spec, sys, p.mu);
        validate_grid(spec, sys, p.nu);
    }
    const std::int64_t n_mod = c_max / spec.level;
    std::vector<std::vector<Complex>> result(pairs.size(), std::vector<Complex>(n_mod));

    // cached prefixes (only for unshifted lifts)
    std::vector<std::int64_t> have(pairs.size(), 0);
    if (cache && lift_shift == 0) {
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            auto got = cache->load(spec, sys, pairs[j]);
            std::int64_t n = std::min<std::int64_t>((std::int64_t)got.size(), n_mod);
            std::copy(got.begin(), got.begin() + n, result[j].begin());
            have[j] = n;
        }
    }
    std::int64_t done = *std::min_element(have.begin(), have.end(),
                                          [](auto a, auto b) { return a < b; });
    // recompute from the first missing modulus on (keeps the sweep shared)
    std::atomic<std::int64_t> next(done);
    auto worker = [&] {
        std::vector<Complex> buf(pairs.size());
        for (;;) {
            std::int64_t i = next.fetch_add(1);
            if (i >= n_mod) break;
            std::int64_t c = spec.level * (i + 1);
            modulus_sweep(spec, sys, pairs, c, lift_shift, buf.data());
            for (std::size_t j = 0; j < pairs.size(); ++j) result[j][i] = buf[j];
        }
    };
    int nt = resolve_threads(threads);
    if (nt <= 1 || n_mod - done < 4) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (cache && lift_shift == 0)
        for (std::size_t j = 0; j < pairs.size(); ++j)
            if (n_mod > have[j]) cache->store(spec, sys, pairs[j], result[j]);
    return result;
}

std::pair<double, double> ramanujan_dirichlet_check(std::int64_t n, double s,
                                                    std::int64_t c_max) {
    if (s <= 1.0) throw std::invalid_argument("ramanujan_dirichlet_check: need s > 1");
    GroupSpec sl2{1, 1};
    auto sums = kloosterman_sums_batch(sl2, MultiplierSystem::trivial(),
                                       {{Rational(0), Rational(n)}}, c_max);
    double lhs = 0.0;
    for (std::int64_t c = c_max; c >= 1; --c)
        lhs += sums[0][c - 1].real() * std::pow((double)c, -s);
    double sig = 0.0;
    for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) sig += std::pow((double)d, s - 1.0);
    double zeta = (s == std::floor(s) && ((std::int64_t)s) % 2 == 0)
                      ? arith::zeta_even((unsigned)(s / 2))
                      : arith::zeta_real(s);
    double rhs = std::pow((double)n, 1.0 - s) * sig / zeta;
    return {lhs, rhs};
}

ZetaPartial kloosterman_zeta_partial(const GroupSpec& spec, const MultiplierSystem& sys,
                                     const Rational& mu, const Rational& nu, Complex s,
                                     std::int64_t c_max, int threads) {
    auto sums = kloosterman_sums_batch(spec, sys, {{mu, nu}}, c_max, threads);
    ZetaPartial out;
    KahanC acc;
    out.partial_sums.reserve(sums[0].size());
    for (std::int64_t i = 0; i < (std::int64_t)sums[0].size(); ++i) {
        std::int64_t c = spec.level * (i + 1);
        Complex term = sums[0][i] * special::principal_power((double)c, -2.0 * s.real());
        if (s.imag() != 0.0)
            term *= std::exp(Complex(0.0, -2.0 * s.imag() * std::log((double)c)));
        acc.add(term.real(), term.imag());
        out.partial_sums.emplace_back(c, acc.get());
    }
    out.value = out.partial_sums.empty() ? Complex(0, 0) : out.partial_sums.back().second;
    return out;
}

std::int64_t euler_phi(std::int64_t c) {
    std::int64_t result = c, n = c;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

// ---------------------------------------------------------------------------
// Disk cache

namespace {
std::string sanitize(const std::string& s) {
    std::string out;
    for (char ch : s)
        out += (std::isalnum((unsigned char)ch) || ch == '-' || ch == '_') ? ch : '_';
    return out;
}

void put_le_double(std::string& buf, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) buf += (char)((bits >> (8 * i)) & 0xff);
}

double get_le_double(const char* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= (std::uint64_t)(unsigned char)p[i] << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}
} // namespace

std::string KloostermanCache::key_path(const GroupSpec& spec, const MultiplierSystem& sys,
                                       const IndexPair& idx) const {
    std::string key = "lvl" + std::to_string(spec.level) + "_" + sanitize(sys.str()) + "_mu" +
                      sanitize(idx.mu.str()) + "_nu" + sanitize(idx.nu.str());
    return dir_ + "/" + key;
}

std::vector<Complex> KloostermanCache::load(const GroupSpec& spec, const MultiplierSystem& sys,
                                            const IndexPair& idx) const {
    std::string base = key_path(spec, sys, idx);
    std::ifstream man(base + ".json");
    if (!man) return {};
    nlohmann::json j;
    try {
        man >> j;
    } catch (...) {
        return {};
    }
    std::size_t count = j.value("count", (std::size_t)0);
    std::ifstream bin(base + ".bin", std::ios::binary);
    if (!bin) return {};
    std::string data((std::istreambuf_iterator<char>(bin)), std::istreambuf_iterator<char>());
    if (data.size() < 16 * count) return {};
    std::vector<Complex> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = {get_le_double(data.data() + 16 * i), get_le_double(data.data() + 16 * i + 8)};
    return out;
}

void KloostermanCache::store(const GroupSpec& spec, const MultiplierSystem& sys,
                             const IndexPair& idx, const std::vector<Complex>& sums) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    std::string base = key_path(spec, sys, idx);
    std::string buf;
    buf.reserve(16 * sums.size());
    for (const auto& z : sums) {
        put_le_double(buf, z.real());
        put_le_double(buf, z.imag());
    }
    std::ofstream bin(base + ".bin", std::ios::binary | std::ios::trunc);
    bin.write(buf.data(), (std::streamsize)buf.size());
    nlohmann::json j;
    j["level"] = spec.level;
    j["multiplier"] = sys.str();
    j["mu"] = idx.mu.str();
    j["nu"] = idx.nu.str();
    j["count"] = sums.size();
    j["format"] = "le-f64-pairs";
    std::ofstream man(base + ".json", std::ios::trunc);
    man << j.dump(2) << "\n";
}

std::optional<KloostermanCache> KloostermanCache::from_env() {
    const char* dir = std::getenv("RADMACH_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    return KloostermanCache(dir);
}

} // namespace radmach
