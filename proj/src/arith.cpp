#include "radmach/arith.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace radmach {
namespace arith {

ExtGcd gcd_ext(std::int64_t a, std::int64_t b) {
    if (a == 0 && b == 0)
        throw std::invalid_argument("gcd_ext: both arguments zero");
    // Iterative extended Euclid on |a|,|b|, signs restored at the end.
    std::int64_t sa = a < 0 ? -1 : 1, sb = b < 0 ? -1 : 1;
    std::int64_t r0 = a < 0 ? -a : a, r1 = b < 0 ? -b : b;
    std::int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t x2 = x0 - q * x1;
        std::int64_t y2 = y0 - q * y1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
        y0 = y1; y1 = y2;
    }
    return {r0, sa * x0, sb * y0};
}

std::int64_t mod_inverse(std::int64_t d, std::int64_t c) {
    if (c < 1) throw std::invalid_argument("mod_inverse: modulus must be positive");
    if (c == 1) return 0;
    std::int64_t dm = d % c;
    if (dm < 0) dm += c;
    auto e = gcd_ext(dm, c);
    if (e.g != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    std::int64_t a = e.x % c;
    if (a < 0) a += c;
    return a;
}

Rational dedekind_sum(std::int64_t d, std::int64_t c) {
    if (c < 1) throw std::invalid_argument("dedekind_sum: c must be positive");
    std::int64_t dm = d % c;
    if (dm < 0) dm += c;
    if (c > 1 && std::gcd(dm, c) != 1)
        throw std::invalid_argument("dedekind_sum: arguments not coprime");
    // s(d,c) = -1/4 + (d^2 + c^2 + 1)/(12dc) - s(c mod d, d), unrolled.
    Rational s(0);
    std::int64_t sign = 1;
    while (c > 1 && dm > 0) {
        // contribution of this reciprocity step
        __int128 n2 = (__int128)dm * dm + (__int128)c * c + 1;
        Rational term = Rational::from_i128(n2, (__int128)12 * dm * c) - Rational(1, 4);
        s += (sign > 0) ? term : -term;
        sign = -sign;
        std::int64_t t = c % dm;
        c = dm;
        dm = t;
    }
    return s;
}

Rational dedekind_sum_direct(std::int64_t d, std::int64_t c) {
    if (c < 1) throw std::invalid_argument("dedekind_sum_direct: c must be positive");
    auto saw = [](std::int64_t num, std::int64_t den) -> Rational {
        // ((num/den)) with den > 0
        std::int64_t r = num % den;
        if (r < 0) r += den;
        if (r == 0) return Rational(0);
        return Rational(r, den) - Rational(1, 2);
    };
    Rational s(0);
    for (std::int64_t m = 1; m < c; ++m) s += saw(m, c) * saw(m * d, c);
    return s;
}

BigRational bernoulli(unsigned m) {
    // B_0..B_m from  sum_{j=0}^{k} C(k+1,j) B_j = 0  (k >= 1), B_0 = 1.
    static std::vector<BigRational> cache{BigRational(1)};
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    while (cache.size() <= m) {
        unsigned k = (unsigned)cache.size();
        BigInt binom = 1; // C(k+1, j), built incrementally
        BigRational acc(0);
        for (unsigned j = 0; j < k; ++j) {
            if (j > 0) binom = binom * (k + 2 - j) / j;
            acc += BigRational(binom) * cache[j];
        }
        cache.push_back(-acc / BigRational(k + 1));
    }
    return cache[m];
}

double zeta_even(unsigned k) {
    if (k == 0) throw std::invalid_argument("zeta_even: k must be positive");
    // zeta(2k) = (-1)^{k+1} B_{2k} (2pi)^{2k} / (2 (2k)!)
    BigRational b = bernoulli(2 * k);
    double bd = b.convert_to<double>();
    double lf = std::lgamma(2.0 * k + 1.0);
    double val = std::exp(2.0 * k * std::log(2.0 * M_PI) - lf) * bd / 2.0;
    return (k % 2 == 1) ? val : -val;
}

double zeta_real(double s) {
    if (s <= 1.0) throw std::invalid_argument("zeta_real: need s > 1");
    // Direct sum to N with Euler-Maclaurin tail through the 1/N^5 term.
    const int N = 64;
    double sum = 0.0;
    for (int n = N - 1; n >= 1; --n) sum += std::pow((double)n, -s);
    double Ns = std::pow((double)N, -s);
    sum += Ns * N / (s - 1.0);  // integral tail
    sum += 0.5 * Ns;
    sum += s * Ns / N / 12.0;
    sum -= s * (s + 1) * (s + 2) * Ns / ((double)N * N * N) / 720.0;
    return sum;
}

BigInt sigma(unsigned p, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("sigma: n must be positive");
    BigInt total = 0;
    for (std::int64_t d = 1; (__int128)d * d <= n; ++d) {
        if (n % d) continue;
        BigInt dp = 1, ep = 1;
        for (unsigned i = 0; i < p; ++i) { dp *= d; ep *= n / d; }
        total += dp;
        if (d != n / d) total += ep;
    }
    return total;
}

BigInt PartitionOracle::operator()(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("partition_count: n must be non-negative");
    if (n > bound_) throw std::invalid_argument("partition_count: n exceeds configured bound");
    while ((std::int64_t)table_.size() <= n) {
        std::int64_t m = (std::int64_t)table_.size();
        BigInt acc = 0;
        for (std::int64_t k = 1;; ++k) {
            std::int64_t g1 = k * (3 * k - 1) / 2;
            std::int64_t g2 = k * (3 * k + 1) / 2;
            if (g1 > m) break;
            BigInt part = table_[m - g1];
            if (g2 <= m) part += table_[m - g2];
            if (k % 2 == 1) acc += part;
            else acc -= part;
        }
        table_.push_back(acc);
    }
    return table_[n];
}

BigInt partition_count(std::int64_t n) {
    static PartitionOracle oracle;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    return oracle(n);
}

std::int64_t partition_count_direct(int n) {
    // Count partitions with parts <= k by explicit recursion.
    std::vector<std::vector<std::int64_t>> memo(n + 1, std::vector<std::int64_t>(n + 1, -1));
    auto rec = [&](auto&& self, int rem, int maxpart) -> std::int64_t {
        if (rem == 0) return 1;
        if (maxpart == 0) return 0;
        auto& slot = memo[rem][maxpart];
        if (slot >= 0) return slot;
        std::int64_t total = self(self, rem, maxpart - 1);
        if (rem >= maxpart) total += self(self, rem - maxpart, maxpart);
        return slot = total;
    };
    return rec(rec, n, n);
}

} // namespace arith
} // namespace radmach
