#ifndef RADMACH_ARITH_HPP
#define RADMACH_ARITH_HPP

#include <cstdint>
#include <vector>

#include "radmach/rational.hpp"

namespace radmach {
namespace arith {

struct ExtGcd {
    std::int64_t g, x, y; // g = gcd(a,b) = a*x + b*y
};

// Extended Euclid. Rejects (0,0); g >= 1 otherwise.
ExtGcd gcd_ext(std::int64_t a, std::int64_t b);

// Inverse of d modulo c, in [0,c). Requires gcd(d,c) = 1, c >= 1.
std::int64_t mod_inverse(std::int64_t d, std::int64_t c);

// Dedekind sum s(d,c) = sum_{m=1}^{c-1} ((m/c))((md/c)), gcd(d,c)=1, c>=1.
// Reciprocity recursion, O(log c).
Rational dedekind_sum(std::int64_t d, std::int64_t c);

// The O(c) definitional sum; retained as a test oracle for dedekind_sum.
Rational dedekind_sum_direct(std::int64_t d, std::int64_t c);

// Bernoulli number B_m from the t/(e^t-1) recurrence, exact.
BigRational bernoulli(unsigned m);

// zeta(2k) via the Bernoulli closed form, double precision.
double zeta_even(unsigned k);

// zeta(s) for real s > 1 by direct summation with an Euler-Maclaurin tail.
double zeta_real(double s);

// sigma_p(n) = sum of p-th powers of divisors of n.
BigInt sigma(unsigned p, std::int64_t n);

// Partition numbers by Euler's pentagonal recurrence. The computed values
// are cached process-wide. n is capped (default 10^4).
class PartitionOracle {
public:
    explicit PartitionOracle(std::int64_t bound = 10000) : bound_(bound) {}
    BigInt operator()(std::int64_t n);

private:
    std::int64_t bound_;
    std::vector<BigInt> table_{BigInt(1)};
};

BigInt partition_count(std::int64_t n); // shared default-bound oracle

// Test oracle: count partitions of n by direct enumeration (small n only).
std::int64_t partition_count_direct(int n);

} // namespace arith
} // namespace radmach

#endif
