#include "radmach/rational.hpp"

#include <limits>
#include <ostream>
#include <sstream>

namespace radmach {

namespace {
__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { __int128 t = a % b; a = b; b = t; }
    return a;
}
} // namespace

void Rational::set(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
    if (n < lo || n > hi || d > hi)
        throw std::overflow_error("Rational: value exceeds 64-bit range");
    num_ = (std::int64_t)n;
    den_ = (std::int64_t)d;
}

Rational Rational::from_i128(__int128 n, __int128 d) {
    Rational r;
    r.set(n, d);
    return r;
}

std::string Rational::str() const {
    std::ostringstream os;
    os << num_;
    if (den_ != 1) os << '/' << den_;
    return os.str();
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    std::size_t slash = s.find('/');
    auto to_i64 = [](const std::string& t) {
        if (t.empty()) throw std::invalid_argument("malformed rational");
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(t, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed rational '" + t + "'");
        }
        if (pos != t.size()) throw std::invalid_argument("malformed rational '" + t + "'");
        return (std::int64_t)v;
    };
    if (slash == std::string::npos) return Rational(to_i64(s));
    std::int64_t n = to_i64(s.substr(0, slash));
    std::int64_t d = to_i64(s.substr(slash + 1));
    if (d <= 0) throw std::invalid_argument("rational denominator must be positive");
    return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num_;
    if (r.den_ != 1) os << '/' << r.den_;
    return os;
}

} // namespace radmach
