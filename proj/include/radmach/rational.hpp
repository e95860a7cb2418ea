#ifndef RADMACH_RATIONAL_HPP
#define RADMACH_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <iosfwd>

#include <boost/multiprecision/cpp_int.hpp>

namespace radmach {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Exact fraction on int64 with __int128 intermediates. Always reduced,
// denominator positive. Throws on overflow after reduction; the phase
// lattices arising in Kloosterman loops are proven to stay far below the
// int64 range (denominators divide 72*c*lcm(index denominators)).
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) { set(n, d); }

    static Rational from_i128(__int128 n, __int128 d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const {
        return from_i128((__int128)num_ * o.den_ + (__int128)o.num_ * den_,
                         (__int128)den_ * o.den_);
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const {
        return from_i128((__int128)num_ * o.num_, (__int128)den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_i128((__int128)num_ * o.den_, (__int128)den_ * o.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return (__int128)num_ * o.den_ < (__int128)o.num_ * den_;
    }
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    // Canonical representative in [0,1).
    Rational mod1() const {
        std::int64_t r = num_ % den_;
        if (r < 0) r += den_;
        return Rational(r, den_);
    }

    std::int64_t floor() const {
        std::int64_t q = num_ / den_, r = num_ % den_;
        return (r < 0) ? q - 1 : q;
    }

    double to_double() const { return double(num_) / double(den_); }

    std::string str() const;
    // Parses "p", "p/q", with optional sign. Throws std::invalid_argument.
    static Rational parse(const std::string& s);

private:
    std::int64_t num_, den_;
    void set(__int128 n, __int128 d);
    friend std::ostream& operator<<(std::ostream&, const Rational&);
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline BigRational to_big(const Rational& r) {
    return BigRational(BigInt(r.num()), BigInt(r.den()));
}

} // namespace radmach

#endif
