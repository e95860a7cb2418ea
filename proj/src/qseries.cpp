#include "radmach/qseries.hpp"

#include <numeric>
#include <stdexcept>

#include "radmach/arith.hpp"

namespace radmach {

namespace {
const BigRational kZero(0);
}

void ExactQSeries::set_cap(const Rational& cap) {
    cap_num_ = cap.num();
    cap_den_ = cap.den();
}

ExactQSeries ExactQSeries::zero(const Rational& order) {
    ExactQSeries s;
    s.set_cap(order);
    return s;
}

ExactQSeries ExactQSeries::constant(const BigRational& v, const Rational& order) {
    return monomial(v, Rational(0), order);
}

ExactQSeries ExactQSeries::monomial(const BigRational& coeff, const Rational& e,
                                    const Rational& order) {
    ExactQSeries s;
    s.set_cap(order);
    if (coeff == kZero || e > order) return s;
    s.den_ = e.den();
    s.lo_ = e.num();
    s.c_.assign(1, coeff);
    return s;
}

bool ExactQSeries::is_zero() const {
    for (const auto& v : c_)
        if (v != kZero) return false;
    return true;
}

BigRational ExactQSeries::coeff(const Rational& e) const {
    // exponent e = k/den + lo/den
    Rational idx = (e - Rational(lo_, den_)) * Rational(den_);
    if (!idx.is_integer()) return kZero;
    std::int64_t k = idx.num();
    if (k < 0 || k >= (std::int64_t)c_.size()) return kZero;
    return c_[(std::size_t)k];
}

Rational ExactQSeries::first_exponent() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != kZero) return exponent(k);
    throw std::domain_error("first_exponent: zero series");
}

void ExactQSeries::normalize() {
    std::size_t a = 0, b = c_.size();
    while (a < b && c_[a] == kZero) ++a;
    while (b > a && c_[b - 1] == kZero) --b;
    if (a == b) {
        c_.clear();
        lo_ = 0;
        den_ = 1;
        return;
    }
    c_.erase(c_.begin() + b, c_.end());
    c_.erase(c_.begin(), c_.begin() + a);
    lo_ += (std::int64_t)a;
    // coarsest sublattice: gcd of den with all index offsets of nonzero coeffs
    std::int64_t g = 0;
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != kZero) g = std::gcd(g, (std::int64_t)k);
    g = std::gcd(g == 0 ? den_ : g, std::gcd(lo_ < 0 ? -lo_ : lo_, den_));
    if (g > 1) {
        std::vector<BigRational> nc;
        nc.reserve(c_.size() / g + 1);
        for (std::size_t k = 0; k < c_.size(); k += (std::size_t)g) nc.push_back(c_[k]);
        c_ = std::move(nc);
        lo_ /= g;
        den_ /= g;
    }
}

void ExactQSeries::align(const ExactQSeries& o, ExactQSeries& a, ExactQSeries& b) const {
    a = *this;
    b = o;
    std::int64_t d = std::lcm(a.den_, b.den_);
    auto stretch = [d](ExactQSeries& s) {
        if (s.den_ == d) return;
        std::int64_t f = d / s.den_;
        std::vector<BigRational> nc((s.c_.size() ? (s.c_.size() - 1) * f + 1 : 0), kZero);
        for (std::size_t k = 0; k < s.c_.size(); ++k) nc[k * f] = s.c_[k];
        s.c_ = std::move(nc);
        s.lo_ *= f;
        s.den_ = d;
    };
    stretch(a);
    stretch(b);
}

void ExactQSeries::trim_to_cap() {
    // keep exponents <= cap: (lo + k)/den <= cap_num/cap_den
    while (!c_.empty()) {
        __int128 lhs = (__int128)(lo_ + (std::int64_t)c_.size() - 1) * cap_den_;
        __int128 rhs = (__int128)cap_num_ * den_;
        if (lhs <= rhs) break;
        c_.pop_back();
    }
}

ExactQSeries ExactQSeries::operator+(const ExactQSeries& o) const {
    ExactQSeries a, b;
    align(o, a, b);
    ExactQSeries out;
    out.den_ = a.den_;
    Rational cap = std::min(order(), o.order());
    out.set_cap(cap);
    if (a.c_.empty()) {
        out.lo_ = b.lo_;
        out.c_ = b.c_;
    } else if (b.c_.empty()) {
        out.lo_ = a.lo_;
        out.c_ = a.c_;
    } else {
        out.lo_ = std::min(a.lo_, b.lo_);
        std::int64_t hi = std::max(a.lo_ + (std::int64_t)a.c_.size(),
                                   b.lo_ + (std::int64_t)b.c_.size());
        out.c_.assign((std::size_t)(hi - out.lo_), kZero);
        for (std::size_t k = 0; k < a.c_.size(); ++k) out.c_[a.lo_ - out.lo_ + k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) out.c_[b.lo_ - out.lo_ + k] += b.c_[k];
    }
    out.trim_to_cap();
    out.normalize();
    return out;
}

ExactQSeries ExactQSeries::operator-(const ExactQSeries& o) const {
    return *this + o.scaled(BigRational(-1));
}

ExactQSeries ExactQSeries::scaled(const BigRational& f) const {
    ExactQSeries out = *this;
    if (f == kZero) {
        out.c_.clear();
        out.lo_ = 0;
        return out;
    }
    for (auto& v : out.c_) v *= f;
    return out;
}

ExactQSeries ExactQSeries::operator*(const ExactQSeries& o) const {
    ExactQSeries a, b;
    align(o, a, b);
    ExactQSeries out;
    out.den_ = a.den_;
    if (a.c_.empty() || b.c_.empty()) {
        out.set_cap(std::min(order(), o.order()));
        return out;
    }
    // exactness bound of a truncated product: a dropped term of one factor
    // (exponent > cap) pairs with the other factor's lowest exponent
    Rational cap = std::min(order() + Rational(b.lo_, b.den_),
                            o.order() + Rational(a.lo_, a.den_));
    out.set_cap(cap);
    out.lo_ = a.lo_ + b.lo_;
    // target length limited by the cap
    __int128 hi_cap = (__int128)cap.num() * out.den_ / cap.den(); // floor
    std::int64_t max_len = (std::int64_t)(hi_cap - out.lo_) + 1;
    if (max_len <= 0) return out;
    std::int64_t full = (std::int64_t)(a.c_.size() + b.c_.size()) - 1;
    std::int64_t len = std::min(full, max_len);
    out.c_.assign((std::size_t)len, kZero);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == kZero) continue;
        std::size_t jmax = std::min(b.c_.size(), (std::size_t)std::max<std::int64_t>(0, len - (std::int64_t)i));
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b.c_[j] == kZero) continue;
            out.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    out.normalize();
    return out;
}

ExactQSeries ExactQSeries::inverse() const {
    if (c_.empty() || c_[0] == kZero)
        throw std::domain_error("ExactQSeries::inverse: leading coefficient not invertible");
    ExactQSeries out;
    out.den_ = den_;
    // coefficient n of the inverse consumes inputs up to exponent lo + n/den
    out.set_cap(order() - Rational(2 * lo_, den_));
    out.lo_ = -(lo_ + 0);
    // (sum a_k q^k)^{-1} with a_0 invertible: standard recurrence
    __int128 span128 = ((__int128)out.cap_num_ * den_ / out.cap_den_) - out.lo_ + 1;
    if (span128 <= 0) return out;
    std::size_t span = (std::size_t)span128;
    out.c_.assign(span, kZero);
    BigRational inv0 = BigRational(1) / c_[0];
    out.c_[0] = inv0;
    for (std::size_t n = 1; n < span; ++n) {
        BigRational acc(0);
        std::size_t kmax = std::min(n, c_.size() - 1);
        for (std::size_t k = 1; k <= kmax; ++k)
            if (c_[k] != kZero) acc += c_[k] * out.c_[n - k];
        out.c_[n] = -inv0 * acc;
    }
    out.normalize();
    return out;
}

ExactQSeries ExactQSeries::pow(int p) const {
    if (p == 0) return constant(BigRational(1), order());
    ExactQSeries base = (p < 0) ? inverse() : *this;
    int e = p < 0 ? -p : p;
    ExactQSeries acc = base;
    for (int i = 1; i < e; ++i) acc = acc * base;
    return acc;
}

ExactQSeries ExactQSeries::rescale_exponents(std::int64_t m) const {
    if (m < 1) throw std::invalid_argument("rescale_exponents: need m >= 1");
    ExactQSeries out;
    out.den_ = den_;
    out.set_cap(order()); // caller keeps the cap; exponents scale by m
    out.lo_ = lo_ * m;
    if (c_.empty()) return out;
    out.c_.assign((c_.size() - 1) * (std::size_t)m + 1, kZero);
    for (std::size_t k = 0; k < c_.size(); ++k) out.c_[k * (std::size_t)m] = c_[k];
    out.trim_to_cap();
    out.normalize();
    return out;
}

ExactQSeries ExactQSeries::shifted(const Rational& e) const {
    ExactQSeries out = *this;
    std::int64_t d = std::lcm(out.den_, e.den());
    if (d != out.den_) {
        std::int64_t f = d / out.den_;
        std::vector<BigRational> nc(out.c_.size() ? (out.c_.size() - 1) * f + 1 : 0, kZero);
        for (std::size_t k = 0; k < out.c_.size(); ++k) nc[k * f] = out.c_[k];
        out.c_ = std::move(nc);
        out.lo_ *= f;
        out.den_ = d;
    }
    out.lo_ += e.num() * (d / e.den());
    out.set_cap(order() + e);
    out.normalize();
    return out;
}

ExactQSeries ExactQSeries::truncated(const Rational& new_order) const {
    ExactQSeries out = *this;
    out.set_cap(std::min(order(), new_order));
    out.trim_to_cap();
    out.normalize();
    return out;
}

bool ExactQSeries::operator==(const ExactQSeries& o) const {
    ExactQSeries d = *this - o;
    return d.is_zero();
}

namespace jacobi {

namespace {

// prod_{n>=1} (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2} (pentagonal numbers)
ExactQSeries euler_product(const Rational& order) {
    ExactQSeries s = ExactQSeries::constant(BigRational(1), order);
    for (std::int64_t k = 1;; ++k) {
        Rational g1(k * (3 * k - 1) / 2), g2(k * (3 * k + 1) / 2);
        if (g1 > order && g2 > order) break;
        BigRational sign((k % 2) ? -1 : 1);
        if (!(g1 > order)) s += ExactQSeries::monomial(sign, g1, order);
        if (!(g2 > order)) s += ExactQSeries::monomial(sign, g2, order);
    }
    return s;
}

// prod (1 +- y q^{n-shift}) type factors as dense series
ExactQSeries product_factor(const Rational& order, int sign, const Rational& first,
                            std::int64_t step = 1) {
    // prod_{j>=0} (1 + sign * q^{first + j*step})
    ExactQSeries s = ExactQSeries::constant(BigRational(1), order);
    for (std::int64_t j = 0;; ++j) {
        Rational e = first + Rational(j * step);
        if (e > order) break;
        if (e.is_zero() && sign < 0) return ExactQSeries::zero(order); // (1-1) factor
        ExactQSeries f = ExactQSeries::constant(BigRational(1), order) +
                         ExactQSeries::monomial(BigRational(sign), e, order);
        s *= f;
    }
    return s;
}

} // namespace

ExactQSeries eta_series(const Rational& order) {
    // q^{1/24} * euler product; build the product to order - 1/24
    Rational q24(1, 24);
    return euler_product(order - q24).shifted(q24);
}

ExactQSeries eta_power(int p, const Rational& order) {
    if (p == 0) return ExactQSeries::constant(BigRational(1), order);
    // q^{p/24} (prod (1-q^n))^p; the product part needs exponents up to
    // order - p/24 (which adds |p|/24 headroom when p < 0).
    Rational shift(p, 24);
    return euler_product(order - shift).pow(p).shifted(shift);
}

ExactQSeries theta_series(int i, bool z_half, const Rational& order) {
    if (i < 1 || i > 4) throw std::invalid_argument("theta_series: i in 1..4");
    Rational one(1), half(1, 2), eighth(1, 8);
    ExactQSeries euler = euler_product(order);
    switch (i) {
        case 1:
            if (!z_half) return ExactQSeries::zero(order); // (1 - y q^0) = 0 at y = 1
            // -i q^{1/8} y^{1/2} prod (1-q^n)(1+q^n)(1+q^{n-1}); -i * i = 1
            return (euler_product(order - eighth) * product_factor(order - eighth, +1, one) *
                    product_factor(order - eighth, +1, Rational(0)))
                .shifted(eighth);
        case 2:
            if (z_half) return ExactQSeries::zero(order); // contains (1 - q^0)
            return (euler_product(order - eighth) * product_factor(order - eighth, +1, one) *
                    product_factor(order - eighth, +1, Rational(0)))
                .shifted(eighth);
        case 3:
            return euler * product_factor(order, z_half ? -1 : +1, half) *
                   product_factor(order, z_half ? -1 : +1, half);
        case 4:
        default:
            return euler * product_factor(order, z_half ? +1 : -1, half) *
                   product_factor(order, z_half ? +1 : -1, half);
    }
}

ExactQSeries appell_mu_series(const Rational& order) {
    // mu(tau,1/2) = [1/2 + 2 sum_{m>=1} q^{m(m+1)/2}/(1+q^m)] / theta_2(tau,0),
    // the l < 0 half of the Appell sum folding onto l > 0 termwise.
    Rational inner_order = order + Rational(1, 8) + Rational(1); // headroom for the division
    ExactQSeries acc = ExactQSeries::constant(BigRational(1, 2), inner_order);
    for (std::int64_t m = 1;; ++m) {
        Rational e0(m * (m + 1) / 2);
        if (e0 > inner_order) break;
        // q^{m(m+1)/2} * (1+q^m)^{-1} expanded geometrically
        ExactQSeries geo = ExactQSeries::zero(inner_order);
        for (std::int64_t j = 0;; ++j) {
            Rational e = e0 + Rational(j * m);
            if (e > inner_order) break;
            geo += ExactQSeries::monomial(BigRational((j % 2) ? -1 : 1), e, inner_order);
        }
        acc += geo.scaled(BigRational(2));
    }
    ExactQSeries th2 = theta_series(2, false, inner_order);
    ExactQSeries out = acc * th2.inverse();
    // audit: doubling the l-range cannot change kept coefficients, since the
    // m-term's minimal exponent m(m+1)/2 already exceeds the cap beyond the loop
    return out;
}

ExactQSeries zk3_series(const Rational& order) {
    Rational work = order + Rational(1);
    ExactQSeries t2z = theta_series(2, true, work);  // identically zero
    ExactQSeries t2 = theta_series(2, false, work);
    ExactQSeries t3z = theta_series(3, true, work);
    ExactQSeries t3 = theta_series(3, false, work);
    ExactQSeries t4z = theta_series(4, true, work);
    ExactQSeries t4 = theta_series(4, false, work);
    ExactQSeries sum = ExactQSeries::zero(work);
    if (!t2z.is_zero()) sum += (t2z * t2.inverse()).pow(2);
    sum += (t3z * t3.inverse()).pow(2);
    sum += (t4z * t4.inverse()).pow(2);
    return sum.scaled(BigRational(8)).truncated(order);
}

ExactQSeries mathieu_H_series(const Rational& order) {
    Rational work = order + Rational(2);
    ExactQSeries z = zk3_series(work);
    ExactQSeries e3 = eta_power(3, work);
    ExactQSeries th1 = theta_series(1, true, work); // = theta_2(tau,0)
    ExactQSeries th1sq = th1 * th1;
    ExactQSeries mu = appell_mu_series(work);
    ExactQSeries num = z * e3 - th1sq.scaled(BigRational(24)) * mu;
    ExactQSeries h = num * th1sq.inverse();
    return h.truncated(order);
}

std::vector<BigInt> mathieu_H_oracle(int n) {
    if (n < 1) throw std::invalid_argument("mathieu_H_oracle: need n >= 1");
    ExactQSeries h = mathieu_H_series(Rational(n) - Rational(1, 8) + Rational(1, 2));
    Rational lead(-1, 8);
    if (h.coeff(lead) != BigRational(-2))
        throw std::logic_error("mathieu_H_oracle: leading coefficient is not -2");
    std::vector<BigInt> t;
    t.reserve(n);
    for (int k = 1; k <= n; ++k) {
        BigRational v = h.coeff(Rational(k) + lead);
        if (denominator(v) != 1)
            throw std::logic_error("mathieu_H_oracle: non-integer coefficient");
        t.push_back(numerator(v));
    }
    // every nonzero coefficient must be an integer sitting on Z - 1/8
    for (std::size_t k = 0; k < h.size(); ++k) {
        BigRational v = h.coeff_at_index(k);
        if (v == BigRational(0)) continue;
        if (denominator(v) != 1 || !(h.exponent(k) + Rational(1, 8)).is_integer())
            throw std::logic_error("mathieu_H_oracle: coefficient off the Z - 1/8 grid");
    }
    return t;
}

ExactQSeries unary_theta(int ell, int r, const Rational& order) {
    if (ell < 2 || r < 1 || r > ell - 1)
        throw std::invalid_argument("unary_theta: need ell >= 2, 1 <= r <= ell-1");
    ExactQSeries s = ExactQSeries::zero(order);
    for (std::int64_t k = 0;; ++k) {
        std::int64_t mp = 2 * ell * k + r;
        std::int64_t mm = -2 * ell * k - 2 * ell + r; // k -> -(k+1)
        Rational ep(mp * mp, 4 * ell), em(mm * mm, 4 * ell);
        bool anyp = !(ep > order), anym = !(em > order);
        if (!anyp && !anym) break;
        if (anyp) s += ExactQSeries::monomial(BigRational(mp), ep, order);
        if (anym) s += ExactQSeries::monomial(BigRational(mm), em, order);
    }
    return s;
}

ExactQSeries eisenstein_series(int k2, const Rational& order) {
    if (k2 < 4 || k2 % 2 != 0) throw std::invalid_argument("eisenstein_series: even k2 >= 4");
    unsigned k = (unsigned)k2 / 2;
    BigRational factor = BigRational(-4 * (std::int64_t)k) / arith::bernoulli(k2);
    ExactQSeries s = ExactQSeries::constant(BigRational(1), order);
    for (std::int64_t n = 1; !(Rational(n) > order); ++n)
        s += ExactQSeries::monomial(factor * BigRational(arith::sigma(k2 - 1, n)), Rational(n),
                                    order);
    return s;
}

ExactQSeries j_oracle(const Rational& order) {
    Rational work = order + Rational(2);
    ExactQSeries e4 = eisenstein_series(4, work);
    ExactQSeries num = e4 * e4 * e4;
    return (num * eta_power(-24, work)).truncated(order);
}

ExactQSeries level2_hauptmodul_oracle(const Rational& order) {
    Rational work = order + Rational(2);
    ExactQSeries e1 = eta_series(work);
    ExactQSeries e2 = eta_series((work + Rational(1)) ).rescale_exponents(2);
    e2 = e2 * ExactQSeries::constant(BigRational(1), work);
    ExactQSeries q = (e1 * e2.inverse()).pow(24);
    ExactQSeries out = q + ExactQSeries::constant(BigRational(24), work);
    return out.truncated(order);
}

} // namespace jacobi
} // namespace radmach
