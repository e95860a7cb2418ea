#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radmach/arith.hpp"
#include "radmach/qseries.hpp"
#include "radmach/radsums.hpp"

using namespace radmach;
using namespace radmach::jacobi;

TEST_CASE("series arithmetic closes on the lattice") {
    Rational ord(10);
    auto a = ExactQSeries::monomial(BigRational(3), Rational(1, 8), ord);
    auto b = ExactQSeries::monomial(BigRational(1, 2), Rational(1, 3), ord);
    auto p = a * b;
    CHECK(p.coeff(Rational(1, 8) + Rational(1, 3)) == BigRational(3, 2));
    auto s = a + b - a;
    CHECK(s.coeff(Rational(1, 3)) == BigRational(1, 2));
    CHECK(s.coeff(Rational(1, 8)) == BigRational(0));
    // inversion requires an invertible leading coefficient
    CHECK_THROWS_AS(ExactQSeries::zero(ord).inverse(), std::domain_error);
    auto u = ExactQSeries::constant(BigRational(2), ord) +
             ExactQSeries::monomial(BigRational(-1), Rational(1), ord);
    CHECK((u * u.inverse()) == ExactQSeries::constant(BigRational(1), ord));
}

TEST_CASE("eta and its powers") {
    Rational ord(30);
    auto e3 = eta_power(3, ord);
    // Euler: eta^3 = sum (-1)^n (2n+1) q^{(2n+1)^2/8}
    for (std::int64_t n = 0; 8 * n * n <= 30; ++n) {
        std::int64_t m = 2 * n + 1;
        if (Rational(m * m, 8) > ord) break;
        CHECK(e3.coeff(Rational(m * m, 8)) == BigRational((n % 2 ? -1 : 1) * m));
    }
    CHECK(e3.coeff(Rational(17, 8)) == BigRational(0));

    auto eta = eta_series(Rational(12));
    auto inv = eta_power(-1, Rational(12));
    CHECK((eta * inv) == ExactQSeries::constant(BigRational(1), Rational(12)));
    // 1/eta carries the partition numbers at n - 1/24
    for (int n = 1; n <= 12; ++n)
        CHECK(BigInt(numerator(inv.coeff(Rational(24 * n - 1, 24)))) ==
              arith::partition_count(n));
}

TEST_CASE("theta constants against their sum-form oracles") {
    Rational ord(25, 2);
    auto t3 = theta_series(3, false, ord);
    auto t4 = theta_series(4, false, ord);
    auto t2 = theta_series(2, false, ord);
    // theta3 = sum q^{n^2/2}, theta4 alternating, theta2 = sum q^{(n+1/2)^2/2}
    ExactQSeries s3 = ExactQSeries::zero(ord), s4 = s3, s2 = s3;
    for (std::int64_t n = -10; n <= 10; ++n) {
        s3 += ExactQSeries::monomial(BigRational(1), Rational(n * n, 2), ord);
        s4 += ExactQSeries::monomial(BigRational((n % 2 || n % 2 == -1) ? -1 : 1),
                                     Rational(n * n, 2), ord);
        s2 += ExactQSeries::monomial(BigRational(1), Rational((2 * n + 1) * (2 * n + 1), 8), ord);
    }
    CHECK(t3 == s3);
    CHECK(t4 == s4);
    CHECK(t2 == s2);
    // theta1 degenerates
    CHECK(theta_series(1, false, ord).is_zero());
    CHECK(theta_series(2, true, ord).is_zero());
    CHECK(theta_series(1, true, ord) == t2);
    // classical product identity inside the exact engine
    Rational o50(50);
    auto lhs = theta_series(2, false, o50) * theta_series(3, false, o50) *
               theta_series(4, false, o50);
    CHECK(lhs == eta_power(3, o50).scaled(BigRational(2)));
}

TEST_CASE("Appell-Lerch specialisation") {
    Rational ord(8);
    auto mu = appell_mu_series(ord);
    CHECK(mu.first_exponent() == Rational(-1, 8));
    CHECK(mu.coeff(Rational(-1, 8)) == BigRational(1, 4));
    // truncation audit: a larger working order leaves kept coefficients alone
    auto mu2 = appell_mu_series(ord + Rational(5));
    for (std::size_t k = 0; k < mu.size(); ++k)
        CHECK(mu.coeff_at_index(k) == mu2.coeff(mu.exponent(k)));
    // geometric blocks invert exactly: (1+q^m) * expansion == 1
    auto geo = (ExactQSeries::constant(BigRational(1), ord) +
                ExactQSeries::monomial(BigRational(1), Rational(3), ord))
                   .inverse();
    auto back = geo * (ExactQSeries::constant(BigRational(1), ord) +
                       ExactQSeries::monomial(BigRational(1), Rational(3), ord));
    CHECK(back == ExactQSeries::constant(BigRational(1), ord));
}

TEST_CASE("K3 genus specialisation and the Mathieu oracle") {
    auto z = zk3_series(Rational(4));
    CHECK(z.coeff(Rational(0)) == BigRational(16)); // 8[(t4/t3)^2+(t3/t4)^2] at q^0
    // all stored coefficients exact rationals with integer exponent
    for (std::size_t k = 0; k < z.size(); ++k)
        if (z.coeff_at_index(k) != BigRational(0)) CHECK(z.exponent(k).is_integer());

    auto t = mathieu_H_oracle(5);
    REQUIRE(t.size() == 5);
    CHECK(t[0] == 90);
    CHECK(t[1] == 462);
    CHECK(t[2] == 1540);
    CHECK(t[3] == 4554);
    CHECK(t[4] == 11592);
    auto h = mathieu_H_series(Rational(3));
    CHECK(h.coeff(Rational(-1, 8)) == BigRational(-2));
}

TEST_CASE("unary theta series") {
    auto s21 = unary_theta(2, 1, Rational(30));
    auto e3 = eta_power(3, Rational(30));
    CHECK(s21 == e3);
    // leading term r q^{r^2/4l}
    for (int ell : {2, 3, 5}) {
        for (int r = 1; r < ell; ++r) {
            auto s = unary_theta(ell, r, Rational(6));
            CHECK(s.first_exponent() == Rational(r * r, 4 * ell));
            CHECK(s.coeff(Rational(r * r, 4 * ell)) == BigRational(r));
        }
    }
    // reindexing oracle: S^{(l)}_{l-r} = -sum_k (2lk + l + r) q^{(2lk+l+r)^2/4l}
    for (int ell : {3, 5}) {
        for (int r = 1; r < ell; ++r) {
            Rational ord(9);
            auto lhs = unary_theta(ell, ell - r, ord);
            ExactQSeries rhs = ExactQSeries::zero(ord);
            for (std::int64_t k = -20; k <= 20; ++k) {
                std::int64_t m = 2 * ell * k + ell + r;
                Rational e(m * m, 4 * ell);
                if (e > ord) continue;
                rhs += ExactQSeries::monomial(BigRational(-m), e, ord);
            }
            CHECK(lhs == rhs);
        }
    }
    CHECK_THROWS_AS(unary_theta(2, 2, Rational(5)), std::invalid_argument);
}

TEST_CASE("Eisenstein and j oracles") {
    auto e4 = eisenstein_series(4, Rational(3));
    CHECK(e4.coeff(Rational(0)) == BigRational(1));
    CHECK(e4.coeff(Rational(1)) == BigRational(240));
    CHECK(e4.coeff(Rational(2)) == BigRational(2160));
    auto e6 = eisenstein_series(6, Rational(2));
    CHECK(e6.coeff(Rational(1)) == BigRational(-504));

    auto j = j_oracle(Rational(3));
    CHECK(j.coeff(Rational(-1)) == BigRational(1));
    CHECK(j.coeff(Rational(0)) == BigRational(744));
    CHECK(j.coeff(Rational(1)) == BigRational(196884));
    CHECK(j.coeff(Rational(2)) == BigRational(21493760));
    CHECK(j.coeff(Rational(3)) == BigRational(864299970));

    // round trip: j eta^24 = E4^3 exactly
    Rational ord(20);
    auto lhs = (j_oracle(ord) * eta_power(24, ord + Rational(2))).truncated(ord);
    auto e43 = eisenstein_series(4, ord + Rational(1)).pow(3).truncated(ord);
    CHECK(lhs == e43);

    // j(i) = 1728 from the truncated oracle series
    auto jq = j_oracle(Rational(25));
    QExpansion q;
    q.offset = Rational(-1);
    q.step = Rational(1);
    for (int n = -1; n <= 25; ++n) q.coeffs.push_back(jq.coeff(Rational(n)).convert_to<double>());
    auto v = qexp_eval(q, {0.0, 1.0}, 1e30);
    CHECK(std::abs(v.value.real() - 1728.0) / 1728.0 < 1e-6);
    CHECK(std::abs(v.value.imag()) < 1e-6);
}

TEST_CASE("level-2 eta quotient hauptmodul") {
    auto h = level2_hauptmodul_oracle(Rational(4));
    CHECK(h.coeff(Rational(-1)) == BigRational(1));
    CHECK(h.coeff(Rational(0)) == BigRational(0));
    CHECK(h.coeff(Rational(1)) == BigRational(276));
    CHECK(h.coeff(Rational(2)) == BigRational(-2048));
    CHECK(h.coeff(Rational(3)) == BigRational(11202));
    CHECK(h.coeff(Rational(4)) == BigRational(-49152));
}

TEST_CASE("exponent rescaling") {
    auto eta2 = eta_series(Rational(6)).rescale_exponents(2);
    CHECK(eta2.first_exponent() == Rational(1, 12));
    CHECK(eta2.coeff(Rational(1, 12) + Rational(2)) == BigRational(-1));
    CHECK(eta2.coeff(Rational(1, 12) + Rational(1)) == BigRational(0));
}
