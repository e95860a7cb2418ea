#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radmach/qseries.hpp"
#include "radmach/radsums.hpp"
#include "radmach/special.hpp"

using namespace radmach;

namespace {
const GroupSpec sl2{1, 1};
const auto triv = MultiplierSystem::trivial();
constexpr double TWO_PI = 6.283185307179586476925286766559;

Complex e2pi(Complex z) { return std::exp(Complex(0.0, TWO_PI) * z); }
} // namespace

TEST_CASE("regularizer") {
    GroupElement g{1, 0, 2, 1};
    Complex tau{0.2, 1.3};
    // weight >= 1 and upper-triangular cases are 1
    CHECK(regularizer(Rational(2), Rational(0), g, tau) == Complex(1.0, 0.0));
    CHECK(regularizer(Rational(1, 2), Rational(-1, 8), GroupElement::T(), tau) ==
          Complex(1.0, 0.0));
    // w = 0, mu = -1: the regularised summand telescopes to e(-gt) - e(-ginf)
    Complex gtau = moebius_and_j(g, tau).image;
    Complex ginf = Complex(0.5, 0.0); // a/c = 1/2
    Complex term = e2pi(-gtau) * regularizer(Rational(0), Rational(-1), g, tau);
    CHECK(std::abs(term - (e2pi(-gtau) - e2pi(-ginf))) < 1e-13);
    // w = 1/2, mu = -1/8 against the regularised incomplete gamma directly
    Complex czd = 2.0 * tau + 1.0;
    Complex arg = Complex(0.0, TWO_PI) * (-1.0 / 8.0) * (-1.0 / (2.0 * czd));
    Complex expect = special::lower_incomplete_gamma_regularized(0.5, arg);
    CHECK(std::abs(regularizer(Rational(1, 2), Rational(-1, 8), g, tau) - expect) < 1e-14);
    CHECK_THROWS_AS(regularizer(Rational(0), Rational(1), g, tau), std::invalid_argument);
}

TEST_CASE("pointwise J sum") {
    SumOptions su;
    su.K = 300;
    su.threads = 2;
    su.c_max_for_const = 2000;
    auto r = sum_eval(sl2, triv, Rational(0), Rational(-1), {0.0, 1.0}, su);
    CHECK(std::abs(r.value.real() - 1008.0) / 1008.0 < 1e-2);
    CHECK(std::abs(r.value.imag()) < 1e-6);
    REQUIRE(r.trace.size() == 8);
    for (std::size_t i = 1; i < r.trace.size(); ++i)
        CHECK(r.trace[i].first > r.trace[i - 1].first);

    // high in the cusp the 4-term expansion dominates
    SumOptions s2;
    s2.K = 500;
    s2.threads = 2;
    s2.c_max_for_const = 2000;
    Complex tau{0.0, 4.0};
    auto hv = sum_eval(sl2, triv, Rational(0), Rational(-1), tau, s2);
    Complex qexp = e2pi(-tau) + 24.0 + 196884.0 * e2pi(tau) + 21493760.0 * e2pi(2.0 * tau);
    CHECK(std::abs(hv.value - qexp) / std::abs(qexp) < 1e-3);
}

TEST_CASE("qexp_eval") {
    QExpansion jlead;
    jlead.offset = Rational(0);
    jlead.step = Rational(1);
    jlead.coeffs = {Complex(24.0, 0.0)};
    jlead.singular_exponent = Rational(-1);
    auto r = qexp_eval(jlead, {0.0, 1.0}, 1e30);
    CHECK(std::abs(r.value - (std::exp(TWO_PI) + 24.0)) < 1e-9);

    // self-consistency of truncations
    auto e4_10 = jacobi::eisenstein_series(4, Rational(10));
    QExpansion q10, q20;
    q10.offset = q20.offset = Rational(0);
    q10.step = q20.step = Rational(1);
    auto e4_20 = jacobi::eisenstein_series(4, Rational(20));
    for (int n = 0; n <= 10; ++n)
        q10.coeffs.push_back(e4_10.coeff(Rational(n)).convert_to<double>());
    for (int n = 0; n <= 20; ++n)
        q20.coeffs.push_back(e4_20.coeff(Rational(n)).convert_to<double>());
    Complex tau{0.0, 2.0};
    CHECK(std::abs(qexp_eval(q10, tau, 1e30).value - qexp_eval(q20, tau, 1e30).value) < 1e-10);

    // tail-bound flag trips when Im(tau) is too small for the truncation
    auto bad = qexp_eval(q10, {0.0, 0.05}, 1e-8);
    CHECK_FALSE(bad.tail_ok);
    auto good = qexp_eval(q10, {0.0, 2.0}, 1e-8);
    CHECK(good.tail_ok);
}

TEST_CASE("completion: E2 closed form and invariance") {
    QExpansion e2 = e2_expansion(60);
    QExpansion cshadow;
    cshadow.offset = Rational(0);
    cshadow.step = Rational(1);
    cshadow.coeffs = {Complex(-12.0, 0.0)};
    // E2-hat(tau) = E2(tau) - 3/(pi y)
    for (Complex tau : {Complex(0.0, 1.0), Complex(0.3, 1.7)}) {
        auto hat = completion_eval(e2, cshadow, Rational(2), tau);
        CHECK(hat.quadrature_converged);
        Complex expect = qexp_eval(e2, tau, 1e30).value - 3.0 / (M_PI * tau.imag());
        CHECK(std::abs(hat.value - expect) < 1e-10);
    }
    double res = completion_invariance_residual(e2, cshadow, triv, Rational(2),
                                                GroupElement::S(), {0.0, 1.0});
    CHECK(res < 1e-6);
    // zero shadow: identity on evaluations
    QExpansion none;
    none.offset = Rational(0);
    none.step = Rational(1);
    auto idv = completion_eval(e2, none, Rational(2), {0.1, 1.1});
    CHECK(idv.value == qexp_eval(e2, Complex(0.1, 1.1), 1e30).value);
}

TEST_CASE("completion: Mathieu H invariance under S") {
    auto tn = jacobi::mathieu_H_oracle(50);
    QExpansion H;
    H.offset = Rational(-1, 8);
    H.step = Rational(1);
    H.coeffs.resize(51);
    H.coeffs[0] = -2.0;
    for (int n = 1; n <= 50; ++n) H.coeffs[n] = tn[n - 1].convert_to<double>();
    auto e3 = jacobi::eta_power(3, Rational(60));
    QExpansion sh;
    sh.offset = Rational(1, 8);
    sh.step = Rational(1);
    double scale = -12.0 / std::sqrt(2.0 * M_PI);
    for (int k = 0; k < 60; ++k)
        sh.coeffs.push_back(scale * e3.coeff(Rational(8 * k + 1, 8)).convert_to<double>());
    double res = completion_invariance_residual(H, sh, MultiplierSystem::eta_power(-3),
                                                Rational(1, 2), GroupElement::S(), {0.0, 1.0});
    CHECK(res < 1e-3);
}

TEST_CASE("E2 quasimodularity") {
    CHECK(quasimodularity_residual_E2(GroupElement::T(), {0.3, 1.2}, 60) < 1e-12);
    CHECK(quasimodularity_residual_E2(GroupElement::S(), {0.0, 1.0}, 60) < 1e-8);
    CHECK(quasimodularity_residual_E2({1, 0, 1, 1}, {0.5, 2.0}, 60) < 1e-6);
    CHECK_THROWS_AS(quasimodularity_residual_E2(GroupElement::S(), {0.0, 0.05}, 10),
                    std::runtime_error);
}
