#include "radmach/multiplier.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "radmach/arith.hpp"
#include "radmach/special.hpp"

namespace radmach {

MultiplierSystem MultiplierSystem::eta_power(int s) {
    MultiplierSystem m;
    m.eta_exp_ = s;
    return m;
}

MultiplierSystem MultiplierSystem::rho_nh(std::int64_t n, std::int64_t h) {
    if (n < 1 || h < 1 || n % h != 0 || 24 % h != 0)
        throw std::invalid_argument("rho_nh: need h | n and h | 24");
    MultiplierSystem m;
    m.rhos_.emplace_back(n, h);
    return m;
}

MultiplierSystem MultiplierSystem::product(const std::vector<MultiplierSystem>& fs) {
    MultiplierSystem m;
    for (const auto& f : fs) {
        m.eta_exp_ += f.eta_exp_;
        m.rhos_.insert(m.rhos_.end(), f.rhos_.begin(), f.rhos_.end());
        m.rho_inv_.insert(m.rho_inv_.end(), f.rho_inv_.begin(), f.rho_inv_.end());
    }
    return m;
}

std::int64_t MultiplierSystem::level() const {
    std::int64_t n = 1;
    for (const auto& [rn, rh] : rhos_) n = std::lcm(n, rn);
    for (const auto& [rn, rh] : rho_inv_) n = std::lcm(n, rn);
    return n;
}

MultiplierSystem MultiplierSystem::inverse() const {
    MultiplierSystem m;
    m.eta_exp_ = -eta_exp_;
    m.rhos_ = rho_inv_;
    m.rho_inv_ = rhos_;
    return m;
}

std::string MultiplierSystem::str() const {
    if (is_trivial() && rho_inv_.empty()) return "trivial";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << '*';
        first = false;
    };
    for (const auto& [n, h] : rhos_) { sep(); os << "rho:" << n << '|' << h; }
    for (const auto& [n, h] : rho_inv_) { sep(); os << "rhobar:" << n << '|' << h; }
    if (eta_exp_ != 0) { sep(); os << "eta:" << eta_exp_; }
    return os.str();
}

MultiplierSystem MultiplierSystem::parse(const std::string& s) {
    MultiplierSystem m;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t star = s.find('*', pos);
        std::string tok = s.substr(pos, star == std::string::npos ? star : star - pos);
        if (tok.empty()) throw std::invalid_argument("multiplier: empty factor");
        if (tok == "trivial") {
            // no-op factor
        } else if (tok.rfind("eta:", 0) == 0) {
            m.eta_exp_ += (int)std::stol(tok.substr(4));
        } else if (tok.rfind("rho:", 0) == 0 || tok.rfind("rhobar:", 0) == 0) {
            bool inv = tok[3] == 'b';
            std::string body = tok.substr(inv ? 7 : 4);
            std::size_t bar = body.find('|');
            if (bar == std::string::npos)
                throw std::invalid_argument("multiplier: rho needs n|h");
            std::int64_t n = std::stoll(body.substr(0, bar));
            std::int64_t h = std::stoll(body.substr(bar + 1));
            auto r = rho_nh(n, h);
            if (inv) (m.rho_inv_).emplace_back(n, h);
            else m.rhos_.emplace_back(n, h);
            (void)r;
        } else {
            throw std::invalid_argument("multiplier: unknown factor '" + tok + "'");
        }
        if (star == std::string::npos) break;
        pos = star + 1;
    }
    return m;
}

Rational eta_phase(const GroupElement& g) {
    if (!g.unimodular()) throw std::invalid_argument("eta_phase: matrix not unimodular");
    if (g.c > 0) {
        Rational p = Rational(-(g.a + g.d), 24 * g.c) + arith::dedekind_sum(g.d, g.c) / Rational(2)
                     + Rational(1, 8);
        return p.mod1();
    }
    if (g.c == 0) {
        if (g.d == 1) return Rational(-g.b, 24).mod1();
        // g = -T^{-b}: phase(g) = phase(-g) + 1/4
        return (Rational(g.b, 24) + Rational(1, 4)).mod1();
    }
    // c < 0: -g has positive c and phase(g) = phase(-g) - 1/4
    return (eta_phase(-g) - Rational(1, 4)).mod1();
}

Rational phase(const MultiplierSystem& sys, const GroupElement& g) {
    if (!g.unimodular()) throw std::invalid_argument("phase: matrix not unimodular");
    Rational p(0);
    if (sys.eta_exponent() != 0)
        p += eta_phase(g) * Rational(sys.eta_exponent());
    auto rho_term = [&](std::int64_t n, std::int64_t h, int sign) {
        if (g.c % n != 0)
            throw std::invalid_argument("phase: element outside Gamma_0(" + std::to_string(n) + ")");
        Rational r = Rational::from_i128(-(__int128)g.c * g.d, (__int128)n * h);
        p += (sign > 0) ? r : -r;
    };
    for (const auto& [n, h] : sys.rho_factors()) rho_term(n, h, +1);
    for (const auto& [n, h] : sys.rho_inverse_factors()) rho_term(n, h, -1);
    return p.mod1();
}

Rational alpha_at_infinity(const MultiplierSystem& sys, std::int64_t h_width) {
    return phase(sys, GroupElement::T(h_width));
}

Complex unit_phase(const Rational& p) {
    double x = p.mod1().to_double();
    return {std::cos(2.0 * M_PI * x), std::sin(2.0 * M_PI * x)};
}

double cocycle_residual(const MultiplierSystem& sys, const Rational& w,
                        const GroupElement& g1, const GroupElement& g2, Complex tau) {
    double wd = w.to_double();
    Complex g2tau = moebius_and_j(g2, tau).image;
    Complex lhs = unit_phase(phase(sys, g1)) * unit_phase(phase(sys, g2)) *
                  j_power(g1, g2tau, wd) * j_power(g2, tau, wd);
    GroupElement g12 = g1 * g2;
    Complex rhs = unit_phase(phase(sys, g12)) * j_power(g12, tau, wd);
    return std::abs(lhs - rhs);
}

bool consistency_check(const MultiplierSystem& sys, const Rational& w) {
    Rational lhs = phase(sys, -GroupElement::identity());
    Rational rhs = (w / Rational(2)).mod1();
    return lhs == rhs;
}

} // namespace radmach
