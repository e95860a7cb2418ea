#include "radmach/json_out.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace radmach {

std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999"; // parses back to inf
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

std::string series_result_json(const std::string& group, const std::string& multiplier,
                               const Rational& weight, const Rational& mu, const Rational& nu,
                               const SeriesResult& r) {
    std::ostringstream os;
    os << "{\"group\":\"" << json_escape(group) << "\""
       << ",\"multiplier\":\"" << json_escape(multiplier) << "\""
       << ",\"weight\":\"" << weight.str() << "\""
       << ",\"mu\":\"" << mu.str() << "\""
       << ",\"nu\":\"" << nu.str() << "\""
       << ",\"c_max\":" << r.c_max << ",\"window\":" << r.window
       << ",\"value_re\":" << fmt_double(r.value.real())
       << ",\"value_im\":" << fmt_double(r.value.imag())
       << ",\"tail_estimate\":" << fmt_double(r.tail_estimate) << ",\"partial_sums\":[";
    for (std::size_t i = 0; i < r.partial_sums.size(); ++i) {
        if (i) os << ',';
        os << '[' << r.partial_sums[i].first << ',' << fmt_double(r.partial_sums[i].second.real())
           << ',' << fmt_double(r.partial_sums[i].second.imag()) << ']';
    }
    os << "]}";
    return os.str();
}

std::string qexpansion_json(const std::string& group, const std::string& multiplier,
                            const Rational& weight, const Rational& mu, std::int64_t c_max,
                            int window, const QExpansion& q) {
    std::ostringstream os;
    os << "{\"group\":\"" << json_escape(group) << "\""
       << ",\"multiplier\":\"" << json_escape(multiplier) << "\""
       << ",\"weight\":\"" << weight.str() << "\""
       << ",\"mu\":\"" << mu.str() << "\""
       << ",\"c_max\":" << c_max << ",\"window\":" << window;
    if (q.singular_exponent)
        os << ",\"singular_exponent\":\"" << q.singular_exponent->str() << "\"";
    os << ",\"offset\":\"" << q.offset.str() << "\",\"step\":\"" << q.step.str() << "\""
       << ",\"coefficients\":[";
    for (std::size_t i = 0; i < q.coeffs.size(); ++i) {
        if (i) os << ',';
        os << "[\"" << q.exponent(i).str() << "\"," << fmt_double(q.coeffs[i].real()) << ','
           << fmt_double(q.coeffs[i].imag()) << ']';
    }
    os << "]}";
    return os.str();
}

} // namespace radmach
