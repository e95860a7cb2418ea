#ifndef RADMACH_JSON_OUT_HPP
#define RADMACH_JSON_OUT_HPP

#include <string>

#include "radmach/radseries.hpp"

namespace radmach {

// Canonical JSON for a SeriesResult: fixed key order, floats printed with 17
// significant digits so that parse -> emit round-trips byte-identically.
std::string series_result_json(const std::string& group, const std::string& multiplier,
                               const Rational& weight, const Rational& mu, const Rational& nu,
                               const SeriesResult& r);

std::string qexpansion_json(const std::string& group, const std::string& multiplier,
                            const Rational& weight, const Rational& mu, std::int64_t c_max,
                            int window, const QExpansion& q);

// Helpers shared by the CLI payloads.
std::string json_escape(const std::string& s);
std::string fmt_double(double v);

} // namespace radmach

#endif
