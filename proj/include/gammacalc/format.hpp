#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

namespace gammacalc {

/// Fixed 12-significant-digit float formatting for machine outputs.
/// Always carries a decimal point or exponent, so a formatted value parses
/// back as a floating-point JSON number and re-serializes byte-identically.
inline std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos && s.find_first_of("0123456789") != std::string::npos)
        s += ".0";
    return s;
}

/// Canonical JSON serialization: object keys in sorted order, compact
/// separators, floats through format_sig12. parse . serialize is the
/// identity on its own output.
inline void write_canonical_json(const nlohmann::json& j, std::string& out) {
    using nlohmann::json;
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {  // std::map order: sorted
                if (!first) out += ',';
                first = false;
                out += json(key).dump();
                out += ':';
                write_canonical_json(value, out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& value : j) {
                if (!first) out += ',';
                first = false;
                write_canonical_json(value, out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float:
            out += format_sig12(j.get<double>());
            break;
        default:
            out += j.dump();  // strings, integers, booleans, null
            break;
    }
}

inline std::string to_canonical_json(const nlohmann::json& j) {
    std::string out;
    write_canonical_json(j, out);
    out += '\n';
    return out;
}

}  // namespace gammacalc
