#pragma once

// Text formats for matrices and phase schedules.
//
// Matrix:   {"rows": r, "cols": c, "re": [[...], ...], "im": [[...], ...]}
// Schedule: {"pairs": [[theta, phi], ...], "final_phi": x}   (final_phi optional)
//
// Numbers are written with 17 significant digits so every finite double
// round-trips exactly.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "error.hpp"
#include "matrix_core.hpp"
#include "poly_track.hpp"

namespace qsvt {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(Errc::IoError, "read failed for '" + path + "'");
    return ss.str();
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw Error(Errc::IoError, "write failed for '" + path + "'");
}

inline std::string matrix_to_json(const ComplexMatrix &m) {
    require_finite(m, "matrix to save");
    auto rows_of = [&](bool imag) {
        std::string s = "[";
        for (Index i = 0; i < m.rows(); ++i) {
            s += i ? ",\n    [" : "\n    [";
            for (Index j = 0; j < m.cols(); ++j) {
                if (j) s += ", ";
                s += format_double(imag ? m(i, j).imag() : m(i, j).real());
            }
            s += "]";
        }
        return s + (m.rows() ? "\n  ]" : "]");
    };
    return "{\n  \"rows\": " + std::to_string(m.rows()) + ",\n  \"cols\": " + std::to_string(m.cols()) +
           ",\n  \"re\": " + rows_of(false) + ",\n  \"im\": " + rows_of(true) + "\n}\n";
}

namespace detail {

inline nlohmann::json parse_json(const std::string &text, const std::string &what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(Errc::ParseError, what + ": malformed JSON at byte " + std::to_string(e.byte));
    }
}

inline const nlohmann::json &field(const nlohmann::json &obj, const char *name, const std::string &what) {
    if (!obj.is_object()) throw Error(Errc::ParseError, what + ": top level must be an object");
    const auto it = obj.find(name);
    if (it == obj.end()) throw Error(Errc::ParseError, what + ": missing field '" + name + "'");
    return *it;
}

inline double number(const nlohmann::json &v, const std::string &where) {
    if (!v.is_number()) throw Error(Errc::ParseError, where + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw Error(Errc::ParseError, where + ": non-finite value");
    return d;
}

inline Index count(const nlohmann::json &v, const std::string &where) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw Error(Errc::ParseError, where + ": expected a non-negative integer");
    return static_cast<Index>(v.get<long long>());
}

} // namespace detail

inline ComplexMatrix matrix_from_json(const std::string &text, const std::string &what = "matrix") {
    const auto doc = detail::parse_json(text, what);
    const Index rows = detail::count(detail::field(doc, "rows", what), what + " field 'rows'");
    const Index cols = detail::count(detail::field(doc, "cols", what), what + " field 'cols'");
    ComplexMatrix m(rows, cols);
    for (const char *part : {"re", "im"}) {
        const auto &arr = detail::field(doc, part, what);
        const std::string base = what + " field '" + part + "'";
        if (!arr.is_array() || static_cast<Index>(arr.size()) != rows)
            throw Error(Errc::ParseError, base + ": expected " + std::to_string(rows) + " rows");
        for (Index i = 0; i < rows; ++i) {
            const auto &row = arr[static_cast<std::size_t>(i)];
            const std::string at = base + " row " + std::to_string(i);
            if (!row.is_array() || static_cast<Index>(row.size()) != cols)
                throw Error(Errc::ParseError, at + ": expected " + std::to_string(cols) + " entries");
            for (Index j = 0; j < cols; ++j) {
                const double v = detail::number(row[static_cast<std::size_t>(j)], at + " column " + std::to_string(j));
                if (part[0] == 'r')
                    m(i, j) = Complex(v, 0.0);
                else
                    m(i, j) = Complex(m(i, j).real(), v);
            }
        }
    }
    return m;
}

inline void save_matrix(const ComplexMatrix &m, const std::string &path) { write_text_file(path, matrix_to_json(m)); }

inline ComplexMatrix load_matrix(const std::string &path) {
    return matrix_from_json(read_text_file(path), "'" + path + "'");
}

inline std::string schedule_to_json(const PhaseSchedule &s) {
    std::string out = "{\n  \"pairs\": [";
    for (std::size_t k = 0; k < s.size(); ++k) {
        out += k ? ",\n    [" : "\n    [";
        out += format_double(s[k].theta) + ", " + format_double(s[k].phi) + "]";
    }
    out += s.size() ? "\n  ]" : "]";
    if (s.final_phi()) out += ",\n  \"final_phi\": " + format_double(*s.final_phi());
    return out + "\n}\n";
}

inline PhaseSchedule schedule_from_json(const std::string &text, const std::string &what = "schedule") {
    const auto doc = detail::parse_json(text, what);
    const auto &pairs = detail::field(doc, "pairs", what);
    if (!pairs.is_array()) throw Error(Errc::ParseError, what + " field 'pairs': expected an array");
    std::vector<PhasePair> out;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const std::string at = what + " field 'pairs' entry " + std::to_string(k);
        const auto &p = pairs[k];
        if (!p.is_array() || p.size() != 2) throw Error(Errc::ParseError, at + ": expected [theta, phi]");
        out.push_back({detail::number(p[0], at + " theta"), detail::number(p[1], at + " phi")});
    }
    std::optional<double> last;
    if (const auto it = doc.find("final_phi"); it != doc.end() && !it->is_null())
        last = detail::number(*it, what + " field 'final_phi'");
    try {
        return PhaseSchedule(std::move(out), last);
    } catch (const Error &e) {
        throw Error(Errc::ParseError, what + ": " + e.what());
    }
}

inline void save_schedule(const PhaseSchedule &s, const std::string &path) {
    write_text_file(path, schedule_to_json(s));
}

inline PhaseSchedule load_schedule(const std::string &path) {
    return schedule_from_json(read_text_file(path), "'" + path + "'");
}

} // namespace qsvt
