#pragma once

#include <array>
#include <charconv>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "chromadec/errors.hpp"
#include "chromadec/spectra.hpp"

namespace chromadec::csv {

inline constexpr std::string_view kCrlf = "\r\n";

/// Shortest decimal form that round-trips the exact double.
inline std::string format_double(double v) {
    std::array<char, 64> buf;
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), p);
}

inline std::string format_fixed(double v, int precision) {
    std::array<char, 64> buf;
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed, precision);
    (void)ec;
    return std::string(buf.data(), p);
}

/// Parse a complete field as a double; partial consumption is an error.
inline double parse_double_strict(std::string_view field, const char* what) {
    double v{};
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last)
        throw ParseError(std::string(what) + ": bad number '" + std::string(field) + "'");
    return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

/// Split text into lines on LF, tolerating CRLF; drops one trailing empty line.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view line = text.substr(start, nl - start);
        if (line.ends_with('\r'))
            line.remove_suffix(1);
        lines.push_back(line);
        start = nl + 1;
    }
    if (!lines.empty() && lines.back().empty())
        lines.pop_back();
    return lines;
}

inline constexpr std::string_view kSweepHeader =
    "wavelength_nm,B,G,R,blackness,redness,yellowness,greenness,cyanness,"
    "blueness,magentaness,whiteness,M,M_BY,M_GM,M_RC";

/// Sweep table: one row per wavelength, code columns in canonical order.
inline void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kSweepHeader << kCrlf;
    for (const auto& row : rows) {
        os << format_double(row.wavelength);
        for (std::size_t i = 0; i < 3; ++i)
            os << ',' << format_double(row.channels[i]);
        for (unsigned mask : kCanonicalOrder3)
            os << ',' << format_double(row.codes.activation(mask));
        os << ',' << format_double(row.opponent.m)
           << ',' << format_double(row.opponent.m_by)
           << ',' << format_double(row.opponent.m_gm)
           << ',' << format_double(row.opponent.m_rc) << kCrlf;
    }
}

/// Curve-set table: header "wavelength_nm,<name1>,..." then one row per
/// grid point.
inline void write_curves(std::ostream& os, const CurveSet& set) {
    os << "wavelength_nm";
    for (const auto& c : set.curves())
        os << ',' << c.name();
    os << kCrlf;
    const auto& grid = set.grid();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        os << format_double(grid[k]);
        for (const auto& c : set.curves())
            os << ',' << format_double(c.responses()[k]);
        os << kCrlf;
    }
}

/// Strict parse of the curve-set table: exact header token, 1 to 4 uniquely
/// named curves, every row fully numeric on one shared uniform grid,
/// responses in [0, 1].
inline CurveSet read_curves(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty())
        throw ParseError("curves: empty input");
    const auto header = split_fields(lines[0]);
    if (header.empty() || header[0] != "wavelength_nm")
        throw ParseError("curves: header must start with wavelength_nm");
    const std::size_t ncurves = header.size() - 1;
    if (ncurves < 1 || ncurves > 4)
        throw ParseError("curves: need 1 to 4 named curves");
    std::vector<std::string> names;
    for (std::size_t i = 1; i < header.size(); ++i) {
        const std::string_view name = header[i];
        if (name.empty() || name.find_first_of("\",\r\n") != std::string_view::npos)
            throw ParseError("curves: bad curve name in header");
        for (const auto& seen : names)
            if (seen == name)
                throw ParseError("curves: duplicate curve name '" + std::string(name) + "'");
        names.emplace_back(name);
    }
    std::vector<double> grid;
    std::vector<std::vector<double>> responses(ncurves);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = split_fields(lines[li]);
        if (fields.size() != ncurves + 1)
            throw ParseError("curves: row " + std::to_string(li) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(ncurves + 1));
        grid.push_back(parse_double_strict(fields[0], "curves wavelength"));
        for (std::size_t c = 0; c < ncurves; ++c)
            responses[c].push_back(parse_double_strict(fields[c + 1], "curves response"));
    }
    try {
        std::vector<SensitivityCurve> curves;
        for (std::size_t c = 0; c < ncurves; ++c)
            curves.emplace_back(names[c], grid, std::move(responses[c]));
        return CurveSet(std::move(curves));
    } catch (const DomainError& e) {
        throw ParseError(std::string("curves: ") + e.what());
    } catch (const DimensionError& e) {
        throw ParseError(std::string("curves: ") + e.what());
    }
}

inline CurveSet read_curves(std::istream& is) {
    std::string text(std::istreambuf_iterator<char>(is), {});
    return read_curves(std::string_view(text));
}

} // namespace chromadec::csv
