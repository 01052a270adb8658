#ifndef GES2N_IO_HPP
#define GES2N_IO_HPP

// CSV interchange and artifact writing.  Measurements travel as
// `time,accel,omega` CSV (seconds, arbitrary units, rad/s); the sample rate
// is inferred from the time column and uniformity is verified.  All floats
// are written with 17 significant digits and files are committed atomically
// (temp + rename) so identical runs produce byte-identical artifacts.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ges2n/signal_model.hpp"

namespace ges2n {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct schema_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

inline double parse_double(const std::string& tok, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw schema_error("line " + std::to_string(line_no) + ": cannot parse number '" + tok + "'");
    }
}

inline std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

// Reads a `time,accel,omega` CSV, infers fs and checks sampling uniformity
// (max jitter 1e-9 relative to the mean step).
inline vibration_record read_vibration_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line))
        throw schema_error(path + ": empty file");
    auto header = detail::split(line, ',');
    if (header.size() != 3 || header[0] != "time" || header[1] != "accel" || header[2] != "omega")
        throw schema_error(path + ": expected header 'time,accel,omega', got '" +
                           detail::trim(line) + "'");
    std::vector<double> t, x, w;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = detail::trim(line);
        if (trimmed.empty()) continue;
        const auto cols = detail::split(trimmed, ',');
        if (cols.size() != 3)
            throw schema_error(path + ": line " + std::to_string(line_no) +
                               ": expected 3 columns, got " + std::to_string(cols.size()));
        t.push_back(detail::parse_double(cols[0], line_no));
        x.push_back(detail::parse_double(cols[1], line_no));
        w.push_back(detail::parse_double(cols[2], line_no));
    }
    if (t.size() < 2)
        throw schema_error(path + ": need at least 2 samples");
    const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(dt > 0.0))
        throw schema_error(path + ": time column must be increasing");
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double step = t[i] - t[i - 1];
        if (std::abs(step - dt) > 1e-9 * dt)
            throw schema_error(path + ": non-uniform sampling at row " + std::to_string(i + 1));
    }
    vibration_record rec{std::move(x), 1.0 / dt, std::move(w)};
    try {
        rec.validate();
    } catch (const std::invalid_argument& e) {
        throw schema_error(path + ": " + e.what());
    }
    return rec;
}

// Writes content to path atomically (temp file in the same directory, then rename).
inline void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw io_error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out)
            throw io_error("write failed for '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw io_error("rename '" + tmp + "' -> '" + path + "': " + ec.message());
}

inline void write_vibration_csv(const std::string& path, const vibration_record& rec) {
    std::string out = "time,accel,omega\n";
    for (std::size_t i = 0; i < rec.size(); ++i) {
        out += detail::format17(static_cast<double>(i) / rec.fs);
        out += ',';
        out += detail::format17(rec.x[i]);
        out += ',';
        out += detail::format17(rec.omega[i]);
        out += '\n';
    }
    atomic_write(path, out);
}

// Two-column CSV (used for alpha/b, freq/magnitude, index/value artifacts).
inline void write_columns_csv(const std::string& path, const std::string& header_a,
                              const std::string& header_b, std::span<const double> a,
                              std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("write_columns_csv: column length mismatch");
    std::string out = header_a + "," + header_b + "\n";
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += detail::format17(a[i]);
        out += ',';
        out += detail::format17(b[i]);
        out += '\n';
    }
    atomic_write(path, out);
}

inline std::vector<std::pair<double, double>> read_columns_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line))
        throw schema_error(path + ": empty file");
    std::vector<std::pair<double, double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = detail::trim(line);
        if (trimmed.empty()) continue;
        const auto cols = detail::split(trimmed, ',');
        if (cols.size() != 2)
            throw schema_error(path + ": line " + std::to_string(line_no) + ": expected 2 columns");
        rows.emplace_back(detail::parse_double(cols[0], line_no),
                          detail::parse_double(cols[1], line_no));
    }
    return rows;
}

}  // namespace ges2n

#endif  // GES2N_IO_HPP
