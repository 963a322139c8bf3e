#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "vortexpair/dynamics.hpp"
#include "vortexpair/error.hpp"
#include "vortexpair/grid.hpp"

namespace vpair {

/// Write to a sibling temporary and rename over `path`.
inline void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

namespace detail {

template <class T>
void put_le(std::string& out, T v) {
    static_assert(sizeof(T) == 8);
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
}

template <class T>
T get_le(const std::string& in, std::size_t& pos) {
    static_assert(sizeof(T) == 8);
    if (pos + 8 > in.size()) throw IoError("field dump is truncated");
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= std::uint64_t{static_cast<unsigned char>(in[pos + static_cast<std::size_t>(b)])} << (8 * b);
    pos += 8;
    T v;
    std::memcpy(&v, &bits, 8);
    return v;
}

inline std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

/// Header n1, n2 (int64), x1_min, x1_max, x2_max (float64), then the values row by row; all little-endian.
inline std::string encode_field(const ScalarField& f) {
    std::string out;
    out.reserve(40 + 8 * f.values.size());
    detail::put_le<std::int64_t>(out, f.grid.n1());
    detail::put_le<std::int64_t>(out, f.grid.n2());
    detail::put_le<double>(out, f.grid.x1_min());
    detail::put_le<double>(out, f.grid.x1_max());
    detail::put_le<double>(out, f.grid.x2_max());
    for (double v : f.values) detail::put_le<double>(out, v);
    return out;
}

inline ScalarField decode_field(const std::string& bytes) {
    std::size_t pos = 0;
    const auto n1 = detail::get_le<std::int64_t>(bytes, pos);
    const auto n2 = detail::get_le<std::int64_t>(bytes, pos);
    const double x1_min = detail::get_le<double>(bytes, pos);
    const double x1_max = detail::get_le<double>(bytes, pos);
    const double x2_max = detail::get_le<double>(bytes, pos);
    if (n1 <= 0 || n2 <= 0 || n1 > (1 << 20) || n2 > (1 << 20)) throw IoError("field dump has invalid dimensions");
    const std::size_t count = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
    if (bytes.size() != 40 + 8 * count) throw IoError("field dump size does not match its header");
    ScalarField f(GridSpec(x1_min, x1_max, x2_max, static_cast<int>(n1), static_cast<int>(n2)));
    for (double& v : f.values) v = detail::get_le<double>(bytes, pos);
    return f;
}

inline void write_field(const std::filesystem::path& path, const ScalarField& f) { atomic_write(path, encode_field(f)); }

inline ScalarField read_field(const std::filesystem::path& path) { return decode_field(detail::read_all(path)); }

/// x1,x2,value rows at cell centres.
inline void write_field_csv(const std::filesystem::path& path, const ScalarField& f) {
    std::ostringstream ss;
    ss << std::setprecision(17) << "x1,x2,value\n";
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        const Point p = f.grid.center(k);
        ss << p.x1 << ',' << p.x2 << ',' << f.values[k] << '\n';
    }
    atomic_write(path, ss.str());
}

inline void write_ledger_csv(const std::filesystem::path& path, const std::vector<LedgerRow>& ledger) {
    std::ostringstream ss;
    ss << std::setprecision(17) << "time,E,I,circulation,center_x1,center_x2,orbit_distance\n";
    for (const LedgerRow& r : ledger) {
        ss << r.time << ',' << r.energy << ',' << r.impulse << ',' << r.circulation << ',' << r.center_x1 << ','
           << r.center_x2 << ',' << r.orbit_distance << '\n';
    }
    atomic_write(path, ss.str());
}

}  // namespace vpair
