#pragma once

// Persistence formats: sweep CSV, JSON documents with meta/rows (and claims),
// aligned text tables, and the optional on-disk R2Table cache.

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gausscircle/core_arith.hpp"
#include "gausscircle/errors.hpp"

namespace gausscircle::io {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kDefaultPrecision = 12;

using Json = nlohmann::ordered_json;
using Cell = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string>;

/// Named columns and rows of cells; the common currency of every output format.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// %.{precision}g with '.' as decimal point regardless of locale.
inline std::string format_double(double v, int precision = kDefaultPrecision) {
    gausscircle::detail::require(precision >= 1 && precision <= 17, "precision must lie in [1, 17]");
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

inline std::string format_cell(const Cell& c, int precision) {
    struct V {
        int p;
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(std::uint64_t u) const { return std::to_string(u); }
        std::string operator()(double d) const { return format_double(d, p); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(V{precision}, c);
}

/// Doubles are rounded to `precision` digits first so JSON and CSV carry the
/// same values.
inline Json cell_to_json(const Cell& c, int precision) {
    struct V {
        int p;
        Json operator()(std::monostate) const { return nullptr; }
        Json operator()(bool b) const { return b; }
        Json operator()(std::int64_t i) const { return i; }
        Json operator()(std::uint64_t u) const { return u; }
        Json operator()(double d) const {
            if (!std::isfinite(d)) return nullptr;
            return std::strtod(format_double(d, p).c_str(), nullptr);
        }
        Json operator()(const std::string& s) const { return s; }
    };
    return std::visit(V{precision}, c);
}

inline void write_csv(std::ostream& os, const Table& t, int precision = kDefaultPrecision) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string s = format_cell(row[i], precision);
            if (s.find_first_of(",\"\n") != std::string::npos) {
                std::string q = "\"";
                for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                s = q + "\"";
            }
            os << (i ? "," : "") << s;
        }
        os << '\n';
    }
}

inline Json rows_to_json(const Table& t, int precision = kDefaultPrecision) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i)
            obj[t.columns[i]] = cell_to_json(row[i], precision);
        rows.push_back(std::move(obj));
    }
    return rows;
}

/// {"meta": {command, params, tool_version}, "rows": [...]}; `extra` members
/// (for instance "claims") are appended after rows.
inline Json make_document(const std::string& command, const Json& params, const Table& t,
                          int precision = kDefaultPrecision, const Json& extra = Json::object()) {
    Json doc = Json::object();
    doc["meta"] = {{"command", command}, {"params", params}, {"tool_version", kToolVersion}};
    doc["rows"] = rows_to_json(t, precision);
    for (const auto& [k, v] : extra.items()) doc[k] = v;
    return doc;
}

inline void write_text_table(std::ostream& os, const Table& t, int precision = kDefaultPrecision) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(t.columns.size(), 0);
    for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
    for (const auto& row : t.rows) {
        auto& out = cells.emplace_back();
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
            out.push_back(format_cell(row[i], precision));
            width[i] = std::max(width[i], out.back().size());
        }
    }
    const auto line = [&](const std::vector<std::string>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            os << (i ? "  " : "") << v[i];
            if (i + 1 < v.size()) os << std::string(width[i] - v[i].size(), ' ');
        }
        os << '\n';
    };
    line(t.columns);
    for (const auto& r : cells) line(r);
}

// ---------------------------------------------------------------------------
// Sweep records

inline const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols{"x", "count", "pi_x", "delta", "normalized"};
    return cols;
}

inline Table records_table(const std::vector<arith::LatticeRecord>& records) {
    Table t{sweep_columns(), {}};
    t.rows.reserve(records.size());
    for (const auto& r : records) t.rows.push_back({r.x, r.count, r.pi_x, r.delta, r.normalized});
    return t;
}

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <class T>
T parse_number(std::string_view s, std::size_t line_no) {
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw DomainError("sweep CSV line " + std::to_string(line_no) + ": cannot parse '" + std::string(s) + "'");
    return v;
}

}  // namespace detail

/// Reads a sweep CSV. The header must be exactly the sweep schema; unknown or
/// missing columns are rejected. pre_jump values are not part of the schema.
inline std::vector<arith::LatticeRecord> read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("sweep CSV: empty input");
    if (!line.empty() && line.back() == '\r') throw DomainError("sweep CSV: CRLF line endings are not accepted");
    const auto header = detail::split_commas(line);
    const auto& cols = sweep_columns();
    if (header.size() != cols.size() || !std::equal(cols.begin(), cols.end(), header.begin()))
        throw DomainError("sweep CSV: header must be 'x,count,pi_x,delta,normalized'");
    std::vector<arith::LatticeRecord> out;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = detail::split_commas(line);
        if (f.size() != cols.size())
            throw DomainError("sweep CSV line " + std::to_string(line_no) + ": expected 5 fields");
        arith::LatticeRecord r;
        r.x = detail::parse_number<double>(f[0], line_no);
        r.count = detail::parse_number<std::uint64_t>(f[1], line_no);
        r.pi_x = detail::parse_number<double>(f[2], line_no);
        r.delta = detail::parse_number<double>(f[3], line_no);
        r.normalized = detail::parse_number<double>(f[4], line_no);
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// R2Table cache: <dir>/r2_table.bin = magic, version, limit, values.

inline constexpr char kCacheMagic[8] = {'G', 'C', 'R', '2', 'T', 'A', 'B', 'L'};
inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr const char* kCacheEnv = "GAUSSCIRCLE_CACHE_DIR";

inline std::optional<std::filesystem::path> cache_path() {
    const char* dir = std::getenv(kCacheEnv);
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir) / "r2_table.bin";
}

/// Returns the cached table when its header matches `limit`, otherwise nothing.
inline std::optional<arith::R2Table> read_cached_table(const std::filesystem::path& p, std::uint64_t limit) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    std::uint32_t version = 0;
    std::uint64_t stored = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&stored), sizeof stored);
    if (!in || std::memcmp(magic, kCacheMagic, sizeof magic) != 0 || version != kCacheVersion || stored != limit)
        return std::nullopt;
    std::vector<std::uint32_t> values(limit + 1);
    in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(std::uint32_t)));
    if (!in || in.peek() != std::char_traits<char>::eof()) return std::nullopt;
    return arith::R2Table(std::move(values));
}

inline void write_cached_table(const std::filesystem::path& p, const arith::R2Table& t) {
    std::filesystem::create_directories(p.parent_path());
    const auto tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ResourceError("cannot write R2Table cache at " + tmp);
        const std::uint64_t limit = t.limit();
        out.write(kCacheMagic, sizeof kCacheMagic);
        out.write(reinterpret_cast<const char*>(&kCacheVersion), sizeof kCacheVersion);
        out.write(reinterpret_cast<const char*>(&limit), sizeof limit);
        const auto v = t.values();
        out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(std::uint32_t)));
        if (!out) throw ResourceError("failed writing R2Table cache");
    }
    std::filesystem::rename(tmp, p);
}

/// r2_sieve(limit), served from and stored to the cache directory when
/// GAUSSCIRCLE_CACHE_DIR is set. A cached table with another limit is replaced.
inline arith::R2Table cached_r2_table(std::uint64_t limit, const arith::SieveOptions& opts = {}) {
    const auto p = cache_path();
    if (p) {
        if (auto t = read_cached_table(*p, limit)) return std::move(*t);
    }
    auto t = arith::r2_sieve(limit, opts);
    if (p) write_cached_table(*p, t);
    return t;
}

}  // namespace gausscircle::io
