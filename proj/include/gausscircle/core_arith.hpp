#pragma once

// Exact integer side of the circle problem: r2(n) by three independent
// routes, the sieved table, and the lattice count sum_{0<=n<=x} r2(n).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gausscircle/errors.hpp"

namespace gausscircle::arith {

/// Largest x accepted by the summatory routines; keeps every count below
/// 4e12 so 64-bit arithmetic never overflows.
inline constexpr double kMaxRadiusSquared = 1e12;

inline std::uint64_t isqrt(std::uint64_t n) noexcept {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Nonprincipal character mod 4: 1, 0, -1, 0 for n = 1, 2, 3, 0 (mod 4).
constexpr int chi4(std::uint64_t n) noexcept {
    switch (n & 3u) {
        case 1: return 1;
        case 3: return -1;
        default: return 0;
    }
}

/// Number of ordered pairs (a, b) of integers with a^2 + b^2 = n, found by
/// scanning a over [-floor(sqrt n), floor(sqrt n)]. Ground truth for the
/// other two routes.
inline std::uint64_t r2_enumerate(std::uint64_t n) noexcept {
    const std::uint64_t root = isqrt(n);
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a <= root; ++a) {
        const std::uint64_t rest = n - a * a;
        const std::uint64_t b = isqrt(rest);
        if (b * b != rest) continue;
        // (±a, ±b) collapses when a or b is zero.
        count += (a == 0 ? 1 : 2) * (b == 0 ? 1 : 2);
    }
    return count;
}

/// Jacobi's divisor formula: 4 * sum over odd d | n of (-1)^((d-1)/2).
inline std::uint64_t r2_divisor(std::uint64_t n) {
    gausscircle::detail::require(n >= 1, "r2_divisor: n must be >= 1 (r2(0) = 1 by convention)");
    std::int64_t acc = 0;
    const auto visit = [&](std::uint64_t d) {
        if (d & 1u) acc += ((d - 1) / 2) % 2 == 0 ? 1 : -1;
    };
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        visit(d);
        if (d * d != n) visit(n / d);
    }
    return static_cast<std::uint64_t>(4 * acc);
}

/// 4 * (d1(n) - d3(n)), where d_a counts the divisors congruent to a mod 4.
inline std::uint64_t r2_residue(std::uint64_t n) {
    gausscircle::detail::require(n >= 1, "r2_residue: n must be >= 1");
    std::int64_t d1 = 0;
    std::int64_t d3 = 0;
    const auto visit = [&](std::uint64_t d) {
        if (d % 4 == 1) ++d1;
        else if (d % 4 == 3) ++d3;
    };
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        visit(d);
        if (d * d != n) visit(n / d);
    }
    return static_cast<std::uint64_t>(4 * (d1 - d3));
}

/// r2(0..limit), immutable once built.
class R2Table {
public:
    R2Table() = default;
    explicit R2Table(std::vector<std::uint32_t> values) : values_(std::move(values)) {
        gausscircle::detail::require(!values_.empty(), "R2Table: empty table");
    }

    [[nodiscard]] std::uint64_t limit() const noexcept { return values_.size() - 1; }
    [[nodiscard]] std::uint32_t operator[](std::uint64_t n) const noexcept { return values_[n]; }
    [[nodiscard]] std::span<const std::uint32_t> values() const noexcept { return values_; }

    /// sum_{n <= m} r2(n); m is clamped to the table.
    [[nodiscard]] std::uint64_t prefix_sum(std::uint64_t m) const noexcept {
        m = std::min(m, limit());
        std::uint64_t s = 0;
        for (std::uint64_t n = 0; n <= m; ++n) s += values_[n];
        return s;
    }

    friend bool operator==(const R2Table&, const R2Table&) = default;

private:
    std::vector<std::uint32_t> values_;
};

struct SieveOptions {
    /// Tables above this many entries are refused (4 bytes per entry).
    std::uint64_t max_limit = 200'000'000;
    /// Limits above this use the segmented sieve.
    std::uint64_t segment_threshold = 1u << 24;
    std::uint64_t segment_size = 1u << 20;
};

namespace detail {

// Adds 4*chi4(d) at every n = d*q in [lo, hi] (inclusive) for odd d. Each
// divisor pair (d, q) is visited exactly once: by d when d <= s, otherwise by
// its cofactor q, which is then < hi / s.
inline void sieve_segment(std::uint64_t lo, std::uint64_t hi, std::span<std::int32_t> out) {
    const std::uint64_t s = isqrt(hi);
    for (std::uint64_t d = 1; d <= s; d += 2) {
        const std::int32_t w = 4 * chi4(d);
        std::uint64_t m = (lo + d - 1) / d * d;
        for (; m <= hi; m += d) out[m - lo] += w;
    }
    for (std::uint64_t q = 1; q * (s + 1) <= hi; ++q) {
        std::uint64_t d = std::max(s + 1, (lo + q - 1) / q);
        if ((d & 1u) == 0) ++d;
        for (; d * q <= hi; d += 2) out[d * q - lo] += 4 * chi4(d);
    }
}

}  // namespace detail

/// Batch form of the divisor formula: O(limit log limit) additions.
/// Identical output for any segment size.
inline R2Table r2_sieve(std::uint64_t limit, const SieveOptions& opts = {}) {
    if (limit > opts.max_limit)
        throw ResourceError("r2_sieve: limit " + std::to_string(limit) +
                            " exceeds configured cap " + std::to_string(opts.max_limit));
    std::vector<std::uint32_t> values(limit + 1, 0);
    values[0] = 1;
    if (limit == 0) return R2Table(std::move(values));

    if (limit <= opts.segment_threshold) {
        std::vector<std::int32_t> acc(limit + 1, 0);
        for (std::uint64_t d = 1; d <= limit; d += 2) {
            const std::int32_t w = 4 * chi4(d);
            for (std::uint64_t m = d; m <= limit; m += d) acc[m] += w;
        }
        for (std::uint64_t n = 1; n <= limit; ++n) values[n] = static_cast<std::uint32_t>(acc[n]);
        return R2Table(std::move(values));
    }

    const std::uint64_t seg = std::max<std::uint64_t>(opts.segment_size, 1);
    std::vector<std::int32_t> buf;
    for (std::uint64_t lo = 1; lo <= limit; lo += seg) {
        const std::uint64_t hi = std::min(limit, lo + seg - 1);
        buf.assign(hi - lo + 1, 0);
        detail::sieve_segment(lo, hi, buf);
        for (std::uint64_t n = lo; n <= hi; ++n) values[n] = static_cast<std::uint32_t>(buf[n - lo]);
    }
    return R2Table(std::move(values));
}

/// One sample of the lattice count and its error term.
struct LatticeRecord {
    double x = 0.0;
    std::uint64_t count = 0;
    double pi_x = 0.0;
    double delta = 0.0;
    double normalized = 0.0;
    /// Integer sampling only: count(x-1) - pi*x, the value just before the jump.
    std::optional<double> pre_jump_delta;

    friend bool operator==(const LatticeRecord&, const LatticeRecord&) = default;
};

inline LatticeRecord make_record(double x, std::uint64_t count) {
    LatticeRecord r;
    r.x = x;
    r.count = count;
    r.pi_x = std::numbers::pi * x;
    r.delta = static_cast<double>(count) - r.pi_x;
    r.normalized = x > 0.0 ? r.delta / std::pow(x, 0.25) : r.delta;
    return r;
}

enum class SumMethod { enumerate, sieve, floor_identity };

/// Lattice points with a^2 + b^2 <= X, by column scans: O(sqrt X).
inline std::uint64_t lattice_count_enumerate(std::uint64_t X) noexcept {
    const std::uint64_t root = isqrt(X);
    std::uint64_t count = 2 * root + 1;  // column a = 0
    for (std::uint64_t a = 1; a <= root; ++a) count += 2 * (2 * isqrt(X - a * a) + 1);
    return count;
}

/// 1 + 4 * sum_{j >= 0} (floor(X/(4j+1)) - floor(X/(4j+3))), term by term: O(X).
inline std::uint64_t floor_identity_direct(std::uint64_t X) noexcept {
    std::uint64_t plus = 0;
    std::uint64_t minus = 0;
    for (std::uint64_t d = 1; d <= X; d += 4) {
        plus += X / d;
        if (d + 2 <= X) minus += X / (d + 2);
    }
    return 1 + 4 * (plus - minus);
}

/// The same identity regrouped over the hyperbola d*e <= X with u = floor(sqrt X):
///   sum_{d<=u} chi(d) floor(X/d) + sum_{e<=u} P(floor(X/e)) - u P(u),
/// where P(n) = sum_{d<=n} chi(d) is 1 for n = 1, 2 (mod 4) and 0 otherwise.
inline std::uint64_t floor_identity_hyperbola(std::uint64_t X) noexcept {
    if (X == 0) return 1;
    const auto P = [](std::uint64_t n) -> std::int64_t {
        const auto r = n & 3u;
        return (r == 1 || r == 2) ? 1 : 0;
    };
    const std::uint64_t u = isqrt(X);
    std::int64_t s = 0;
    if (X <= 0xFFFFFFFFull) {
        const auto X32 = static_cast<std::uint32_t>(X);
        for (std::uint32_t d = 1; d <= u; d += 2) s += chi4(d) * static_cast<std::int64_t>(X32 / d);
        for (std::uint32_t e = 1; e <= u; ++e) s += P(X32 / e);
    } else {
        for (std::uint64_t d = 1; d <= u; d += 2) s += chi4(d) * static_cast<std::int64_t>(X / d);
        for (std::uint64_t e = 1; e <= u; ++e) s += P(X / e);
    }
    s -= static_cast<std::int64_t>(u) * P(u);
    return static_cast<std::uint64_t>(1 + 4 * s);
}

namespace detail {

inline std::uint64_t checked_floor(double x) {
    gausscircle::detail::require(x >= 0.0 && std::isfinite(x), "x must be a finite nonnegative real");
    if (x > kMaxRadiusSquared) throw ResourceError("x exceeds the 1e12 cap");
    return static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace detail

/// sum_{0 <= n <= x} r2(n) with its error term. `table` is consulted for
/// SumMethod::sieve; a table is sieved on demand when none (or a short one)
/// is supplied.
inline LatticeRecord sum_r2(double x, SumMethod method, const R2Table* table = nullptr) {
    const std::uint64_t X = detail::checked_floor(x);
    std::uint64_t count = 0;
    switch (method) {
        case SumMethod::enumerate: count = lattice_count_enumerate(X); break;
        case SumMethod::floor_identity: count = floor_identity_hyperbola(X); break;
        case SumMethod::sieve:
            if (table != nullptr && table->limit() >= X) {
                count = table->prefix_sum(X);
            } else {
                count = r2_sieve(X).prefix_sum(X);
            }
            break;
    }
    return make_record(x, count);
}

/// (count(x) - pi x) / x^(1/4).
inline double delta_normalized(double x) {
    gausscircle::detail::require(x > 0.0, "delta_normalized: x must be > 0");
    return sum_r2(x, SumMethod::floor_identity).normalized;
}

inline std::string to_string(SumMethod m) {
    switch (m) {
        case SumMethod::enumerate: return "enumerate";
        case SumMethod::sieve: return "sieve";
        case SumMethod::floor_identity: return "floor_identity";
    }
    return "?";
}

inline SumMethod parse_sum_method(const std::string& s) {
    if (s == "enumerate") return SumMethod::enumerate;
    if (s == "sieve") return SumMethod::sieve;
    if (s == "floor_identity" || s == "floor") return SumMethod::floor_identity;
    throw DomainError("unknown summation method '" + s + "'");
}

}  // namespace gausscircle::arith
