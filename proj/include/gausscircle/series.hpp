#pragma once

// Truncated evaluation of the circle-problem series: the Hardy-Voronoi
// Bessel series, the M/N/P/Q trigonometric families, the expansion obtained
// by inserting the large-argument J1 expansion, and the oscillatory sums
// S_M, D_M and G(h, x, M).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include "gausscircle/core_arith.hpp"
#include "gausscircle/errors.hpp"
#include "gausscircle/special_functions.hpp"
#include "gausscircle/summation.hpp"

namespace gausscircle::series {

/// A truncated series value together with how it was truncated.
struct SeriesEval {
    double value = 0.0;
    std::int64_t outer_terms = 0;
    std::optional<std::int64_t> inner_terms;
    /// |last included outer term|, when meaningful.
    std::optional<double> tail_estimate;
};

namespace detail {

using gausscircle::detail::finite_or_throw;
using gausscircle::detail::require;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kQuarterPi = 0.25 * std::numbers::pi;

inline bool is_integer(double x) { return x == std::floor(x); }

// (-1)^((k+1)/2) for odd k: -1 at k = 1, +1 at k = 3, ...
inline double odd_sign(std::int64_t k) { return ((k + 1) / 2) % 2 == 0 ? 1.0 : -1.0; }

inline SeriesEval make_eval(double value, std::int64_t outer, std::optional<std::int64_t> inner,
                            std::optional<double> tail, const char* where) {
    return SeriesEval{finite_or_throw(value, where), outer, inner, tail};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hardy-Voronoi series

/// Term n of sqrt(x) sum r2(n)/sqrt(n) J1(2 pi sqrt(n x)).
inline double voronoi_term(double x, std::uint64_t n, std::uint32_t r2n,
                           const special::BesselPolicy& policy) {
    if (r2n == 0) return 0.0;
    const double nd = static_cast<double>(n);
    return std::sqrt(x) * r2n / std::sqrt(nd) *
           special::bessel_j1(detail::kTwoPi * std::sqrt(nd * x), policy);
}

/// pi x + sqrt(x) sum_{n=1}^{N} r2(n)/sqrt(n) J1(2 pi sqrt(n x)) for
/// non-integer x (the series converges to the midpoint at integers).
inline SeriesEval voronoi_partial(double x, std::int64_t n_terms, const arith::R2Table& r2,
                                  const special::BesselPolicy& policy = {}) {
    gausscircle::detail::require(x > 0.0 && std::isfinite(x), "voronoi_partial: x must be > 0");
    gausscircle::detail::require(!detail::is_integer(x), "voronoi_partial: x must not be an integer");
    gausscircle::detail::require(n_terms >= 1, "voronoi_partial: n_terms must be >= 1");
    gausscircle::detail::require(r2.limit() >= static_cast<std::uint64_t>(n_terms),
                    "voronoi_partial: R2Table too short for n_terms");
    policy.validate();
    CompensatedSum sum;
    sum += std::numbers::pi * x;
    double last = 0.0;
    for (std::int64_t n = 1; n <= n_terms; ++n) {
        const auto un = static_cast<std::uint64_t>(n);
        const double t = voronoi_term(x, un, r2[un], policy);
        if (t != 0.0) last = t;
        sum += t;
    }
    return detail::make_eval(sum.value(), n_terms, std::nullopt, std::fabs(last), "voronoi_partial");
}

/// Every partial value of the Voronoi series for n = 1..n_max (index n-1).
inline std::vector<double> voronoi_partial_trace(double x, std::int64_t n_max,
                                                 const arith::R2Table& r2,
                                                 const special::BesselPolicy& policy = {}) {
    gausscircle::detail::require(x > 0.0 && !detail::is_integer(x), "voronoi_partial_trace: x must be a positive non-integer");
    gausscircle::detail::require(n_max >= 1 && r2.limit() >= static_cast<std::uint64_t>(n_max),
                    "voronoi_partial_trace: R2Table too short");
    policy.validate();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max));
    CompensatedSum sum;
    sum += std::numbers::pi * x;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const auto un = static_cast<std::uint64_t>(n);
        sum += voronoi_term(x, un, r2[un], policy);
        out.push_back(sum.value());
    }
    return out;
}

// ---------------------------------------------------------------------------
// M_s, N_s, P_s, Q_s

struct TrigPair {
    double m = 0.0;  ///< cosine family
    double n = 0.0;  ///< sine family
};

/// Truncations of M_s(a,b) = sum_{k odd} (-1)^((k+1)/2) cos(a + b sqrt k)/k^s
/// and the sine analogue N_s, over the first k_terms odd k.
inline TrigPair m_n_s(double a, double b, double s, std::int64_t k_terms) {
    gausscircle::detail::require(s > 0.0, "m_n_s: s must be > 0");
    gausscircle::detail::require(k_terms >= 1, "m_n_s: k_terms must be >= 1");
    CompensatedSum m;
    CompensatedSum n;
    for (std::int64_t j = 1; j <= k_terms; ++j) {
        const std::int64_t k = 2 * j - 1;
        const double kd = static_cast<double>(k);
        const double w = detail::odd_sign(k) / std::pow(kd, s);
        const double phase = a + b * std::sqrt(kd);
        m += w * std::cos(phase);
        n += w * std::sin(phase);
    }
    return {gausscircle::detail::finite_or_throw(m.value(), "m_n_s"), gausscircle::detail::finite_or_throw(n.value(), "m_n_s")};
}

/// Rectangular truncation: outer n <= n_terms, inner first k_terms odd k.
struct RectangularTruncation {
    std::int64_t n_terms = 1;
    std::int64_t k_terms = 1;
};

/// Triangular truncation: all pairs with n * k <= limit (k odd), the finite
/// set obtained by regrouping sum_{m <= limit} r2(m) (...) by divisors.
struct TriangularTruncation {
    std::int64_t limit = 1;
};

using Truncation = std::variant<RectangularTruncation, TriangularTruncation>;

struct PQEval {
    SeriesEval p;
    SeriesEval q;
};

namespace detail {

// Visits every (n, k) of the truncation, k odd, in order of increasing n.
template <class Visit>
void for_each_pair(const Truncation& tr, Visit&& visit) {
    if (const auto* rect = std::get_if<RectangularTruncation>(&tr)) {
        require(rect->n_terms >= 1 && rect->k_terms >= 1, "truncation: term counts must be >= 1");
        for (std::int64_t n = 1; n <= rect->n_terms; ++n)
            for (std::int64_t j = 1; j <= rect->k_terms; ++j) visit(n, 2 * j - 1);
    } else {
        const auto lim = std::get<TriangularTruncation>(tr).limit;
        require(lim >= 1, "truncation: limit must be >= 1");
        for (std::int64_t n = 1; n <= lim; ++n)
            for (std::int64_t k = 1; n * k <= lim; k += 2) visit(n, k);
    }
}

inline std::int64_t outer_count(const Truncation& tr) {
    if (const auto* rect = std::get_if<RectangularTruncation>(&tr)) return rect->n_terms;
    return std::get<TriangularTruncation>(tr).limit;
}

inline std::optional<std::int64_t> inner_count(const Truncation& tr) {
    if (const auto* rect = std::get_if<RectangularTruncation>(&tr)) return rect->k_terms;
    return std::nullopt;
}

}  // namespace detail

/// P_s(a,b) = sum_n M_s(a, b sqrt n)/n^s and Q_s likewise with N_s, both
/// truncated per `tr`. The tail estimate is |row n = last| of each sum.
inline PQEval p_q_s(double a, double b, double s, const Truncation& tr) {
    gausscircle::detail::require(s > 0.5, "p_q_s: s must be > 1/2");
    CompensatedSum p;
    CompensatedSum q;
    std::int64_t row = 0;
    double row_p = 0.0;
    double row_q = 0.0;
    detail::for_each_pair(tr, [&](std::int64_t n, std::int64_t k) {
        if (n != row) {
            row = n;
            row_p = row_q = 0.0;
        }
        const double nk = static_cast<double>(n) * static_cast<double>(k);
        const double w = detail::odd_sign(k) / std::pow(nk, s);
        const double phase = a + b * std::sqrt(nk);
        const double tp = w * std::cos(phase);
        const double tq = w * std::sin(phase);
        p += tp;
        q += tq;
        row_p += tp;
        row_q += tq;
    });
    const auto outer = detail::outer_count(tr);
    const auto inner = detail::inner_count(tr);
    return {detail::make_eval(p.value(), outer, inner, std::fabs(row_p), "p_q_s"),
            detail::make_eval(q.value(), outer, inner, std::fabs(row_q), "p_q_s")};
}

inline PQEval p_q_s(double a, double b, double s, std::int64_t n_terms, std::int64_t k_terms) {
    return p_q_s(a, b, s, RectangularTruncation{n_terms, k_terms});
}

/// Per-term breakdown of the J1-expansion form of R(x).
struct ExpansionTerms {
    /// x^(1/4)/pi * P_{3/4}(pi/4, 2 pi sqrt x)
    double leading = 0.0;
    /// index s-1 holds (-1)^s c1(2s) P_{s+3/4} / (2^(4s) pi^(2s+1) x^(s-1/4)), s = 1..N
    std::vector<double> cosine;
    /// index s holds -(-1)^s c1(2s+1) Q_{s+5/4} / (2^(4s+2) pi^(2s+2) x^(s+1/4)), s = 0..N
    std::vector<double> sine;
    SeriesEval eval;
};

/// Right side of the expansion of R(x) = sum_{n<=x} r2(n) - pi x obtained by
/// inserting the large-argument J1 expansion into the Voronoi series and
/// regrouping r2 by odd divisors, without its O-term:
///   (x^(1/4)/pi) P_{3/4} + sum_{s=1}^{N} cosine_s + sum_{s=0}^{N} sine_s.
/// The normalization is the printed one, which drops the factor 4 of
/// r2 = 4 sum(...); 4 * value is the comparable quantity for R(x).
inline ExpansionTerms theorem3_expansion(double x, int big_n, const Truncation& tr) {
    gausscircle::detail::require(x >= 1.0 && std::isfinite(x), "theorem3_expansion: x must be >= 1");
    gausscircle::detail::require(!detail::is_integer(x), "theorem3_expansion: x must not be an integer");
    gausscircle::detail::require(big_n >= 0 && big_n <= 10, "theorem3_expansion: N must lie in [0, 10]");
    const double pi = std::numbers::pi;
    const double b = detail::kTwoPi * std::sqrt(x);

    // P_{s+3/4} and Q_{s+5/4} for s = 0..N in a single pass over (n, k).
    const auto count = static_cast<std::size_t>(big_n) + 1;
    std::vector<CompensatedSum> p(count);
    std::vector<CompensatedSum> q(count);
    std::int64_t row = 0;
    double row_total = 0.0;
    std::vector<double> cos_coef(count);
    std::vector<double> sin_coef(count);
    for (std::size_t s = 0; s < count; ++s) {
        const int si = static_cast<int>(s);
        const double sign = si % 2 == 0 ? 1.0 : -1.0;
        cos_coef[s] = s == 0 ? std::pow(x, 0.25) / pi
                             : sign * special::c1(2 * si) /
                                   (std::pow(2.0, 4 * si) * std::pow(pi, 2 * si + 1) * std::pow(x, si - 0.25));
        sin_coef[s] = -sign * special::c1(2 * si + 1) /
                      (std::pow(2.0, 4 * si + 2) * std::pow(pi, 2 * si + 2) * std::pow(x, si + 0.25));
    }
    detail::for_each_pair(tr, [&](std::int64_t n, std::int64_t k) {
        if (n != row) {
            row = n;
            row_total = 0.0;
        }
        const double nk = static_cast<double>(n) * static_cast<double>(k);
        const double phase = detail::kQuarterPi + b * std::sqrt(nk);
        const double c = detail::odd_sign(k) * std::cos(phase);
        const double sn = detail::odd_sign(k) * std::sin(phase);
        double w_cos = std::pow(nk, -0.75);
        double w_sin = std::pow(nk, -1.25);
        const double inv = 1.0 / nk;
        for (std::size_t s = 0; s < count; ++s) {
            p[s] += c * w_cos;
            q[s] += sn * w_sin;
            row_total += cos_coef[s] * c * w_cos + sin_coef[s] * sn * w_sin;
            w_cos *= inv;
            w_sin *= inv;
        }
    });

    ExpansionTerms out;
    out.leading = cos_coef[0] * p[0].value();
    double total = out.leading;
    for (std::size_t s = 1; s < count; ++s) {
        out.cosine.push_back(cos_coef[s] * p[s].value());
        total += out.cosine.back();
    }
    for (std::size_t s = 0; s < count; ++s) {
        out.sine.push_back(sin_coef[s] * q[s].value());
        total += out.sine.back();
    }
    out.eval = detail::make_eval(total, detail::outer_count(tr), detail::inner_count(tr),
                                 std::fabs(row_total), "theorem3_expansion");
    return out;
}

inline ExpansionTerms theorem3_expansion(double x, int big_n, std::int64_t n_terms, std::int64_t k_terms) {
    return theorem3_expansion(x, big_n, RectangularTruncation{n_terms, k_terms});
}

/// The explicit N = 1 expansion, summed over n p <= limit with p odd. Each
/// field carries the overall leading minus sign.
struct FourTermDisplay {
    double t105 = 0.0;  ///< -105 s sin / (4096 pi^3 (np)^(9/4) x^(5/4))
    double t15 = 0.0;   ///< +15 s cos / (256 pi^2 (np)^(7/4) x^(3/4))
    double t3 = 0.0;    ///< -3 s sin / (8 pi (np)^(5/4) x^(1/4))
    double t2 = 0.0;    ///< +2 s x^(1/4) cos / (np)^(3/4)
    double total = 0.0;
};

inline FourTermDisplay n1_display(double x, std::int64_t limit) {
    gausscircle::detail::require(x >= 1.0 && !detail::is_integer(x), "n1_display: x must be a non-integer >= 1");
    gausscircle::detail::require(limit >= 1, "n1_display: limit must be >= 1");
    const double pi = std::numbers::pi;
    const double b = detail::kTwoPi * std::sqrt(x);
    CompensatedSum s105;
    CompensatedSum s15;
    CompensatedSum s3;
    CompensatedSum s2;
    detail::for_each_pair(TriangularTruncation{limit}, [&](std::int64_t n, std::int64_t p) {
        const double np = static_cast<double>(n) * static_cast<double>(p);
        const double sg = detail::odd_sign(p);
        const double phase = b * std::sqrt(np) + detail::kQuarterPi;
        const double sn = std::sin(phase);
        const double cs = std::cos(phase);
        s105 += sg * sn * std::pow(np, -2.25);
        s15 += sg * cs * std::pow(np, -1.75);
        s3 += sg * sn * std::pow(np, -1.25);
        s2 += sg * cs * std::pow(np, -0.75);
    });
    FourTermDisplay d;
    d.t105 = -105.0 * s105.value() / (4096.0 * pi * pi * pi * std::pow(x, 1.25));
    d.t15 = 15.0 * s15.value() / (256.0 * pi * pi * std::pow(x, 0.75));
    d.t3 = -3.0 * s3.value() / (8.0 * pi * std::pow(x, 0.25));
    d.t2 = 2.0 * std::pow(x, 0.25) * s2.value();
    d.total = d.t105 + d.t15 + d.t3 + d.t2;
    return d;
}

// ---------------------------------------------------------------------------
// Oscillatory sums sum_{n<=M} w(n) cos(2 pi sqrt(n x) + pi/4) / n^e

/// sum_{n=1}^{M} cos(2 pi sqrt(n x) + pi/4) / n^exponent.
inline double oscillatory_sum(double x, std::int64_t m_terms, double exponent) {
    CompensatedSum sum;
    const double b = detail::kTwoPi * std::sqrt(x);
    for (std::int64_t n = 1; n <= m_terms; ++n) {
        const double nd = static_cast<double>(n);
        sum += std::cos(b * std::sqrt(nd) + detail::kQuarterPi) / std::pow(nd, exponent);
    }
    return sum.value();
}

/// Every prefix of oscillatory_sum for M = 1..m_max (index M-1).
inline std::vector<double> oscillatory_prefix_sums(double x, std::int64_t m_max, double exponent) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(m_max, 0)));
    CompensatedSum sum;
    const double b = detail::kTwoPi * std::sqrt(x);
    for (std::int64_t n = 1; n <= m_max; ++n) {
        const double nd = static_cast<double>(n);
        sum += std::cos(b * std::sqrt(nd) + detail::kQuarterPi) / std::pow(nd, exponent);
        out.push_back(sum.value());
    }
    return out;
}

/// S_M(x) = sum_{n=1}^{M} r2(n) cos(2 pi sqrt(n x) + pi/4) / n^(3/4).
inline SeriesEval s_partial(double x, std::int64_t m_terms, const arith::R2Table& r2) {
    gausscircle::detail::require(x > 0.0 && std::isfinite(x), "s_partial: x must be > 0");
    gausscircle::detail::require(m_terms >= 1, "s_partial: m_terms must be >= 1");
    gausscircle::detail::require(r2.limit() >= static_cast<std::uint64_t>(m_terms), "s_partial: R2Table too short");
    CompensatedSum sum;
    const double b = detail::kTwoPi * std::sqrt(x);
    double last = 0.0;
    for (std::int64_t n = 1; n <= m_terms; ++n) {
        const auto r = r2[static_cast<std::uint64_t>(n)];
        if (r == 0) continue;
        const double nd = static_cast<double>(n);
        const double t = r * std::cos(b * std::sqrt(nd) + detail::kQuarterPi) / std::pow(nd, 0.75);
        sum += t;
        last = t;
    }
    return detail::make_eval(sum.value(), m_terms, std::nullopt, std::fabs(last), "s_partial");
}

/// D_M(x) = sum_{n=1}^{M} cos(2 pi sqrt(n x) + pi/4) / n^(3/4 - delta), 0 < delta < 1/4.
inline SeriesEval d_partial(double x, std::int64_t m_terms, double delta) {
    gausscircle::detail::require(delta > 0.0 && delta < 0.25, "d_partial: delta must lie in (0, 1/4)");
    gausscircle::detail::require(x > 0.0 && std::isfinite(x), "d_partial: x must be > 0");
    gausscircle::detail::require(m_terms >= 1, "d_partial: m_terms must be >= 1");
    const double e = 0.75 - delta;
    const double md = static_cast<double>(m_terms);
    const double last = std::cos(detail::kTwoPi * std::sqrt(md * x) + detail::kQuarterPi) / std::pow(md, e);
    return detail::make_eval(oscillatory_sum(x, m_terms, e), m_terms, std::nullopt, std::fabs(last),
                             "d_partial");
}

/// G(h, x, M) = sum_{n=1}^{M} cos(2 pi sqrt(n x) + pi/4) / n^(3/4 - h), 0 <= h < 1/4.
inline double g_partial(double h, double x, std::int64_t m_terms) {
    gausscircle::detail::require(h >= 0.0 && h < 0.25, "g_partial: h must lie in [0, 1/4)");
    gausscircle::detail::require(x > 0.0 && std::isfinite(x), "g_partial: x must be > 0");
    gausscircle::detail::require(m_terms >= 1, "g_partial: m_terms must be >= 1");
    return gausscircle::detail::finite_or_throw(oscillatory_sum(x, m_terms, 0.75 - h), "g_partial");
}

/// dG/dh = sum cos(2 pi sqrt(n x) + pi/4) log(n) / n^(3/4 - h).
inline double g_partial_dh(double h, double x, std::int64_t m_terms) {
    gausscircle::detail::require(h >= 0.0 && h < 0.25, "g_partial_dh: h must lie in [0, 1/4)");
    gausscircle::detail::require(x > 0.0 && m_terms >= 1, "g_partial_dh: x must be > 0 and M >= 1");
    CompensatedSum sum;
    const double b = detail::kTwoPi * std::sqrt(x);
    for (std::int64_t n = 2; n <= m_terms; ++n) {
        const double nd = static_cast<double>(n);
        sum += std::cos(b * std::sqrt(nd) + detail::kQuarterPi) * std::log(nd) / std::pow(nd, 0.75 - h);
    }
    return sum.value();
}

}  // namespace gausscircle::series
