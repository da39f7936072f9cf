#pragma once

// Experiment harness: sweeps of Delta(x)/x^(1/4), the dyadic running-max
// table, and convergence ladders for the truncated series.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gausscircle/core_arith.hpp"
#include "gausscircle/errors.hpp"
#include "gausscircle/series.hpp"

namespace gausscircle::analysis {

enum class SamplingKind { integers, half_integers, grid };

struct Sampling {
    SamplingKind kind = SamplingKind::integers;
    double step = 1.0;  ///< grid only
};

struct SweepConfig {
    double x_start = 1.0;
    double x_end = 1.0;
    Sampling sampling{};
    int workers = 1;

    void validate() const {
        using gausscircle::detail::require;
        require(x_start > 0.0 && std::isfinite(x_start), "SweepConfig: x_start must be > 0");
        require(x_end >= x_start && std::isfinite(x_end), "SweepConfig: x_end must be >= x_start");
        require(workers >= 1, "SweepConfig: workers must be >= 1");
        if (sampling.kind == SamplingKind::grid)
            require(sampling.step > 0.0 && std::isfinite(sampling.step), "SweepConfig: grid step must be > 0");
        if (x_end > arith::kMaxRadiusSquared) throw ResourceError("SweepConfig: x_end exceeds the 1e12 cap");
    }
};

struct SweepSummary {
    std::vector<arith::LatticeRecord> records;
    double max_abs_normalized = 0.0;
    double argmax_x = 0.0;
    double mean_count_over_x = 0.0;
};

/// Sample points of a config, sorted ascending.
inline std::vector<double> sample_points(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<double> xs;
    switch (cfg.sampling.kind) {
        case SamplingKind::integers: {
            const auto lo = static_cast<std::uint64_t>(std::ceil(cfg.x_start));
            const auto hi = static_cast<std::uint64_t>(std::floor(cfg.x_end));
            for (std::uint64_t n = lo; n <= hi && lo <= hi; ++n) xs.push_back(static_cast<double>(n));
            break;
        }
        case SamplingKind::half_integers: {
            const double lo = std::ceil(cfg.x_start - 0.5);
            for (double m = lo; m + 0.5 <= cfg.x_end; m += 1.0) xs.push_back(m + 0.5);
            break;
        }
        case SamplingKind::grid: {
            for (std::uint64_t i = 0;; ++i) {
                const double x = cfg.x_start + static_cast<double>(i) * cfg.sampling.step;
                if (x > cfg.x_end) break;
                xs.push_back(x);
            }
            break;
        }
    }
    return xs;
}

namespace detail {

// Running lattice count over consecutive integers: seeded once by the floor
// identity, then advanced by r2(n) from sieved segments.
class RunningCount {
public:
    RunningCount(std::uint64_t start, std::uint64_t end)
        : n_(start), end_(end), count_(arith::floor_identity_hyperbola(start)) {}

    std::uint64_t at(std::uint64_t X) {
        while (n_ < X) {
            if (n_ + 1 > seg_hi_) refill(n_ + 1);
            ++n_;
            count_ += static_cast<std::uint64_t>(buf_[n_ - seg_lo_]);
        }
        return count_;
    }

private:
    void refill(std::uint64_t lo) {
        seg_lo_ = lo;
        seg_hi_ = std::max(lo, std::min(end_, lo + (std::uint64_t{1} << 20) - 1));
        buf_.assign(seg_hi_ - seg_lo_ + 1, 0);
        arith::detail::sieve_segment(seg_lo_, seg_hi_, buf_);
    }

    std::uint64_t n_;
    std::uint64_t end_;
    std::uint64_t count_;
    std::uint64_t seg_lo_ = 1;
    std::uint64_t seg_hi_ = 0;
    std::vector<std::int32_t> buf_;
};

inline void fill_records(std::span<const double> xs, std::span<arith::LatticeRecord> out, bool integer_sampling) {
    if (xs.empty()) return;
    const auto first = static_cast<std::uint64_t>(std::floor(xs.front()));
    const auto last = static_cast<std::uint64_t>(std::floor(xs.back()));
    // Sparse samples are cheaper one at a time.
    const bool dense = last - first <= 16 * static_cast<std::uint64_t>(xs.size());
    std::optional<RunningCount> running;
    if (dense) running.emplace(first == 0 ? 0 : first - 1, last);
    const auto count_at = [&](std::uint64_t X) {
        return dense ? running->at(X) : arith::floor_identity_hyperbola(X);
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const auto X = static_cast<std::uint64_t>(std::floor(x));
        std::optional<std::uint64_t> before;
        if (integer_sampling && X > 0) before = count_at(X - 1);
        auto rec = arith::make_record(x, count_at(X));
        if (integer_sampling) rec.pre_jump_delta = static_cast<double>(before.value_or(0)) - rec.pi_x;
        out[i] = rec;
    }
}

}  // namespace detail

inline SweepSummary summarize(std::vector<arith::LatticeRecord> records) {
    SweepSummary s;
    s.records = std::move(records);
    double mean = 0.0;
    for (const auto& r : s.records) {
        if (std::fabs(r.normalized) > s.max_abs_normalized) {
            s.max_abs_normalized = std::fabs(r.normalized);
            s.argmax_x = r.x;
        }
        mean += static_cast<double>(r.count) / r.x;
    }
    if (!s.records.empty()) mean /= static_cast<double>(s.records.size());
    s.mean_count_over_x = mean;
    return s;
}

/// Lattice count at every sample via the floor identity. Workers take
/// contiguous ranges; the output is identical for any worker count.
inline SweepSummary sweep_delta(const SweepConfig& cfg) {
    const auto xs = sample_points(cfg);
    std::vector<arith::LatticeRecord> records(xs.size());
    const bool integer_sampling = cfg.sampling.kind == SamplingKind::integers;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), std::max<std::size_t>(xs.size(), 1));
    if (workers <= 1) {
        detail::fill_records(xs, records, integer_sampling);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (xs.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(xs.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                detail::fill_records(std::span<const double>(xs).subspan(lo, hi - lo),
                                     std::span<arith::LatticeRecord>(records).subspan(lo, hi - lo),
                                     integer_sampling);
            });
        }
    }
    return summarize(std::move(records));
}

/// Extremes of |Delta(x)|/x^(1/4) over [2^k, 2^(k+1)), including the values
/// just before each jump when they were recorded.
struct DyadicBlock {
    int k = 0;
    double lo = 0.0;
    double hi = 0.0;
    double block_max = 0.0;
    double argmax_x = 0.0;
    double max_positive = 0.0;  ///< max Delta/x^(1/4)
    double min_negative = 0.0;  ///< min Delta/x^(1/4) (pre-jump values included)
    double running_max = 0.0;   ///< max of block_max over blocks 0..k
};

inline std::vector<DyadicBlock> dyadic_blocks(const std::vector<arith::LatticeRecord>& records) {
    std::vector<DyadicBlock> blocks;
    double running = 0.0;
    for (const auto& r : records) {
        if (r.x < 1.0) continue;
        const int k = static_cast<int>(std::floor(std::log2(r.x)));
        // log2 rounding at exact powers of two
        int kk = k;
        while (std::ldexp(1.0, kk) > r.x) --kk;
        while (std::ldexp(1.0, kk + 1) <= r.x) ++kk;
        if (blocks.empty() || blocks.back().k != kk) {
            if (!blocks.empty()) running = std::max(running, blocks.back().block_max);
            DyadicBlock b;
            b.k = kk;
            b.lo = std::ldexp(1.0, kk);
            b.hi = std::ldexp(1.0, kk + 1);
            blocks.push_back(b);
        }
        auto& b = blocks.back();
        const double scale = std::pow(r.x, 0.25);
        const auto consider = [&](double normalized) {
            if (std::fabs(normalized) > b.block_max) {
                b.block_max = std::fabs(normalized);
                b.argmax_x = r.x;
            }
            b.max_positive = std::max(b.max_positive, normalized);
            b.min_negative = std::min(b.min_negative, normalized);
        };
        consider(r.normalized);
        if (r.pre_jump_delta) consider(*r.pre_jump_delta / scale);
        b.running_max = std::max(running, b.block_max);
    }
    return blocks;
}

// ---------------------------------------------------------------------------
// Convergence ladders

enum class ConvergenceTarget { voronoi, s_partial, d_partial, p_q };

struct ConvergenceParams {
    double x = 10.5;
    double delta = 0.125;  ///< d_partial
    double a = std::numbers::pi / 4;  ///< p_q
    double b = 0.0;        ///< p_q; 0 means 2 pi sqrt(x)
    double s = 1.25;       ///< p_q
    std::int64_t k_terms = 1000;  ///< p_q inner truncation
    int window = 100;
};

struct ConvergenceRow {
    std::int64_t truncation = 0;
    double value = 0.0;
    /// Mean of the partial sums over the window ending at this truncation.
    double window_mean = 0.0;
    /// |window_mean - previous window_mean|; absent on the first rung.
    std::optional<double> cesaro_residual;
    /// Voronoi only: mean over the window of |partial - exact count|.
    std::optional<double> windowed_error;
    /// max |partial| over all truncations up to this one.
    double sup_so_far = 0.0;
};

struct ConvergenceReport {
    ConvergenceTarget target = ConvergenceTarget::voronoi;
    ConvergenceParams params;
    std::optional<double> reference;  ///< exact lattice count (voronoi)
    std::vector<ConvergenceRow> rows;
};

inline std::string to_string(ConvergenceTarget t) {
    switch (t) {
        case ConvergenceTarget::voronoi: return "voronoi";
        case ConvergenceTarget::s_partial: return "s_partial";
        case ConvergenceTarget::d_partial: return "d_partial";
        case ConvergenceTarget::p_q: return "p_q";
    }
    return "?";
}

/// Mean of |trace[i] - reference| over the `window` entries ending at
/// truncation n (trace index n-1).
inline double windowed_error(const std::vector<double>& trace, std::int64_t n, int window, double reference) {
    const std::int64_t w = std::min<std::int64_t>(window, n);
    double acc = 0.0;
    for (std::int64_t i = n - w; i < n; ++i) acc += std::fabs(trace[static_cast<std::size_t>(i)] - reference);
    return acc / static_cast<double>(w);
}

/// Evaluates the target at each rung of a strictly increasing ladder. The
/// whole trace up to the last rung is computed once; only finiteness is
/// enforced.
inline ConvergenceReport convergence_report(ConvergenceTarget target, const ConvergenceParams& params,
                                            const std::vector<std::int64_t>& ladder,
                                            const arith::R2Table* table = nullptr) {
    using gausscircle::detail::require;
    require(!ladder.empty(), "convergence_report: empty ladder");
    require(ladder.front() >= 1, "convergence_report: truncations must be >= 1");
    for (std::size_t i = 1; i < ladder.size(); ++i)
        require(ladder[i] > ladder[i - 1], "convergence_report: ladder must be strictly increasing");
    require(params.window >= 1, "convergence_report: window must be >= 1");
    const std::int64_t top = ladder.back();

    ConvergenceReport rep;
    rep.target = target;
    rep.params = params;
    std::vector<double> trace;
    arith::R2Table local;
    const auto need_table = [&]() -> const arith::R2Table& {
        if (table != nullptr && table->limit() >= static_cast<std::uint64_t>(top)) return *table;
        local = arith::r2_sieve(static_cast<std::uint64_t>(top));
        return local;
    };

    switch (target) {
        case ConvergenceTarget::voronoi: {
            trace = series::voronoi_partial_trace(params.x, top, need_table());
            rep.reference = static_cast<double>(arith::sum_r2(params.x, arith::SumMethod::floor_identity).count);
            break;
        }
        case ConvergenceTarget::s_partial: {
            require(params.x > 0.0, "convergence_report: x must be > 0");
            const auto& r2 = need_table();
            trace.reserve(static_cast<std::size_t>(top));
            CompensatedSum sum;
            const double b = 2.0 * std::numbers::pi * std::sqrt(params.x);
            for (std::int64_t n = 1; n <= top; ++n) {
                const double nd = static_cast<double>(n);
                sum += r2[static_cast<std::uint64_t>(n)] * std::cos(b * std::sqrt(nd) + std::numbers::pi / 4) /
                       std::pow(nd, 0.75);
                trace.push_back(sum.value());
            }
            break;
        }
        case ConvergenceTarget::d_partial: {
            require(params.delta > 0.0 && params.delta < 0.25, "convergence_report: delta must lie in (0, 1/4)");
            require(params.x > 0.0, "convergence_report: x must be > 0");
            trace = series::oscillatory_prefix_sums(params.x, top, 0.75 - params.delta);
            break;
        }
        case ConvergenceTarget::p_q: {
            require(params.s > 0.5, "convergence_report: s must be > 1/2");
            const double b = params.b != 0.0 ? params.b : 2.0 * std::numbers::pi * std::sqrt(params.x);
            trace.reserve(static_cast<std::size_t>(top));
            CompensatedSum sum;
            for (std::int64_t n = 1; n <= top; ++n) {
                const double nd = static_cast<double>(n);
                sum += series::m_n_s(params.a, b * std::sqrt(nd), params.s, params.k_terms).m / std::pow(nd, params.s);
                trace.push_back(sum.value());
            }
            break;
        }
    }

    double sup = 0.0;
    std::size_t scanned = 0;
    std::optional<double> prev_mean;
    for (const auto n : ladder) {
        for (; scanned < static_cast<std::size_t>(n); ++scanned) sup = std::max(sup, std::fabs(trace[scanned]));
        ConvergenceRow row;
        row.truncation = n;
        row.value = gausscircle::detail::finite_or_throw(trace[static_cast<std::size_t>(n - 1)], "convergence_report");
        const std::int64_t w = std::min<std::int64_t>(params.window, n);
        double acc = 0.0;
        for (std::int64_t i = n - w; i < n; ++i) acc += trace[static_cast<std::size_t>(i)];
        row.window_mean = acc / static_cast<double>(w);
        if (prev_mean) row.cesaro_residual = std::fabs(row.window_mean - *prev_mean);
        if (rep.reference) row.windowed_error = windowed_error(trace, n, params.window, *rep.reference);
        row.sup_so_far = sup;
        prev_mean = row.window_mean;
        rep.rows.push_back(row);
    }
    return rep;
}

/// 2^0, 2^1, ... up to and including the largest power <= m_max, then m_max
/// itself when it is not a power of two.
inline std::vector<std::int64_t> dyadic_ladder(std::int64_t m_max) {
    std::vector<std::int64_t> out;
    for (std::int64_t m = 1; m <= m_max; m *= 2) out.push_back(m);
    if (out.empty() || out.back() != m_max) out.push_back(m_max);
    return out;
}

}  // namespace gausscircle::analysis
