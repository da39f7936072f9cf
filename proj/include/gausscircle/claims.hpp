#pragma once

// Consolidated claims report: every boundedness, convergence or equality
// statement gets a measured desk-scale statistic and a verdict derived from
// that statistic. Heavy grids are read from the frozen goldens; the rest is
// recomputed.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gausscircle/analysis.hpp"
#include "gausscircle/closed_forms.hpp"
#include "gausscircle/core_arith.hpp"
#include "gausscircle/errors.hpp"
#include "gausscircle/series.hpp"
#include "gausscircle/special_functions.hpp"

namespace gausscircle::claims {

enum class Verdict { consistent, tension, out_of_reach };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent";
        case Verdict::tension: return "tension";
        case Verdict::out_of_reach: return "out-of-reach";
    }
    return "?";
}

struct Claim {
    std::string id;
    std::string paper_anchor;
    std::string statistic;
    double value = 0.0;
    Verdict verdict = Verdict::out_of_reach;
};

struct ClaimsReport {
    std::vector<Claim> claims;
    /// |Delta(x)|/x^(1/4) per dyadic block with its running max.
    std::vector<analysis::DyadicBlock> running_max;
};

struct ClaimsOptions {
    double sweep_end = 1e6;
    int workers = 1;
};

/// Reads the goldens file; its absence means the build is incomplete.
inline nlohmann::json load_goldens(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("goldens not found at " + path.string() + " (incomplete build)");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ResourceError("goldens at " + path.string() + " are unreadable: " + e.what());
    }
}

namespace detail {

inline Verdict at_most(double value, double limit) { return value <= limit ? Verdict::consistent : Verdict::tension; }

inline double max_abs_residual(const nlohmann::json& rows, const std::function<double(const nlohmann::json&)>& eval) {
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, std::fabs(eval(r)));
    return worst;
}

}  // namespace detail

inline ClaimsReport claims_report(const nlohmann::json& goldens, const ClaimsOptions& opts = {}) {
    using series::oscillatory_prefix_sums;
    ClaimsReport rep;
    auto& out = rep.claims;
    const auto& g_series = goldens.at("series");
    const auto& g_closed = goldens.at("closed_forms");
    const double pi = std::numbers::pi;

    {
        const auto f = special::fresnel(1e4);
        const double d = std::max(std::fabs(f.c - 0.5), std::fabs(f.s - 0.5));
        out.push_back({"fresnel-limit", "Fresnel integrals tend to 1/2",
                       "max(|F_C(1e4) - 1/2|, |F_S(1e4) - 1/2|), limit 1e-4", d, detail::at_most(d, 1e-4)});
    }
    {
        const double worst = detail::max_abs_residual(g_closed.at("fresnel"), [](const nlohmann::json& r) {
            return series::fresnel_closed_form(r.at("a").get<double>(), r.at("M").get<std::int64_t>()).residual;
        });
        out.push_back({"fresnel-closed-form-equality", "Fresnel closed form of the n^(-3/4) partial sum",
                       "max |partial sum - closed form| over the golden (a, M) points, equality tolerance 1e-3", worst,
                       detail::at_most(worst, 1e-3)});
    }
    {
        double worst = 0.0;
        for (int j = 0; j < 199; ++j) {
            const double a = 1.0 + 0.5 * j;
            for (std::int64_t m = 1; m <= (1 << 19); m *= 2)
                worst = std::max(worst, std::fabs(series::fresnel_closed_form_rhs(a, m)));
            worst = std::max(worst, std::fabs(series::fresnel_closed_form_rhs(a, 1'000'000)));
        }
        out.push_back({"closed-form-sqrt2-bound", "Fresnel closed form bounded by sqrt 2",
                       "max |closed form| over a in 1:0.5:100, dyadic M up to 1e6, against sqrt 2", worst,
                       detail::at_most(worst, std::numbers::sqrt2)});
    }
    {
        const double sup = g_series.at("fresnel_sum_sup").at("value").get<double>();
        out.push_back({"fresnel-sum-sup", "n^(-3/4) oscillatory partial sums bounded",
                       "golden sup |sum_{n<=M} cos(2 pi sqrt(na) + pi/4)/n^(3/4)|, a in 1:0.5:100, dyadic M; envelope 3.0",
                       sup, detail::at_most(sup, 3.0)});
    }
    {
        double worst = 0.0;
        bool late = false;
        for (const auto& r : g_series.at("d_sup_grid")) {
            worst = std::max(worst, r.at("sup").get<double>());
            late = late || r.at("argmax_m").get<std::int64_t>() > 100'000;
        }
        out.push_back({"d-partial-uniform-bound", "D_M(x) uniformly bounded for 0 < delta < 1/4",
                       "golden sup |D_M| over x in {1,2,3.7,10.5}, delta in {1/8,1/5}, M <= 1e6; "
                       "tension if any sup is attained beyond M = 1e5",
                       worst, late ? Verdict::tension : Verdict::consistent});
    }
    {
        double low = 0.0;
        double high = 0.0;
        for (double eps : {0.5, 1.0})
            for (int x = 1; x <= 100; ++x) {
                double& slot = x <= 50 ? low : high;
                slot = std::max(slot, std::fabs(series::f_eps_limit(eps, x)));
            }
        out.push_back({"f-eps-bounded", "limit function f(eps, x) bounded for x >= 1",
                       "max |f(eps, x)| over eps in {1/2, 1}, integer x in [1, 100]; "
                       "tension if x in (50, 100] exceeds x in [1, 50]",
                       std::max(low, high), high <= low ? Verdict::consistent : Verdict::tension});
    }
    {
        const double eps = 1.0;
        const double x = 4.0;
        const std::int64_t m = 1'000'000;
        const auto ps = oscillatory_prefix_sums(x, m, 0.5 + 0.5 * eps);
        double mean = 0.0;
        for (std::int64_t i = m - 100; i < m; ++i) mean += ps[static_cast<std::size_t>(i)];
        mean /= 100.0;
        const double gap = std::fabs(mean - series::f_eps_limit(eps, x));
        const double scale = std::pow(static_cast<double>(m), -0.5 * eps) / (pi * std::sqrt(x));
        out.push_back({"eps-series-limit", "series in n^(-1/2-eps/2) sums to f(eps, x)",
                       "|window mean of D(1, 4, M) over M in (1e6-100, 1e6] - f(1, 4)|, limit 10 M^(-eps/2)/(pi sqrt x)",
                       gap, detail::at_most(gap, 10.0 * scale)});
    }
    const auto sq = oscillatory_prefix_sums(2.0, 1'000'000, 0.5);
    {
        double early = 0.0;
        double late = 0.0;
        for (std::size_t i = 0; i < sq.size(); ++i) {
            double& slot = i < 100'000 ? early : late;
            slot = std::max(slot, std::fabs(sq[i]));
        }
        out.push_back({"sqrt-sum-bounded", "sum of cos(2 pi sqrt(2n) + pi/4)/sqrt n bounded",
                       "sup |partial| for M <= 1e6 at x = 2; tension if sup over (1e5, 1e6] exceeds 1.1 x sup below",
                       std::max(early, late), late <= 1.1 * early ? Verdict::consistent : Verdict::tension});
    }
    {
        const auto [lo, hi] = std::minmax_element(sq.begin() + 99'999, sq.end());
        const double spread = *hi - *lo;
        out.push_back({"sqrt-sum-not-convergent", "the same sum is not convergent",
                       "max - min of partial sums over M in [1e5, 1e6] at x = 2; consistent if >= 0.1", spread,
                       spread >= 0.1 ? Verdict::consistent : Verdict::tension});
    }
    {
        double gap = 0.0;
        double worst = 0.0;
        for (const auto& r : g_closed.at("sqrt")) {
            const auto rep2 = series::sqrt_closed_form(r.at("x").get<double>(), r.at("M").get<std::int64_t>());
            worst = std::max(worst, std::fabs(rep2.report.residual));
            if (rep2.x2_form) gap = std::max(gap, std::fabs(*rep2.x2_form - rep2.report.rhs_closed));
        }
        out.push_back({"x2-constant-form", "x = 2 form with constant C",
                       "max |constant-C form / 2 pi - general form| at x = 2 over the golden M", gap,
                       detail::at_most(gap, 1e-8)});
        out.push_back({"sqrt-closed-form-equality", "closed form of the 1/sqrt n sum",
                       "max |partial sum - closed form| over the golden (x, M) points, equality tolerance 1e-3", worst,
                       detail::at_most(worst, 1e-3)});
    }
    {
        const double worst = detail::max_abs_residual(g_closed.at("expint"), [](const nlohmann::json& r) {
            return series::expint_closed_form(r.at("eps").get<double>(), r.at("x").get<double>(), r.at("y").get<double>())
                .residual;
        });
        out.push_back({"expint-closed-form-equality", "exponential-integral closed form of D(eps, x, y^2)",
                       "max |partial sum - closed form| over the golden (eps, x, y) points, equality tolerance 1e-3",
                       worst, detail::at_most(worst, 1e-3)});
    }
    {
        const auto table = arith::r2_sieve(1'000'000);
        double best = 0.0;
        double prev = INFINITY;
        bool nonincreasing = true;
        std::uint64_t n = 1;
        for (std::uint64_t cap : {1'000ull, 10'000ull, 100'000ull, 1'000'000ull}) {
            for (; n <= cap; ++n) best = std::max(best, table[n] / std::pow(static_cast<double>(n), 0.3));
            nonincreasing = nonincreasing && best <= prev;
            prev = best;
        }
        out.push_back({"r2-growth", "r2(n) = o(n^eps)",
                       "max_{n<=N} r2(n)/n^0.3 at N = 1e6; consistent if non-increasing over N = 1e3..1e6", best,
                       nonincreasing ? Verdict::consistent : Verdict::tension});
    }
    {
        bool ok = true;
        double prev = INFINITY;
        double last = 0.0;
        for (double x : {1e2, 1e4, 1e6}) {
            const auto rec = arith::sum_r2(x, arith::SumMethod::floor_identity);
            last = std::fabs(static_cast<double>(rec.count) / x - pi);
            ok = ok && last <= 8.0 / std::sqrt(x) && last < prev;
            prev = last;
        }
        out.push_back({"gauss-mean-value", "mean value of r2 is pi",
                       "|count(x)/x - pi| at x = 1e6; consistent if <= 8/sqrt x and decreasing over 1e2, 1e4, 1e6", last,
                       ok ? Verdict::consistent : Verdict::tension});
    }
    {
        const auto table = arith::r2_sieve(100'000);
        const double exact = static_cast<double>(arith::sum_r2(10.5, arith::SumMethod::floor_identity).count);
        const double r = std::fabs(series::voronoi_partial(10.5, 100'000, table).value - exact);
        out.push_back({"voronoi-identity", "Hardy-Voronoi Bessel series for the lattice count",
                       "|partial sum with 1e5 terms - exact count| at x = 10.5, limit 1e-2", r, detail::at_most(r, 1e-2)});
    }
    {
        const auto t = series::theorem3_expansion(10.5, 1, series::TriangularTruncation{100'000});
        const double delta = arith::sum_r2(10.5, arith::SumMethod::floor_identity).delta;
        const double printed = std::fabs(t.eval.value - delta);
        const double rescaled = std::fabs(4.0 * t.eval.value - delta);
        out.push_back({"pq-expansion-printed", "P/Q expansion of Delta(x) as printed",
                       "|expansion (N = 1, np <= 1e5) - Delta(10.5)|; consistent if within 0.05 |Delta|", printed,
                       detail::at_most(printed, 0.05 * std::fabs(delta))});
        out.push_back({"pq-expansion-times-four", "P/Q expansion of Delta(x) with the factor 4 of r2 restored",
                       "|4 x expansion (N = 1, np <= 1e5) - Delta(10.5)|; consistent if within 0.05 |Delta|", rescaled,
                       detail::at_most(rescaled, 0.05 * std::fabs(delta))});
    }
    {
        analysis::SweepConfig cfg;
        cfg.x_start = 1.0;
        cfg.x_end = opts.sweep_end;
        cfg.workers = opts.workers;
        const auto sweep = analysis::sweep_delta(cfg);
        rep.running_max = analysis::dyadic_blocks(sweep.records);
        const double top = rep.running_max.empty() ? 0.0 : rep.running_max.back().running_max;
        out.push_back({"delta-little-o", "Delta(x) = o(x^(1/4) f(x)) for every f -> infinity",
                       "running max of |Delta(x)|/x^(1/4) over dyadic blocks up to the sweep end (see table)", top,
                       Verdict::out_of_reach});
        out.push_back({"hardy-omega", "Hardy: limsup |Delta(x)|/x^(1/4) = infinity",
                       "same running-max table; growth or saturation is not decidable at this scale", top,
                       Verdict::out_of_reach});
    }
    return rep;
}

}  // namespace gausscircle::claims
