#pragma once

// Command-line front end. run() is kept separate from main() so the test
// suite can drive every subcommand in-process.

#include <CLI11.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gausscircle/gausscircle.hpp"

#ifndef GAUSSCIRCLE_DEFAULT_GOLDENS
#define GAUSSCIRCLE_DEFAULT_GOLDENS "data/goldens.json"
#endif

namespace gausscircle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitResource = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerifyFailed = 4;
inline constexpr int kExitUsage = 64;

using io::Json;
using io::Table;

enum class Format { table, csv, json };

struct Output {
    std::optional<Format> format;  // unset: the command's own default
    std::string path;
    int precision = io::kDefaultPrecision;
};

namespace detail {

inline Format parse_format(const std::string& s) {
    if (s == "table") return Format::table;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw DomainError("unknown format '" + s + "' (expected csv, json or table)");
}

class Emitter {
public:
    Emitter(const Output& o, std::ostream& fallback) : opts_(o) {
        if (!o.path.empty()) {
            file_.open(o.path, std::ios::binary | std::ios::trunc);
            if (!file_) throw ResourceError("cannot open output file " + o.path);
            os_ = &file_;
        } else {
            os_ = &fallback;
        }
    }

    [[nodiscard]] Format format(Format fallback) const { return opts_.format.value_or(fallback); }
    [[nodiscard]] int precision() const { return opts_.precision; }
    std::ostream& stream() { return *os_; }

    void emit(const std::string& command, const Json& params, const Table& t, Format fallback = Format::table,
              const Json& extra = Json::object()) {
        switch (format(fallback)) {
            case Format::table: io::write_text_table(*os_, t, opts_.precision); break;
            case Format::csv: io::write_csv(*os_, t, opts_.precision); break;
            case Format::json:
                *os_ << io::make_document(command, params, t, opts_.precision, extra).dump(2) << '\n';
                break;
        }
    }

private:
    Output opts_;
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

inline std::vector<std::int64_t> parse_ladder(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size() || v != std::floor(v) || v < 1 || v > 1e12) throw std::invalid_argument(item);
            out.push_back(static_cast<std::int64_t>(v));
        } catch (const std::logic_error&) {
            throw DomainError("ladder entry '" + item + "' is not a positive integer");
        }
    }
    return out;
}

inline std::int64_t as_count(double v, const char* name) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e12)
        throw DomainError(std::string(name) + " must be a positive integer");
    return static_cast<std::int64_t>(v);
}

inline io::Cell opt_cell(const std::optional<double>& v) { return v ? io::Cell{*v} : io::Cell{}; }

inline std::string goldens_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("GAUSSCIRCLE_GOLDENS"); env != nullptr && *env != '\0') return env;
    return GAUSSCIRCLE_DEFAULT_GOLDENS;
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

inline std::vector<Check> verify_suite() {
    std::vector<Check> checks;
    {
        std::uint64_t bad = 0;
        for (std::uint64_t n = 1; n <= 100'000; ++n) {
            const auto e = arith::r2_enumerate(n);
            if (e != arith::r2_divisor(n) || e != arith::r2_residue(n)) ++bad;
        }
        checks.push_back({"r2 three routes agree, n <= 1e5", bad == 0, std::to_string(bad) + " disagreements"});
    }
    {
        const auto table = arith::r2_sieve(1'000'000);
        bool ok = true;
        for (double x : {10.0, 1e2, 1e3, 1e4, 1e5, 1e6}) {
            const auto X = static_cast<std::uint64_t>(x);
            const auto e = arith::lattice_count_enumerate(X);
            ok = ok && e == table.prefix_sum(X) && e == arith::floor_identity_hyperbola(X);
        }
        checks.push_back({"lattice count three routes agree, x = 10..1e6", ok, ""});
    }
    {
        const std::uint64_t X = 10'000'000;
        const bool ok = arith::floor_identity_hyperbola(X) == arith::floor_identity_direct(X) &&
                        arith::floor_identity_hyperbola(X) == arith::lattice_count_enumerate(X);
        checks.push_back({"floor identity, two implementations, x = 1e7", ok, ""});
    }
    {
        double worst = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double z = 0.05 * i;
            const auto ref = special::bessel_j1_series(boost::multiprecision::cpp_bin_float_100(z), 200);
            worst = std::max(worst, std::fabs(special::bessel_j1(z) - static_cast<double>(ref)));
        }
        checks.push_back({"J1 dispatch vs 100-digit series, z in [0, 100]", worst <= 1e-10,
                          "max error " + io::format_double(worst, 3)});
    }
    {
        const auto f = special::fresnel(1e4);
        const double d = std::max(std::fabs(f.c - 0.5), std::fabs(f.s - 0.5));
        checks.push_back({"Fresnel integrals at 1e4 within 1e-4 of 1/2", d <= 1e-4, io::format_double(d, 3)});
    }
    return checks;
}

}  // namespace detail

/// Parses argv and runs one subcommand. Exit codes: 0 success, 1 domain
/// error, 2 resource error, 3 numerical failure, 4 failed verification,
/// 64 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lattice points in circles: exact counts, series and closed forms", "gausscircle"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_config("--config", "", "TOML/INI file with the same keys as the flags; flags win");
    app.set_version_flag("--version", io::kToolVersion);

    Output output;
    std::string format_flag;
    app.add_option("--format", format_flag, "csv, json or table (default depends on the command)")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    app.add_option("--output", output.path, "write to this file instead of standard output");
    app.add_option("--precision", output.precision, "significant digits for reals")
        ->check(CLI::Range(1, 17));

    std::function<void(detail::Emitter&)> action;

    // r2
    std::uint64_t r2_n = 0;
    auto* r2 = app.add_subcommand("r2", "r2(n) by enumeration, divisor sum and d1 - d3");
    r2->add_option("n", r2_n, "nonnegative integer")->required();
    r2->callback([&] {
        action = [&](detail::Emitter& em) {
            const auto e = arith::r2_enumerate(r2_n);
            const auto d = arith::r2_divisor(r2_n);
            const auto r = arith::r2_residue(r2_n);
            const bool agree = e == d && d == r;
            if (em.format(Format::table) == Format::table) {
                em.stream() << e << ' ' << d << ' ' << r << " agree=" << (agree ? "true" : "false") << '\n';
                return;
            }
            Table t{{"n", "enumerate", "divisor", "residue", "agree"}, {{r2_n, e, d, r, agree}}};
            em.emit("r2", {{"n", r2_n}}, t);
        };
    });

    // sum / delta
    double sum_x = 0.0;
    std::string sum_method = "floor_identity";
    auto* sum = app.add_subcommand("sum", "lattice count sum_{0<=n<=x} r2(n)");
    sum->add_option("x", sum_x, "nonnegative real")->required();
    sum->add_option("--method", sum_method, "enumerate, sieve or floor_identity")->capture_default_str();
    sum->callback([&] {
        action = [&](detail::Emitter& em) {
            const auto method = arith::parse_sum_method(sum_method);
            const auto rec = arith::sum_r2(sum_x, method);
            Table t{{"x", "count", "pi_x", "delta", "normalized", "method"},
                    {{rec.x, rec.count, rec.pi_x, rec.delta, rec.normalized, arith::to_string(method)}}};
            em.emit("sum", {{"x", sum_x}, {"method", arith::to_string(method)}}, t);
        };
    });

    double delta_x = 0.0;
    auto* delta = app.add_subcommand("delta", "(count(x) - pi x)/x^(1/4)");
    delta->add_option("x", delta_x, "positive real")->required();
    delta->callback([&] {
        action = [&](detail::Emitter& em) {
            const double v = arith::delta_normalized(delta_x);
            const auto rec = arith::sum_r2(delta_x, arith::SumMethod::floor_identity);
            Table t{{"x", "delta", "normalized"}, {{delta_x, rec.delta, v}}};
            em.emit("delta", {{"x", delta_x}}, t);
        };
    });

    // voronoi
    double vor_x = 0.0;
    double vor_terms = 10'000;
    special::BesselPolicy vor_policy;
    auto* vor = app.add_subcommand("voronoi", "truncated Hardy-Voronoi series at non-integer x");
    vor->add_option("x", vor_x, "positive non-integer real")->required();
    vor->add_option("--terms", vor_terms, "number of terms")->capture_default_str();
    vor->add_option("--switch-point", vor_policy.switch_point, "series/asymptotic switch for J1")->capture_default_str();
    vor->add_option("--asymptotic-terms", vor_policy.asymptotic_terms, "J1 asymptotic terms")->capture_default_str();
    vor->callback([&] {
        action = [&](detail::Emitter& em) {
            const auto n = detail::as_count(vor_terms, "--terms");
            vor_policy.validate();
            const auto table = io::cached_r2_table(static_cast<std::uint64_t>(n));
            const auto ev = series::voronoi_partial(vor_x, n, table, vor_policy);
            const double exact = static_cast<double>(arith::sum_r2(vor_x, arith::SumMethod::floor_identity).count);
            Table t{{"x", "terms", "value", "exact_count", "residual", "tail_estimate"},
                    {{vor_x, n, ev.value, exact, ev.value - exact, detail::opt_cell(ev.tail_estimate)}}};
            em.emit("voronoi", {{"x", vor_x}, {"terms", n}, {"switch_point", vor_policy.switch_point}}, t);
        };
    });

    // series
    auto* ser = app.add_subcommand("series", "truncated oscillatory and P/Q series");
    ser->require_subcommand(1);
    double s_x = 10.5, s_m = 1000, s_delta = 0.125, s_h = 0.0, s_a = 0.7853981633974483, s_b = 0.0, s_s = 0.75,
           s_k = 1000, s_n = 100, s_limit = 0;
    int s_big_n = 1;
    const auto add_x = [&](CLI::App* c) { c->add_option("--x", s_x, "x")->capture_default_str(); };
    const auto add_m = [&](CLI::App* c) { c->add_option("--m", s_m, "number of terms M")->capture_default_str(); };

    auto* ser_s = ser->add_subcommand("s", "sum r2(n) cos(2 pi sqrt(nx) + pi/4)/n^(3/4)");
    add_x(ser_s);
    add_m(ser_s);
    ser_s->callback([&] {
        action = [&](detail::Emitter& em) {
            const auto m = detail::as_count(s_m, "--m");
            const auto table = io::cached_r2_table(static_cast<std::uint64_t>(m));
            const auto ev = series::s_partial(s_x, m, table);
            em.emit("series s", {{"x", s_x}, {"m", m}},
                    Table{{"x", "m", "value", "tail_estimate"}, {{s_x, m, ev.value, detail::opt_cell(ev.tail_estimate)}}});
        };
    });

    auto* ser_d = ser->add_subcommand("d", "sum cos(2 pi sqrt(nx) + pi/4)/n^(3/4 - delta)");
    add_x(ser_d);
    add_m(ser_d);
    ser_d->add_option("--delta", s_delta, "delta in (0, 1/4)")->capture_default_str();
    ser_d->callback([&] {
        action = [&](detail::Emitter& em) {
            const auto m = detail::as_count(s_m, "--m");
            const auto ev = series::d_partial(s_x, m, s_delta);
            em.emit("series d", {{"x", s_x}, {"m", m}, {"delta", s_delta}},
                    Table{{"x", "m", "delta", "value", "tail_estimate"},
                          {{s_x, m, s_delta, ev.value, detail::opt_cell(ev.tail_estimate)}}});
        };
    });

    auto* ser_g = ser->add_subcommand("g", "G(h, x, M) and its h-derivative");
    add_x(ser_g);
    add_m(ser_g);
    ser_g->set_help_flag("--help", "Print this help message and exit");
    ser_g->add_option("--h", s_h, "h in [0, 1/4)")->capture_default_str();
    ser_g->callback([&] {
        action = [&](detail::Emitter& em) {
            const auto m = detail::as_count(s_m, "--m");
            em.emit("series g", {{"h", s_h}, {"x", s_x}, {"m", m}},
                    Table{{"h", "x", "m", "value", "d_dh"},
                          {{s_h, s_x, m, series::g_partial(s_h, s_x, m), series::g_partial_dh(s_h, s_x, m)}}});
        };
    });

    auto* ser_m = ser->add_subcommand("m", "M_s(a, b) and N_s(a, b) over odd k");
    ser_m->add_option("--a", s_a, "a")->capture_default_str();
    ser_m->add_option("--b", s_b, "b")->capture_default_str();
    ser_m->add_option("--s", s_s, "s > 0")->capture_default_str();
    ser_m->add_option("--k", s_k, "number of odd k")->capture_default_str();
    ser_m->callback([&] {
        action = [&](detail::Emitter& em) {
            const auto k = detail::as_count(s_k, "--k");
            const auto mn = series::m_n_s(s_a, s_b, s_s, k);
            em.emit("series m", {{"a", s_a}, {"b", s_b}, {"s", s_s}, {"k", k}},
                    Table{{"a", "b", "s", "k", "m", "n"}, {{s_a, s_b, s_s, k, mn.m, mn.n}}});
        };
    });

    auto* ser_p = ser->add_subcommand("p", "P_s(a, b) and Q_s(a, b), doubly truncated");
    ser_p->add_option("--a", s_a, "a")->capture_default_str();
    ser_p->add_option("--b", s_b, "b")->capture_default_str();
    ser_p->add_option("--s", s_s, "s > 1/2")->capture_default_str();
    ser_p->add_option("--n", s_n, "outer terms")->capture_default_str();
    ser_p->add_option("--k", s_k, "odd inner terms")->capture_default_str();
    ser_p->add_option("--limit", s_limit, "use n k <= limit instead of the rectangle");
    ser_p->callback([&] {
        action = [&](detail::Emitter& em) {
            series::Truncation tr = series::RectangularTruncation{detail::as_count(s_n, "--n"), detail::as_count(s_k, "--k")};
            if (s_limit != 0) tr = series::TriangularTruncation{detail::as_count(s_limit, "--limit")};
            const auto pq = series::p_q_s(s_a, s_b, s_s, tr);
            em.emit("series p", {{"a", s_a}, {"b", s_b}, {"s", s_s}, {"n", s_n}, {"k", s_k}, {"limit", s_limit}},
                    Table{{"p", "q", "p_tail", "q_tail", "outer_terms"},
                          {{pq.p.value, pq.q.value, detail::opt_cell(pq.p.tail_estimate),
                            detail::opt_cell(pq.q.tail_estimate), pq.p.outer_terms}}});
        };
    });

    auto* ser_e = ser->add_subcommand("expansion", "P/Q expansion of Delta(x) (printed normalization)");
    add_x(ser_e);
    ser_e->add_option("--big-n", s_big_n, "number of correction orders N")->capture_default_str();
    ser_e->add_option("--limit", s_limit, "truncation n k <= limit");
    ser_e->callback([&] {
        action = [&](detail::Emitter& em) {
            const auto limit = detail::as_count(s_limit == 0 ? 100'000 : s_limit, "--limit");
            const auto ex = series::theorem3_expansion(s_x, s_big_n, series::TriangularTruncation{limit});
            const double delta_exact = arith::sum_r2(s_x, arith::SumMethod::floor_identity).delta;
            em.emit("series expansion", {{"x", s_x}, {"big_n", s_big_n}, {"limit", limit}},
                    Table{{"x", "big_n", "limit", "value", "times_four", "delta"},
                          {{s_x, static_cast<std::int64_t>(s_big_n), limit, ex.eval.value, 4.0 * ex.eval.value,
                            delta_exact}}});
        };
    });

    // closed forms
    auto* cf = app.add_subcommand("closed-form", "partial sum next to its closed-form approximant");
    cf->require_subcommand(1);
    double cf_a = 2.0, cf_m = 10'000, cf_eps = 1.0, cf_x = 2.0, cf_y = 10.0;
    const auto emit_report = [](detail::Emitter& em, const std::string& cmd, const series::ClosedFormReport& r,
                                std::optional<double> extra = std::nullopt) {
        Table t{{"lhs", "rhs", "residual"}, {{r.lhs_partial, r.rhs_closed, r.residual}}};
        Json params = Json::object();
        for (const auto& [k, v] : r.params) {
            t.columns.push_back(k);
            t.rows[0].push_back(v);
            params[k] = v;
        }
        if (extra) {
            t.columns.push_back("x2_form");
            t.rows[0].push_back(*extra);
        }
        em.emit(cmd, params, t);
    };
    auto* cf_f = cf->add_subcommand("fresnel", "Fresnel closed form of the n^(-3/4) sum");
    cf_f->add_option("--a", cf_a, "a > 0")->capture_default_str();
    cf_f->add_option("--m", cf_m, "M")->capture_default_str();
    cf_f->callback([&] {
        action = [&](detail::Emitter& em) {
            emit_report(em, "closed-form fresnel", series::fresnel_closed_form(cf_a, detail::as_count(cf_m, "--m")));
        };
    });
    auto* cf_e = cf->add_subcommand("expint", "exponential-integral closed form of D(eps, x, y^2)");
    cf_e->add_option("--eps", cf_eps, "eps > 0")->capture_default_str();
    cf_e->add_option("--x", cf_x, "x >= 1")->capture_default_str();
    cf_e->add_option("--y", cf_y, "y >= 1")->capture_default_str();
    cf_e->callback([&] {
        action = [&](detail::Emitter& em) {
            auto r = series::expint_closed_form(cf_eps, cf_x, cf_y);
            r.params.emplace_back("f_eps_limit", series::f_eps_limit(cf_eps, cf_x));
            emit_report(em, "closed-form expint", r);
        };
    });
    auto* cf_s = cf->add_subcommand("sqrt", "closed form of the 1/sqrt n sum");
    cf_s->add_option("--x", cf_x, "x > 0")->capture_default_str();
    cf_s->add_option("--m", cf_m, "M")->capture_default_str();
    cf_s->callback([&] {
        action = [&](detail::Emitter& em) {
            const auto r = series::sqrt_closed_form(cf_x, detail::as_count(cf_m, "--m"));
            emit_report(em, "closed-form sqrt", r.report, r.x2_form);
        };
    });

    // sweep
    analysis::SweepConfig sw;
    std::string sw_sampling = "integers";
    auto* sweep = app.add_subcommand("sweep", "Delta(x)/x^(1/4) over a range (CSV by default)");
    sweep->add_option("--from", sw.x_start, "first x")->required();
    sweep->add_option("--to", sw.x_end, "last x")->required();
    sweep->add_option("--sampling", sw_sampling, "integers, half_integers or grid")->capture_default_str()
        ->check(CLI::IsMember({"integers", "half_integers", "grid"}));
    sweep->add_option("--step", sw.sampling.step, "grid step")->capture_default_str();
    sweep->add_option("--workers", sw.workers, "worker threads")->capture_default_str();
    sweep->add_option("--out", output.path, "output file (same as --output)");
    sweep->callback([&] {
        action = [&](detail::Emitter& em) {
            sw.sampling.kind = sw_sampling == "grid"            ? analysis::SamplingKind::grid
                               : sw_sampling == "half_integers" ? analysis::SamplingKind::half_integers
                                                                : analysis::SamplingKind::integers;
            const auto s = analysis::sweep_delta(sw);
            const Json params = {{"from", sw.x_start}, {"to", sw.x_end}, {"sampling", sw_sampling},
                                 {"step", sw.sampling.step}, {"workers", sw.workers}};
            if (em.format(Format::csv) == Format::table) {
                Table t{{"records", "max_abs_normalized", "argmax_x", "mean_count_over_x"},
                        {{static_cast<std::uint64_t>(s.records.size()), s.max_abs_normalized, s.argmax_x,
                          s.mean_count_over_x}}};
                em.emit("sweep", params, t);
                return;
            }
            const Json summary = {{"summary",
                                   {{"records", s.records.size()},
                                    {"max_abs_normalized", s.max_abs_normalized},
                                    {"argmax_x", s.argmax_x},
                                    {"mean_count_over_x", s.mean_count_over_x}}}};
            em.emit("sweep", params, io::records_table(s.records), Format::csv, summary);
        };
    });

    // convergence
    std::string conv_target = "voronoi";
    std::string conv_ladder = "100,1000,10000,100000";
    analysis::ConvergenceParams conv;
    auto* convc = app.add_subcommand("convergence", "partial sums along a truncation ladder");
    convc->add_option("target", conv_target, "voronoi, s, d or p")
        ->check(CLI::IsMember({"voronoi", "s", "d", "p"}));
    convc->add_option("--ladder", conv_ladder, "comma-separated increasing truncations")->capture_default_str();
    convc->add_option("--x", conv.x, "x")->capture_default_str();
    convc->add_option("--delta", conv.delta, "delta for target d")->capture_default_str();
    convc->add_option("--s", conv.s, "s for target p")->capture_default_str();
    convc->add_option("--window", conv.window, "window width for Cesaro means")->capture_default_str();
    convc->callback([&] {
        action = [&](detail::Emitter& em) {
            const auto target = conv_target == "s"   ? analysis::ConvergenceTarget::s_partial
                                : conv_target == "d" ? analysis::ConvergenceTarget::d_partial
                                : conv_target == "p" ? analysis::ConvergenceTarget::p_q
                                                     : analysis::ConvergenceTarget::voronoi;
            const auto ladder = detail::parse_ladder(conv_ladder);
            const auto rep = analysis::convergence_report(target, conv, ladder);
            Table t{{"truncation", "value", "window_mean", "cesaro_residual", "windowed_error", "sup_so_far"}, {}};
            for (const auto& r : rep.rows)
                t.rows.push_back({r.truncation, r.value, r.window_mean, detail::opt_cell(r.cesaro_residual),
                                  detail::opt_cell(r.windowed_error), r.sup_so_far});
            em.emit("convergence", {{"target", analysis::to_string(target)}, {"x", conv.x}, {"ladder", conv_ladder}},
                    t);
        };
    });

    // report
    auto* report = app.add_subcommand("report", "claims report or sweep CSV summary");
    report->require_subcommand(1);
    std::string goldens_flag;
    int claims_workers = 1;
    auto* rep_claims = report->add_subcommand("claims", "measured statistic and verdict for every claim");
    rep_claims->add_option("--goldens", goldens_flag, "goldens JSON (default: GAUSSCIRCLE_GOLDENS or the build tree)");
    rep_claims->add_option("--workers", claims_workers, "worker threads for the sweep")->capture_default_str();
    rep_claims->callback([&] {
        action = [&](detail::Emitter& em) {
            const auto path = detail::goldens_path(goldens_flag);
            const auto g = claims::load_goldens(path);
            claims::ClaimsOptions copts;
            copts.workers = claims_workers;
            const auto rep = claims::claims_report(g, copts);
            Table claims_t{{"id", "paper_anchor", "statistic", "value", "verdict"}, {}};
            Json claims_j = Json::array();
            for (const auto& c : rep.claims) {
                claims_t.rows.push_back({c.id, c.paper_anchor, c.statistic, c.value, claims::to_string(c.verdict)});
                claims_j.push_back({{"id", c.id},
                                    {"paper_anchor", c.paper_anchor},
                                    {"statistic", c.statistic},
                                    {"value", io::cell_to_json(c.value, em.precision())},
                                    {"verdict", claims::to_string(c.verdict)}});
            }
            Table blocks{{"k", "lo", "hi", "block_max", "argmax_x", "running_max"}, {}};
            for (const auto& b : rep.running_max)
                blocks.rows.push_back({static_cast<std::int64_t>(b.k), b.lo, b.hi, b.block_max, b.argmax_x, b.running_max});
            const Json params = {{"goldens", path}, {"sweep_end", copts.sweep_end}};
            switch (em.format(Format::table)) {
                case Format::json: em.emit("report claims", params, blocks, Format::json, {{"claims", claims_j}}); break;
                case Format::csv: em.emit("report claims", params, claims_t, Format::csv); break;
                case Format::table:
                    em.emit("report claims", params, claims_t);
                    em.stream() << '\n';
                    em.emit("report claims", params, blocks);
                    break;
            }
        };
    });
    std::string sweep_csv;
    auto* rep_sweep = report->add_subcommand("sweep", "summary and dyadic running max of a sweep CSV");
    rep_sweep->add_option("csv", sweep_csv, "sweep CSV written by the sweep command")->required();
    rep_sweep->callback([&] {
        action = [&](detail::Emitter& em) {
            std::ifstream in(sweep_csv, std::ios::binary);
            if (!in) throw ResourceError("cannot open " + sweep_csv);
            const auto s = analysis::summarize(io::read_sweep_csv(in));
            Table blocks{{"k", "lo", "hi", "block_max", "argmax_x", "running_max"}, {}};
            for (const auto& b : analysis::dyadic_blocks(s.records))
                blocks.rows.push_back({static_cast<std::int64_t>(b.k), b.lo, b.hi, b.block_max, b.argmax_x, b.running_max});
            const Json summary = {{"summary",
                                   {{"records", s.records.size()},
                                    {"max_abs_normalized", s.max_abs_normalized},
                                    {"argmax_x", s.argmax_x},
                                    {"mean_count_over_x", s.mean_count_over_x}}}};
            if (em.format(Format::table) == Format::table) {
                em.emit("report sweep", {{"csv", sweep_csv}},
                        Table{{"records", "max_abs_normalized", "argmax_x", "mean_count_over_x"},
                              {{static_cast<std::uint64_t>(s.records.size()), s.max_abs_normalized, s.argmax_x,
                                s.mean_count_over_x}}});
                em.stream() << '\n';
            }
            em.emit("report sweep", {{"csv", sweep_csv}}, blocks, Format::table, summary);
        };
    });

    // verify
    bool verify_failed = false;
    auto* verify = app.add_subcommand("verify", "oracle-equivalence checks");
    verify->callback([&] {
        action = [&](detail::Emitter& em) {
            Table t{{"check", "result", "detail"}, {}};
            for (const auto& c : detail::verify_suite()) {
                t.rows.push_back({c.name, std::string(c.pass ? "pass" : "FAIL"), c.detail});
                verify_failed = verify_failed || !c.pass;
            }
            em.emit("verify", Json::object(), t);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!format_flag.empty()) output.format = detail::parse_format(format_flag);
        detail::Emitter em(output, out);
        if (action) action(em);
        em.stream().flush();
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return kExitResource;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "resource error: " << e.what() << '\n';
        return kExitResource;
    }
    return verify_failed ? kExitVerifyFailed : kExitOk;
}

}  // namespace gausscircle::cli
