#pragma once

// Closed-form approximants for the oscillatory sums, each paired with the
// partial sum it stands for, plus the two summation tools they come from:
// Abel (partial) summation and the Euler-Maclaurin formula.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gausscircle/errors.hpp"
#include "gausscircle/series.hpp"
#include "gausscircle/special_functions.hpp"
#include "gausscircle/summation.hpp"

namespace gausscircle::series {

/// A partial sum next to the closed form claimed for it.
struct ClosedFormReport {
    double lhs_partial = 0.0;
    double rhs_closed = 0.0;
    double residual = 0.0;  ///< lhs_partial - rhs_closed
    std::vector<std::pair<std::string, double>> params;
};

namespace detail {

inline ClosedFormReport make_report(double lhs, double rhs,
                                    std::vector<std::pair<std::string, double>> params) {
    finite_or_throw(lhs, "closed form lhs");
    finite_or_throw(rhs, "closed form rhs");
    return {lhs, rhs, lhs - rhs, std::move(params)};
}

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace detail

/// (1/(sqrt2 a^(1/4))) (-2C(2a^(1/4)) + 2C(2(aM)^(1/4)) + 2S(2a^(1/4)) - 2S(2(aM)^(1/4)))
///   + (cos(2 pi sqrt a) - sin(2 pi sqrt a))/sqrt2
inline double fresnel_closed_form_rhs(double a, std::int64_t m_terms) {
    gausscircle::detail::require(a > 0.0 && std::isfinite(a), "fresnel_closed_form: a must be > 0");
    gausscircle::detail::require(m_terms >= 1, "fresnel_closed_form: M must be >= 1");
    const double a4 = std::pow(a, 0.25);
    const auto lo = special::fresnel(2.0 * a4);
    const auto hi = special::fresnel(2.0 * std::pow(a * static_cast<double>(m_terms), 0.25));
    const double root = detail::kTwoPi * std::sqrt(a);
    return detail::kInvSqrt2 / a4 * (-2.0 * lo.c + 2.0 * hi.c + 2.0 * lo.s - 2.0 * hi.s) +
           detail::kInvSqrt2 * (std::cos(root) - std::sin(root));
}

/// sum_{n<=M} cos(2 pi sqrt(n a) + pi/4)/n^(3/4) against fresnel_closed_form_rhs.
inline ClosedFormReport fresnel_closed_form(double a, std::int64_t m_terms) {
    const double rhs = fresnel_closed_form_rhs(a, m_terms);
    const double lhs = oscillatory_sum(a, m_terms, 0.75);
    return detail::make_report(lhs, rhs, {{"a", a}, {"M", static_cast<double>(m_terms)}});
}

/// Triangle-inequality envelope of the Fresnel closed form with |F| <= 1.
inline double fresnel_closed_form_envelope(double a) {
    return std::numbers::sqrt2 + 4.0 / (std::numbers::sqrt2 * std::pow(a, 0.25));
}

namespace detail {

// Every E_eps argument appears in a conjugate pair; the imaginary parts of
// each pair cancel. `scale` sets the tolerance of that check.
inline double real_or_throw(std::complex<double> v, double scale, const char* where) {
    if (std::fabs(v.imag()) > 1e-8 * std::max(1.0, scale))
        throw NumericalError(std::string(where) + ": conjugate pair left an imaginary part of " +
                             std::to_string(v.imag()));
    return v.real();
}

inline std::complex<double> conjugate_pair(double eps, double r) {
    using cplx = std::complex<double>;
    const cplx e_minus = special::expint(eps, cplx(0.0, -r));
    const cplx e_plus = special::expint(eps, cplx(0.0, r));
    return (cplx(1.0, 1.0) * e_minus + cplx(1.0, -1.0) * e_plus) * kInvSqrt2;
}

}  // namespace detail

/// D(eps, x, y^2) = sum_{n<=y^2} cos(2 pi sqrt(n x) + pi/4)/n^(1/2+eps/2)
/// against its nine-term expression in E_eps(+-2 i pi sqrt x (y)).
inline ClosedFormReport expint_closed_form(double eps, double x, double y) {
    gausscircle::detail::require(eps > 0.0 && std::isfinite(eps), "expint_closed_form: eps must be > 0");
    gausscircle::detail::require(x >= 1.0 && std::isfinite(x), "expint_closed_form: x must be >= 1");
    gausscircle::detail::require(y >= 1.0 && std::isfinite(y) && y * y <= 1e12, "expint_closed_form: y must be >= 1");
    const auto m_terms = static_cast<std::int64_t>(std::floor(y * y));
    const double lhs = oscillatory_sum(x, m_terms, 0.5 + 0.5 * eps);

    const double r = detail::kTwoPi * std::sqrt(x);
    const double ry = r * y;
    const double Y = std::pow(y, 1.0 - eps);
    const std::complex<double> e_terms = -Y * detail::conjugate_pair(eps, ry) + detail::conjugate_pair(eps, r);
    const double trig = Y * std::sin(ry) * detail::kInvSqrt2 + Y * std::cos(ry + detail::kQuarterPi) -
                        Y * std::cos(ry) * detail::kInvSqrt2 - std::sin(r) * detail::kInvSqrt2 +
                        std::cos(r) * detail::kInvSqrt2;
    const double rhs = detail::real_or_throw(e_terms, Y, "expint_closed_form") + trig;
    return detail::make_report(lhs, rhs, {{"eps", eps}, {"x", x}, {"y", y}, {"M", static_cast<double>(m_terms)}});
}

/// Limit of the E_eps closed form as y -> infinity:
///   (1+i)E_eps(-2i pi sqrt x)/sqrt2 + (1-i)E_eps(2i pi sqrt x)/sqrt2
///   - sin(2 pi sqrt x)/sqrt2 + cos(2 pi sqrt x)/sqrt2.
inline double f_eps_limit(double eps, double x) {
    gausscircle::detail::require(eps > 0.0 && std::isfinite(eps), "f_eps_limit: eps must be > 0");
    gausscircle::detail::require(x >= 1.0 && std::isfinite(x), "f_eps_limit: x must be >= 1");
    const double r = detail::kTwoPi * std::sqrt(x);
    const double e = detail::real_or_throw(detail::conjugate_pair(eps, r), 1.0, "f_eps_limit");
    return e + (std::cos(r) - std::sin(r)) * detail::kInvSqrt2;
}

struct SqrtClosedForm {
    ClosedFormReport report;
    /// At x = 2 only: the constant-C form divided by 2 pi.
    std::optional<double> x2_form;
};

/// sum_{n<=M} cos(2 pi sqrt(n x) + pi/4)/sqrt n against
///   sin(2 pi sqrt(x M) + pi/4)/(pi sqrt x) - sin(2 pi sqrt x + pi/4)/(pi sqrt x)
///   + cos(2 pi sqrt x + pi/4).
/// At x = 2 the separate form sin(2 sqrt(2M) pi) + cos(2 sqrt(2M) pi) + C is
/// evaluated as well and must agree (after dividing by 2 pi) to 1e-8.
inline SqrtClosedForm sqrt_closed_form(double x, std::int64_t m_terms) {
    gausscircle::detail::require(x > 0.0 && std::isfinite(x), "sqrt_closed_form: x must be > 0");
    gausscircle::detail::require(m_terms >= 1, "sqrt_closed_form: M must be >= 1");
    const double pi = std::numbers::pi;
    const double md = static_cast<double>(m_terms);
    const double lhs = oscillatory_sum(x, m_terms, 0.5);
    const double base = detail::kTwoPi * std::sqrt(x) + detail::kQuarterPi;
    const double rhs = std::sin(detail::kTwoPi * std::sqrt(x * md) + detail::kQuarterPi) / (pi * std::sqrt(x)) -
                       std::sin(base) / (pi * std::sqrt(x)) + std::cos(base);
    SqrtClosedForm out{detail::make_report(lhs, rhs, {{"x", x}, {"M", md}}), std::nullopt};
    if (x == 2.0) {
        const double s2 = std::numbers::sqrt2;
        const double c = -(1.0 + s2 * pi) * std::sin(2.0 * s2 * pi) + (s2 * pi - 1.0) * std::cos(2.0 * s2 * pi);
        const double arg = 2.0 * std::sqrt(2.0 * md) * pi;
        const double form = (std::sin(arg) + std::cos(arg) + c) / (2.0 * pi);
        if (std::fabs(form - rhs) > 1e-8)
            throw NumericalError("sqrt_closed_form: the two x = 2 closed forms disagree");
        out.x2_form = form;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin

/// F(t) = cos(2 pi sqrt(t x) + pi/4) / t^(3/4 - delta), 0 < delta < 1/4.
struct EmIntegrand {
    double x = 1.0;
    double delta = 0.125;

    [[nodiscard]] double power() const { return 0.75 - delta; }

    [[nodiscard]] double operator()(double t) const {
        return std::cos(detail::kTwoPi * std::sqrt(t * x) + detail::kQuarterPi) / std::pow(t, power());
    }

    /// (delta - 3/4) cos(.)/t^(7/4-delta) - pi sqrt(x) sin(.)/t^(5/4-delta)
    [[nodiscard]] double derivative(double t) const {
        const double phase = detail::kTwoPi * std::sqrt(x * t) + detail::kQuarterPi;
        return (delta - 0.75) * std::cos(phase) / std::pow(t, 1.75 - delta) -
               std::numbers::pi * std::sqrt(x) * std::sin(phase) / std::pow(t, 1.25 - delta);
    }

    /// Upper bound for |F''''| on [t, infinity): Leibniz rule on t^-p times
    /// cos(phi(t)) with each factor bounded in absolute value. Every piece is
    /// decreasing in t, so the bound at t covers any interval starting at t.
    [[nodiscard]] double fourth_derivative_bound(double t) const {
        const double p = power();
        const double c = detail::kTwoPi * std::sqrt(x);
        double g[5];
        double rising = 1.0;
        for (int j = 0; j <= 4; ++j) {
            g[j] = rising * std::pow(t, -p - j);
            rising *= p + j;
        }
        const double f1 = 0.5 * c * std::pow(t, -0.5);
        const double f2 = 0.25 * c * std::pow(t, -1.5);
        const double f3 = 0.375 * c * std::pow(t, -2.5);
        const double f4 = 0.9375 * c * std::pow(t, -3.5);
        const double h[5] = {1.0, f1, f2 + f1 * f1, f3 + 3.0 * f1 * f2 + f1 * f1 * f1,
                             f4 + 4.0 * f1 * f3 + 3.0 * f2 * f2 + 6.0 * f1 * f1 * f2 + f1 * f1 * f1 * f1};
        const double binom[5] = {1.0, 4.0, 6.0, 4.0, 1.0};
        double bound = 0.0;
        for (int j = 0; j <= 4; ++j) bound += binom[j] * g[4 - j] * h[j];
        return bound;
    }
};

/// int_lo^hi F(t) dt. With t = u^2 the integrand becomes
/// 2 u^(1-2p) cos(2 pi sqrt(x) u + pi/4), integrated by adaptive
/// Gauss-Kronrod over half-period panels in u. Throws when the summed error
/// estimate exceeds `tol` relative to max(1, |integral|).
inline double em_integral(const EmIntegrand& F, double lo, double hi, double tol = 1e-7) {
    gausscircle::detail::require(lo > 0.0 && hi >= lo, "em_integral: need 0 < lo <= hi");
    using boost::math::quadrature::gauss_kronrod;
    const double omega = detail::kTwoPi * std::sqrt(F.x);
    const double expo = 1.0 - 2.0 * F.power();
    const auto g = [&](double u) {
        return 2.0 * std::pow(u, expo) * std::cos(omega * u + detail::kQuarterPi);
    };
    const double u_lo = std::sqrt(lo);
    const double u_hi = std::sqrt(hi);
    const double panel = std::numbers::pi / omega;
    CompensatedSum total;
    double err_total = 0.0;
    for (double a = u_lo; a < u_hi;) {
        const double b = std::min(u_hi, a + panel);
        double err = 0.0;
        total += gauss_kronrod<double, 21>::integrate(g, a, b, 8, 1e-13, &err);
        err_total += err;
        a = b;
    }
    const double value = total.value();
    if (err_total > tol * std::max(1.0, std::fabs(value)))
        throw NumericalError("em_integral: quadrature error estimate " + std::to_string(err_total) +
                             " above tolerance");
    return value;
}

/// Euler-Maclaurin right side in the form
///   int_a^{M+1} F + (F(M+a) + F(a))/2 + (F'(M+a) - F'(a))/12,
/// with tail_estimate = (1/120) sum_{k=0}^{M-1} sup_{[a+k, a+k+1]} |F''''|.
/// For a = 1 this tracks sum_{k=1}^{M+1} F(k); the extra F(M+1) sits well
/// inside the remainder bound.
inline SeriesEval euler_maclaurin(const EmIntegrand& F, std::int64_t a, std::int64_t m_terms) {
    gausscircle::detail::require(F.delta > 0.0 && F.delta < 0.25, "euler_maclaurin: delta must lie in (0, 1/4)");
    gausscircle::detail::require(F.x > 0.0 && std::isfinite(F.x), "euler_maclaurin: x must be > 0");
    gausscircle::detail::require(a >= 1, "euler_maclaurin: a must be >= 1");
    gausscircle::detail::require(m_terms >= 1, "euler_maclaurin: M must be >= 1");
    const double ad = static_cast<double>(a);
    const double md = static_cast<double>(m_terms);
    const double integral = em_integral(F, ad, md + 1.0);
    const double value = integral + 0.5 * (F(md + ad) + F(ad)) + (F.derivative(md + ad) - F.derivative(ad)) / 12.0;
    CompensatedSum rem;
    for (std::int64_t k = 0; k < m_terms; ++k) rem += F.fourth_derivative_bound(ad + static_cast<double>(k));
    return detail::make_eval(value, m_terms, std::nullopt, rem.value() / 120.0, "euler_maclaurin");
}

// ---------------------------------------------------------------------------
// Abel summation

/// C(x) f(x) - int_{lambda_1}^{x} C(t) f'(t) dt with C(t) = sum_{lambda_n <= t} c_n.
/// C is a step function, so the integral is evaluated exactly as
/// sum_j C_j (f(right_j) - f(lambda_j)) over the constant pieces; f only
/// needs to be callable. Requires nondecreasing lambdas and x >= lambda_1.
template <class Fn>
double abel_summation(std::span<const double> coeffs, std::span<const double> lambdas, Fn&& f, double x) {
    gausscircle::detail::require(!lambdas.empty() && coeffs.size() == lambdas.size(),
                    "abel_summation: need equally many coefficients and lambdas");
    gausscircle::detail::require(std::is_sorted(lambdas.begin(), lambdas.end()), "abel_summation: lambdas must be nondecreasing");
    gausscircle::detail::require(x >= lambdas.front(), "abel_summation: x must be >= lambda_1");
    const std::size_t last = static_cast<std::size_t>(
        std::upper_bound(lambdas.begin(), lambdas.end(), x) - lambdas.begin());  // lambdas[0..last) <= x
    CompensatedSum running;  // C_j
    CompensatedSum integral;
    double f_left = f(lambdas[0]);
    for (std::size_t j = 0; j < last; ++j) {
        running += coeffs[j];
        const double right = j + 1 < last ? lambdas[j + 1] : x;
        const double f_right = (right == lambdas[j]) ? f_left : f(right);
        integral += running.value() * (f_right - f_left);
        f_left = f_right;
    }
    return running.value() * f(x) - integral.value();
}

}  // namespace gausscircle::series
