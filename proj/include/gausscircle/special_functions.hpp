#pragma once

// Floating-point kernels: Bessel J1 (power series and large-argument
// expansion), Fresnel C/S, and the generalized exponential integral E_nu of
// complex argument.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include "gausscircle/errors.hpp"

namespace gausscircle::special {

inline constexpr int kMaxC1Index = 60;

namespace detail {

inline constexpr int kC1TableSize = 64;

// c1[m] = (-1)^m (-1/2)_m (3/2)_m / m!, built by the product recurrence.
inline const std::array<double, kC1TableSize>& c1_table() {
    static const auto table = [] {
        std::array<double, kC1TableSize> t{};
        t[0] = 1.0;
        for (int m = 1; m < kC1TableSize; ++m)
            t[m] = -t[m - 1] * (m - 1.5) * (m + 0.5) / m;
        return t;
    }();
    return table;
}

}  // namespace detail

/// Coefficient of the large-argument J1 expansion. c1(0) = 1, c1(1) = 3/4,
/// c1(2) = -15/32.
inline double c1(int m) {
    gausscircle::detail::require(m >= 0 && m <= kMaxC1Index,
                                 "c1: index must lie in [0, 60], got " + std::to_string(m));
    return detail::c1_table()[static_cast<std::size_t>(m)];
}

/// Immutable view of c1(0..60), shareable across threads.
class CoefficientCache {
public:
    CoefficientCache() : table_(&detail::c1_table()) {}
    [[nodiscard]] double operator[](int m) const {
        gausscircle::detail::require(m >= 0 && m <= kMaxC1Index, "CoefficientCache: index out of range");
        return (*table_)[static_cast<std::size_t>(m)];
    }
    [[nodiscard]] static constexpr int size() { return kMaxC1Index + 1; }

private:
    const std::array<double, detail::kC1TableSize>* table_;
};

/// Truncated power series of J1 using the term recurrence
/// t_{k+1} = t_k * (-z^2/4) / ((k+1)(k+2)). Templated so tests can run the
/// same series in extended precision as an oracle.
template <class Real>
Real bessel_j1_series(const Real& z, int terms) {
    gausscircle::detail::require(terms >= 1, "bessel_j1_series: terms must be >= 1");
    Real term = z / 2;
    Real sum = term;
    const Real q = -(z * z) / 4;
    for (int k = 0; k + 1 < terms; ++k) {
        term *= q;
        term /= k + 1;
        term /= k + 2;
        sum += term;
    }
    return sum;
}

inline double bessel_j1_series(double z, int terms) { return bessel_j1_series<double>(z, terms); }

struct AsymptoticEval {
    double value = 0.0;
    /// Magnitude (in J1 units) of the first omitted term, c1(2N+1)/(2z)^(2N+1).
    double first_omitted = 0.0;
    /// first_omitted * (1/z): the reading "size of that term multiplied by 1/x".
    double scaled_first_omitted = 0.0;
    /// Sum of the first omitted term of each envelope (cosine and sine);
    /// the figure compared against actual errors.
    double error_estimate = 0.0;
};

/// sqrt(2/(pi z)) [cos(z - 3pi/4) sum_{n=0}^{N} (-1)^n c1(2n)/(2z)^(2n)
///                - sin(z - 3pi/4) sum_{n=0}^{N-1} (-1)^n c1(2n+1)/(2z)^(2n+1)]
inline AsymptoticEval bessel_j1_asymptotic_eval(double z, int n_terms) {
    gausscircle::detail::require(z > 0.0, "bessel_j1_asymptotic: z must be > 0");
    gausscircle::detail::require(n_terms >= 1 && n_terms <= 30,
                                 "bessel_j1_asymptotic: n_terms must lie in [1, 30]");
    const auto& c = detail::c1_table();
    const double inv = 1.0 / (2.0 * z);
    double p = 0.0;
    double q = 0.0;
    double pw = 1.0;  // (2z)^-m
    for (int m = 0; m <= 2 * n_terms; ++m) {
        const double sign = ((m / 2) % 2 == 0) ? 1.0 : -1.0;
        if (m % 2 == 0) p += sign * c[m] * pw;
        else q += sign * c[m] * pw;
        pw *= inv;
    }
    // pw now holds (2z)^-(2N+1).
    const double chi = z - 0.75 * std::numbers::pi;
    const double pref = std::sqrt(2.0 / (std::numbers::pi * z));
    AsymptoticEval out;
    out.value = pref * (std::cos(chi) * p - std::sin(chi) * q);
    const double omit_q = std::fabs(c[2 * n_terms + 1]) * pw;
    const double omit_p = std::fabs(c[2 * n_terms + 2]) * pw * inv;
    out.first_omitted = pref * omit_q;
    out.scaled_first_omitted = out.first_omitted / z;
    out.error_estimate = pref * (omit_q + omit_p);
    return out;
}

inline double bessel_j1_asymptotic(double z, int n_terms) {
    return bessel_j1_asymptotic_eval(z, n_terms).value;
}

/// How bessel_j1 picks its route.
struct BesselPolicy {
    enum class Method { series, asymptotic, automatic };

    Method method = Method::automatic;
    int series_terms = 60;
    int asymptotic_terms = 5;
    /// |z| below this uses the power series in automatic mode.
    double switch_point = 12.0;

    /// Throws DomainError unless the asymptotic terms are still shrinking at
    /// the switch point.
    void validate() const {
        using gausscircle::detail::require;
        require(switch_point > 0.0, "BesselPolicy: switch_point must be > 0");
        require(series_terms >= 1, "BesselPolicy: series_terms must be >= 1");
        require(asymptotic_terms >= 1 && asymptotic_terms <= 30,
                "BesselPolicy: asymptotic_terms must lie in [1, 30]");
        const auto& c = detail::c1_table();
        for (int m = 0; m <= 2 * asymptotic_terms + 1; ++m) {
            require(std::fabs(c[m + 1]) / (2.0 * switch_point) < std::fabs(c[m]),
                    "BesselPolicy: asymptotic terms already growing at the switch point");
        }
    }
};

/// J1 with odd extension to negative z.
inline double bessel_j1(double z, const BesselPolicy& policy = {}) {
    const double az = std::fabs(z);
    if (az == 0.0) return 0.0;
    double v = 0.0;
    switch (policy.method) {
        case BesselPolicy::Method::series:
            v = bessel_j1_series(az, policy.series_terms);
            break;
        case BesselPolicy::Method::asymptotic:
            v = bessel_j1_asymptotic(az, policy.asymptotic_terms);
            break;
        case BesselPolicy::Method::automatic:
            v = az < policy.switch_point ? bessel_j1_series(az, policy.series_terms)
                                         : bessel_j1_asymptotic(az, policy.asymptotic_terms);
            break;
    }
    return z < 0.0 ? -v : v;
}

// ---------------------------------------------------------------------------
// Fresnel integrals C(z) = int_0^z cos(pi t^2/2) dt, S(z) likewise with sin.

struct FresnelPair {
    double c = 0.0;
    double s = 0.0;
};

/// Auxiliary functions with C = 1/2 + f sin(pi z^2/2) - g cos(pi z^2/2) and
/// S = 1/2 - f cos(pi z^2/2) - g sin(pi z^2/2).
struct FresnelAuxiliary {
    double f = 0.0;
    double g = 0.0;
};

namespace detail {

inline constexpr double kFresnelSeriesMax = 1.5;

// cos and sin of pi z^2 / 2 with z^2 split exactly and reduced mod 4, so the
// phase stays accurate for z in the thousands.
inline std::pair<double, double> half_pi_square_phase(double z) {
    const double hi = z * z;
    const double lo = std::fma(z, z, -hi);
    const double r = std::fmod(hi, 4.0) + lo;
    const double theta = 0.5 * std::numbers::pi * r;
    return {std::cos(theta), std::sin(theta)};
}

inline FresnelPair fresnel_series(double z) {
    const double w = 0.5 * std::numbers::pi * z * z;
    double c = 0.0;
    double s = 0.0;
    double power = z;  // w^n z / n!
    for (int n = 0; n < 200; ++n) {
        const double term = power / (2 * n + 1);
        const double signed_term = ((n / 2) % 2 == 0) ? term : -term;
        if (n % 2 == 0) c += signed_term;
        else s += signed_term;
        if (n > 2 && term < 1e-17 * std::fabs(c)) break;
        power *= w / (n + 1);
    }
    return {c, s};
}

}  // namespace detail

/// Modified-Lentz evaluation of the continued fraction behind the
/// complementary error function; valid for z > kFresnelSeriesMax.
inline FresnelAuxiliary fresnel_auxiliary(double z) {
    gausscircle::detail::require(z > 0.0, "fresnel_auxiliary: z must be > 0");
    using cplx = std::complex<double>;
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    cplx b(1.0, -std::numbers::pi * z * z);
    cplx cc = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    double n = -1.0;
    bool converged = false;
    for (int k = 2; k < 100000; ++k) {
        n += 2.0;
        const double a = -n * (n + 1.0);
        b += 4.0;
        d = 1.0 / (a * d + b);
        cc = b + a / cc;
        const cplx del = cc * d;
        h *= del;
        if (std::fabs(del.real() - 1.0) + std::fabs(del.imag()) < eps) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NumericalError("fresnel_auxiliary: continued fraction did not converge");
    h *= cplx(z, -z);
    const cplx a = cplx(0.5, 0.5) * h;
    return {a.imag(), a.real()};
}

inline FresnelPair fresnel(double z) {
    gausscircle::detail::require(z >= 0.0 && std::isfinite(z), "fresnel: z must be finite and >= 0");
    if (z <= detail::kFresnelSeriesMax) return detail::fresnel_series(z);
    const auto [f, g] = fresnel_auxiliary(z);
    const auto [cs, sn] = detail::half_pi_square_phase(z);
    return {0.5 + f * sn - g * cs, 0.5 - f * cs - g * sn};
}

// ---------------------------------------------------------------------------
// E_nu(z) = int_1^inf exp(-z t) t^-nu dt.

namespace detail {

inline constexpr double kExpintSeriesRadius = 2.0;

inline std::complex<double> expint_continued_fraction(double nu, std::complex<double> z) {
    using cplx = std::complex<double>;
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    cplx b = z + nu;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 200000; ++i) {
        const double an = -static_cast<double>(i) * (nu - 1.0 + i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h * std::exp(-z);
    }
    throw NumericalError("expint: continued fraction did not converge");
}

inline std::complex<double> expint_series(double nu, std::complex<double> z) {
    using cplx = std::complex<double>;
    const double rounded = std::round(nu);
    const bool integer_order = std::fabs(nu - rounded) < 1e-14;
    gausscircle::detail::require(integer_order || std::fabs(nu - rounded) > 1e-6,
                                 "expint: order within 1e-6 of an integer is outside the "
                                 "validated domain for |z| < 2");
    cplx sum = 0.0;
    cplx power = 1.0;  // (-z)^k / k!
    const int n = static_cast<int>(rounded);
    for (int k = 0; k < 500; ++k) {
        if (k > 0) power *= -z / static_cast<double>(k);
        if (integer_order && k == n - 1) continue;
        const cplx term = power / (1.0 - nu + k);
        sum += term;
        if (k > 5 && std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    if (!integer_order) return std::tgamma(1.0 - nu) * std::pow(z, nu - 1.0) - sum;
    double psi = -0.57721566490153286061;
    double fact = 1.0;
    for (int m = 1; m < n; ++m) {
        psi += 1.0 / m;
        fact *= m;
    }
    return std::pow(-z, static_cast<double>(n - 1)) / fact * (psi - std::log(z)) - sum;
}

}  // namespace detail

/// Generalized exponential integral for order >= 0 and either Re z > 0 or
/// z purely imaginary and nonzero (order > 0 there; order 0 diverges).
/// Continued fraction for |z| >= 2, power series with the Gamma/digamma
/// term otherwise.
inline std::complex<double> expint(double order, std::complex<double> z) {
    using gausscircle::detail::require;
    require(std::isfinite(order) && order >= 0.0, "expint: order must be finite and >= 0");
    require(z != std::complex<double>(0.0, 0.0), "expint: z = 0 is not allowed");
    require(z.real() >= 0.0, "expint: Re(z) must be > 0 or z purely imaginary");
    const bool imaginary = z.real() == 0.0;
    require(!(imaginary && order == 0.0), "expint: order 0 on the imaginary axis diverges");
    if (order == 0.0) return std::exp(-z) / z;
    if (std::abs(z) >= detail::kExpintSeriesRadius) return detail::expint_continued_fraction(order, z);
    return detail::expint_series(order, z);
}

}  // namespace gausscircle::special
