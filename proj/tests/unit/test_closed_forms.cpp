#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gausscircle/closed_forms.hpp"
#include "support.hpp"

using namespace gausscircle;
using namespace gausscircle::series;
using gausscircle::testing::goldens;
using gausscircle::testing::rel_err;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(FresnelClosedForm, Goldens) {
    for (const auto& row : goldens()["closed_forms"]["fresnel"]) {
        const auto r = fresnel_closed_form(row["a"].get<double>(), row["M"].get<std::int64_t>());
        EXPECT_NEAR(r.lhs_partial, row["lhs"].get<double>(), 1e-8);
        EXPECT_NEAR(r.rhs_closed, row["rhs"].get<double>(), 1e-8);
        EXPECT_NEAR(r.residual, row["residual"].get<double>(), 1e-8);
        EXPECT_EQ(r.residual, r.lhs_partial - r.rhs_closed);
    }
}

TEST(FresnelClosedForm, SingleTermAndEnvelope) {
    const auto r = fresnel_closed_form(2.0, 1);
    EXPECT_NEAR(r.lhs_partial, std::cos(2 * kPi * std::sqrt(2.0) + kPi / 4), 1e-15);
    for (double a : {1.0, 2.0, 7.3, 50.0, 100.0})
        for (std::int64_t m : {1, 10, 1000, 1000000})
            EXPECT_LE(std::fabs(fresnel_closed_form_rhs(a, m)), fresnel_closed_form_envelope(a)) << a << " " << m;
    EXPECT_THROW(fresnel_closed_form(0.0, 10), DomainError);
    EXPECT_THROW(fresnel_closed_form(1.0, 0), DomainError);
}

TEST(ExpintClosedForm, Goldens) {
    for (const auto& row : goldens()["closed_forms"]["expint"]) {
        const auto r = expint_closed_form(row["eps"].get<double>(), row["x"].get<double>(), row["y"].get<double>());
        EXPECT_NEAR(r.lhs_partial, row["lhs"].get<double>(), 1e-8);
        EXPECT_NEAR(r.rhs_closed, row["rhs"].get<double>(), 1e-8);
        EXPECT_NEAR(r.residual, row["residual"].get<double>(), 1e-8);
    }
}

TEST(ExpintClosedForm, SingleTermAndErrors) {
    const auto r = expint_closed_form(1.0, 2.0, 1.0);
    EXPECT_NEAR(r.lhs_partial, std::cos(2 * kPi * std::sqrt(2.0) + kPi / 4), 1e-15);
    EXPECT_THROW(expint_closed_form(0.0, 2.0, 3.0), DomainError);
    EXPECT_THROW(expint_closed_form(1.0, 0.5, 3.0), DomainError);
    EXPECT_THROW(expint_closed_form(1.0, 2.0, 0.5), DomainError);
}

TEST(ExpintClosedForm, ApproachesLimit) {
    // The y-dependent trig terms cancel; what is left is y^(1-eps) times an
    // E pair of size about 2/(2 pi sqrt(x) y).
    for (double eps : {0.5, 1.0}) {
        const auto r = expint_closed_form(eps, 4.0, 1000.0);
        const double envelope = 4.0 * std::pow(1000.0, -eps) / (2 * kPi * 2.0);
        EXPECT_LE(std::fabs(r.rhs_closed - f_eps_limit(eps, 4.0)), envelope) << eps;
    }
}

TEST(FEps, GoldensAndErrors) {
    for (const auto& row : goldens()["closed_forms"]["f_eps"])
        EXPECT_NEAR(f_eps_limit(row["eps"].get<double>(), row["x"].get<double>()), row["value"].get<double>(), 1e-8);
    EXPECT_THROW(f_eps_limit(0.0, 4.0), DomainError);
    EXPECT_THROW(f_eps_limit(1.0, 0.5), DomainError);
}

TEST(SqrtClosedForm, Goldens) {
    for (const auto& row : goldens()["closed_forms"]["sqrt"]) {
        const auto r = sqrt_closed_form(row["x"].get<double>(), row["M"].get<std::int64_t>());
        EXPECT_NEAR(r.report.lhs_partial, row["lhs"].get<double>(), 1e-8);
        EXPECT_NEAR(r.report.rhs_closed, row["rhs"].get<double>(), 1e-8);
        EXPECT_NEAR(r.report.residual, row["residual"].get<double>(), 1e-8);
    }
}

TEST(SqrtClosedForm, XTwoForms) {
    for (std::int64_t m : {1, 100, 10000, 1000000}) {
        const auto r = sqrt_closed_form(2.0, m);
        ASSERT_TRUE(r.x2_form.has_value());
        EXPECT_NEAR(*r.x2_form, r.report.rhs_closed, 1e-8);
    }
    EXPECT_FALSE(sqrt_closed_form(3.0, 100).x2_form.has_value());
}

TEST(SqrtClosedForm, BoundedButNotCauchy) {
    const auto sums = oscillatory_prefix_sums(2.0, 1'000'000, 0.5);
    const auto& g = goldens()["analysis"]["eq46_x2"];
    double sup = 0.0;
    for (std::size_t i = 0; i < sums.size(); ++i) sup = std::max(sup, std::fabs(sums[i]));
    EXPECT_NEAR(sup, g["sup_abs"].get<double>(), 1e-9);
    const auto m1 = g["argmax_m"].get<std::size_t>();
    const auto m2 = g["argmin_m"].get<std::size_t>();
    ASSERT_GE(std::min(m1, m2), 100000u);
    EXPECT_GT(std::fabs(sums[m1 - 1] - sums[m2 - 1]), 0.4);
}

TEST(EulerMaclaurin, DerivativeMatchesFiniteDifference) {
    const double h = 1e-6;
    for (double x : {1.0, 2.0}) {
        for (double delta : {0.125, 0.2}) {
            const EmIntegrand F{x, delta};
            for (double t : {1.0, 2.5, 10.0, 333.0}) {
                const double fd = (F(t + h) - F(t - h)) / (2 * h);
                EXPECT_LE(std::fabs(fd - F.derivative(t)), 1e-5) << x << " " << delta << " " << t;
            }
        }
    }
}

TEST(EulerMaclaurin, FourthDerivativeBoundHolds) {
    const double h = 1e-2;
    for (double x : {1.0, 2.0}) {
        for (double delta : {0.125, 0.2}) {
            const EmIntegrand F{x, delta};
            for (double t : {1.5, 3.0, 10.0, 100.0}) {
                const double d4 = (F(t + 2 * h) - 4 * F(t + h) + 6 * F(t) - 4 * F(t - h) + F(t - 2 * h)) / std::pow(h, 4);
                EXPECT_LE(std::fabs(d4), F.fourth_derivative_bound(t - 2 * h)) << x << " " << delta << " " << t;
            }
        }
    }
}

TEST(EulerMaclaurin, IntegralBounded) {
    for (double x : {1.0, 2.0, 10.5}) {
        const EmIntegrand F{x, 0.125};
        for (double m : {1e2, 1e3, 1e4, 1e5, 1e6})
            EXPECT_LE(std::fabs(em_integral(F, 1.0, m + 1.0)), 4.0 / (2 * kPi * std::sqrt(x))) << x << " " << m;
    }
}

TEST(EulerMaclaurin, WithinRemainderBound) {
    for (double x : {1.0, 2.0})
        for (double delta : {0.125, 0.2})
            for (std::int64_t m : {1000, 10000}) {
                const auto em = euler_maclaurin(EmIntegrand{x, delta}, 1, m);
                const double direct = d_partial(x, m, delta).value;
                ASSERT_TRUE(em.tail_estimate.has_value());
                EXPECT_LE(std::fabs(em.value - direct), *em.tail_estimate) << x << " " << delta << " " << m;
            }
    EXPECT_THROW(euler_maclaurin(EmIntegrand{1.0, 0.3}, 1, 10), DomainError);
    EXPECT_THROW(euler_maclaurin(EmIntegrand{1.0, 0.1}, 0, 10), DomainError);
}

TEST(Abel, Harmonic) {
    std::vector<double> c(100, 1.0);
    std::vector<double> lambda(100);
    for (int n = 1; n <= 100; ++n) lambda[n - 1] = n;
    const double h = abel_summation(c, lambda, [](double t) { return 1.0 / t; }, 100.5);
    EXPECT_LE(rel_err(h, goldens()["series"]["harmonic_100"].get<double>()), 1e-10);
}

TEST(Abel, SqrtLambdaInstanceReproducesSum) {
    for (double a : {1.0, 2.0, 7.3}) {
        const std::int64_t M = 20000;
        std::vector<double> c(M, 1.0);
        std::vector<double> lambda(M);
        for (std::int64_t n = 1; n <= M; ++n) lambda[n - 1] = std::sqrt(double(n));
        const double w = 2 * kPi * std::sqrt(a);
        const auto f = [w](double t) { return std::cos(w * t + kPi / 4) / std::pow(t, 1.5); };
        const double abel = abel_summation(c, lambda, f, std::sqrt(double(M)));
        const double direct = oscillatory_sum(a, M, 0.75);
        EXPECT_LE(rel_err(abel, direct), 1e-10) << a;
    }
}

TEST(Abel, EdgeCases) {
    const std::vector<double> c{2.0, 3.0};
    const std::vector<double> lambda{1.0, 2.0};
    const auto f = [](double t) { return t * t; };
    EXPECT_DOUBLE_EQ(abel_summation(c, lambda, f, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(abel_summation(c, lambda, f, 2.0), 2.0 + 12.0);
    EXPECT_THROW(abel_summation(c, lambda, f, 0.5), DomainError);
    const std::vector<double> unsorted{2.0, 1.0};
    EXPECT_THROW(abel_summation(c, unsorted, f, 3.0), DomainError);
}
