#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gausscircle/core_arith.hpp"
#include "support.hpp"

using namespace gausscircle;
using namespace gausscircle::arith;
using gausscircle::testing::goldens;

TEST(R2, SmallValues) {
    EXPECT_EQ(r2_enumerate(0), 1u);
    EXPECT_EQ(r2_enumerate(1), 4u);
    EXPECT_EQ(r2_enumerate(25), 12u);
    EXPECT_EQ(r2_divisor(1), 4u);
    EXPECT_EQ(r2_divisor(3), 0u);
    EXPECT_EQ(r2_divisor(5), 8u);
    EXPECT_EQ(r2_residue(9), 4u);
    EXPECT_EQ(r2_residue(2), 4u);
    EXPECT_EQ(r2_residue(21), 0u);
    EXPECT_EQ(r2_enumerate(25), goldens()["core"]["r2_25"].get<std::uint64_t>());
}

TEST(R2, ZeroRejectedByDivisorRoutes) {
    EXPECT_THROW(r2_divisor(0), DomainError);
    EXPECT_THROW(r2_residue(0), DomainError);
}

TEST(R2, ThreeRoutesAgree) {
    for (std::uint64_t n = 1; n <= 20000; ++n) {
        const auto e = r2_enumerate(n);
        ASSERT_EQ(e, r2_divisor(n)) << n;
        ASSERT_EQ(e, r2_residue(n)) << n;
        ASSERT_EQ(e % 4, 0u) << n;
    }
}

TEST(R2, LargeArguments) {
    // 5^2 * 13 * 3^2 and a prime 3 mod 4.
    EXPECT_EQ(r2_divisor(2925), r2_enumerate(2925));
    EXPECT_EQ(r2_enumerate(999983), 0u);
    const std::uint64_t big = 1'000'000'007ull * 1'000'000'007ull;
    EXPECT_EQ(isqrt(big), 1'000'000'007ull);
    EXPECT_EQ(isqrt(big - 1), 1'000'000'006ull);
}

TEST(Chi4, Pattern) {
    EXPECT_EQ(chi4(1), 1);
    EXPECT_EQ(chi4(2), 0);
    EXPECT_EQ(chi4(3), -1);
    EXPECT_EQ(chi4(4), 0);
    EXPECT_EQ(chi4(4001), 1);
}

TEST(Sieve, SmallTables) {
    EXPECT_EQ(r2_sieve(0).limit(), 0u);
    EXPECT_EQ(r2_sieve(0)[0], 1u);
    const auto t = r2_sieve(5);
    const auto want = goldens()["core"]["r2_table_5"].get<std::vector<std::uint32_t>>();
    ASSERT_EQ(t.values().size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(t[i], want[i]);
}

TEST(Sieve, MatchesEnumeration) {
    const auto t = r2_sieve(100000);
    for (std::uint64_t n = 0; n <= t.limit(); ++n) ASSERT_EQ(t[n], r2_enumerate(n)) << n;
    EXPECT_EQ(t.prefix_sum(t.limit()), lattice_count_enumerate(t.limit()));
}

TEST(Sieve, SegmentSizeInvariance) {
    const auto reference = r2_sieve(5000);
    for (std::uint64_t seg : {1ull, 7ull, 64ull, 1000ull, 4999ull, 10000ull}) {
        SieveOptions opts;
        opts.segment_threshold = 10;
        opts.segment_size = seg;
        EXPECT_EQ(r2_sieve(5000, opts), reference) << "segment " << seg;
    }
}

TEST(Sieve, ResourceCap) {
    SieveOptions opts;
    opts.max_limit = 100;
    EXPECT_THROW(r2_sieve(101, opts), ResourceError);
    EXPECT_NO_THROW(r2_sieve(100, opts));
}

TEST(LatticeCount, RoutesAgreeOnSmallX) {
    for (std::uint64_t X = 0; X <= 3000; ++X) {
        const auto e = lattice_count_enumerate(X);
        ASSERT_EQ(e, floor_identity_direct(X)) << X;
        ASSERT_EQ(e, floor_identity_hyperbola(X)) << X;
    }
}

TEST(LatticeCount, Goldens) {
    for (const auto& [key, value] : goldens()["core"]["lattice_counts"].items()) {
        const auto X = std::stoull(key);
        const auto want = value.get<std::uint64_t>();
        EXPECT_EQ(floor_identity_hyperbola(X), want) << X;
        if (X <= 10'000'000) {
            EXPECT_EQ(lattice_count_enumerate(X), want) << X;
        }
    }
}

TEST(LatticeCount, HyperbolaAboveThirtyTwoBits) {
    const std::uint64_t X = 5'000'000'011ull;
    EXPECT_EQ(floor_identity_hyperbola(X), lattice_count_enumerate(X));
}

TEST(SumR2, Examples) {
    const auto r0 = sum_r2(0, SumMethod::enumerate);
    EXPECT_EQ(r0.count, 1u);
    EXPECT_DOUBLE_EQ(r0.delta, 1.0);
    EXPECT_EQ(sum_r2(2, SumMethod::sieve).count, 9u);
    EXPECT_EQ(sum_r2(2.9, SumMethod::floor_identity).count, 9u);
    const auto r100 = sum_r2(100, SumMethod::enumerate);
    EXPECT_EQ(r100.count, 317u);
    EXPECT_DOUBLE_EQ(r100.delta, 317.0 - 100.0 * std::numbers::pi);
}

TEST(SumR2, MethodsAgree) {
    const auto table = r2_sieve(100000);
    for (double x : {0.0, 0.5, 1.0, 10.5, 99.0, 1234.0, 65536.0, 99999.9}) {
        const auto e = sum_r2(x, SumMethod::enumerate).count;
        EXPECT_EQ(sum_r2(x, SumMethod::sieve, &table).count, e) << x;
        EXPECT_EQ(sum_r2(x, SumMethod::sieve).count, e) << x;
        EXPECT_EQ(sum_r2(x, SumMethod::floor_identity).count, e) << x;
    }
}

TEST(SumR2, Errors) {
    EXPECT_THROW(sum_r2(-1.0, SumMethod::enumerate), DomainError);
    EXPECT_THROW(sum_r2(std::nan(""), SumMethod::enumerate), DomainError);
    EXPECT_THROW(sum_r2(1e13, SumMethod::floor_identity), ResourceError);
}

TEST(Record, SelfConsistent) {
    for (double x : {1.0, 4.0, 100.0, 12345.0, 1e6}) {
        const auto r = sum_r2(x, SumMethod::floor_identity);
        EXPECT_EQ(r.delta, static_cast<double>(r.count) - r.pi_x);
        EXPECT_LE(std::fabs(r.normalized * std::pow(x, 0.25) - r.delta), 1e-12 * std::max(1.0, std::fabs(r.delta)));
    }
}

TEST(DeltaNormalized, Values) {
    EXPECT_DOUBLE_EQ(delta_normalized(1), 5.0 - std::numbers::pi);
    EXPECT_DOUBLE_EQ(delta_normalized(4), (13.0 - 4.0 * std::numbers::pi) / std::sqrt(2.0));
    // Stored delta is count - fl(pi x), so the golden is only reachable to ulp(pi x) / x^(1/4).
    for (const auto& [key, value] : goldens()["core"]["delta_normalized"].items()) {
        const double x = std::stod(key);
        const double tol = 1e-12 + 2 * std::numeric_limits<double>::epsilon() * std::numbers::pi * x / std::pow(x, 0.25);
        EXPECT_NEAR(delta_normalized(x), value.get<double>(), tol) << key;
    }
    EXPECT_THROW(delta_normalized(0.0), DomainError);
}

TEST(GaussMeanValue, Envelope) {
    for (double x : {100.0, 1e4, 1e6}) {
        const auto r = sum_r2(x, SumMethod::floor_identity);
        EXPECT_LE(std::fabs(static_cast<double>(r.count) / x - std::numbers::pi), 8.0 / std::sqrt(x)) << x;
    }
}

TEST(Growth, RatioTraceMatchesGoldens) {
    const auto t = r2_sieve(1'000'000);
    for (const auto& row : goldens()["core"]["r2_growth"]) {
        const auto N = row["N"].get<std::uint64_t>();
        double best = 0.0;
        std::uint64_t arg = 0;
        for (std::uint64_t n = 1; n <= N; ++n) {
            const double v = t[n] / std::pow(static_cast<double>(n), 0.3);
            if (v > best) best = v, arg = n;
        }
        EXPECT_NEAR(best, row["max_ratio"].get<double>(), 1e-12);
        EXPECT_EQ(arg, row["argmax_n"].get<std::uint64_t>());
    }
}

TEST(SumMethod, ParseRoundTrip) {
    for (auto m : {SumMethod::enumerate, SumMethod::sieve, SumMethod::floor_identity})
        EXPECT_EQ(parse_sum_method(to_string(m)), m);
    EXPECT_THROW(parse_sum_method("abacus"), DomainError);
}
