#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <map>

#include "carlitz/sampler.hpp"
#include "oracles.hpp"

using namespace carlitz;

TEST(Rng, Deterministic) {
    RngStream a(42, 3), b(42, 3), c(42, 4);
    for (int i = 0; i < 10; ++i) {
        const auto x = a.next();
        EXPECT_EQ(x, b.next());
        EXPECT_NE(x, c.next());
    }
}

TEST(Rng, GeometricHalfFrequencies) {
    RngStream rng(1);
    std::map<std::uint64_t, int> freq;
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) ++freq[rng.geometric_half()];
    for (std::uint64_t k = 1; k <= 6; ++k) {
        const double p = std::ldexp(1.0, -static_cast<int>(k));
        EXPECT_NEAR(freq[k] / double(draws), p, 5 * std::sqrt(p * (1 - p) / draws)) << k;
    }
}

TEST(Rng, UniformBelowRange) {
    RngStream rng(9);
    const BigInt bound = (BigInt(1) << 130) + 12345;
    for (int i = 0; i < 200; ++i) {
        const BigInt x = rng.uniform_below(bound);
        EXPECT_GE(x, 0);
        EXPECT_LT(x, bound);
    }
    std::map<int, int> f;
    for (int i = 0; i < 7000; ++i) ++f[static_cast<int>(rng.uniform_below(BigInt(7)))];
    EXPECT_EQ(f.size(), 7u);
    EXPECT_THROW(rng.uniform_below(BigInt(0)), std::invalid_argument);
}

namespace {

double uniform_chi_square_p(const std::map<std::vector<unsigned>, int>& f, std::size_t cells, int draws) {
    EXPECT_EQ(f.size(), cells);
    const double e = static_cast<double>(draws) / cells;
    double chi = 0;
    for (const auto& [k, v] : f) chi += (v - e) * (v - e) / e;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(static_cast<double>(cells - 1)), chi));
}

}  // namespace

TEST(Sampler, GeometricCompositionsAreUniform) {
    for (unsigned n : {4u, 5u}) {
        RngStream rng(n);
        std::map<std::vector<unsigned>, int> f;
        const int draws = 20000 << (n - 4);
        for (int i = 0; i < draws; ++i) {
            const auto c = sample_composition_geometric(n, rng);
            EXPECT_EQ(c.n(), n);
            ++f[c.parts()];
        }
        EXPECT_GT(uniform_chi_square_p(f, std::size_t{1} << (n - 1), draws), 1e-3) << n;
    }
}

// Rejection and exact sampling give the same (uniform) law over the a_8 = 39 cells.
TEST(Sampler, RejectionMatchesExactLaw) {
    const CountTable t(8);
    ASSERT_EQ(t.total(8), 39);
    RngStream r1(31), r2(32);
    std::map<std::vector<unsigned>, int> fe, fr;
    const int draws = 39000;
    for (int i = 0; i < draws; ++i) {
        ++fe[sample_carlitz_exact(8, r1, t).parts()];
        ++fr[sample_carlitz_rejection(8, r2).composition.parts()];
    }
    EXPECT_GT(uniform_chi_square_p(fe, 39, draws), 1e-3);
    EXPECT_GT(uniform_chi_square_p(fr, 39, draws), 1e-3);
    // two-sample chi-square with equal sample sizes
    double chi = 0;
    for (const auto& [k, v] : fe) {
        const double w = fr[k];
        chi += (v - w) * (v - w) / (v + w);
    }
    EXPECT_GT(boost::math::cdf(boost::math::complement(boost::math::chi_squared(38), chi)), 1e-3);
}

TEST(Sampler, ExactCarlitzUniformChiSquare) {
    const CountTable t(5);
    RngStream rng(2024);
    std::map<std::vector<unsigned>, int> f;
    const int draws = 70000;
    for (int i = 0; i < draws; ++i) {
        const auto c = sample_carlitz_exact(5, rng, t);
        ASSERT_TRUE(is_carlitz(c));
        ++f[c.parts()];
    }
    ASSERT_EQ(f.size(), 7u);
    double chi = 0;
    for (const auto& [k, v] : f) chi += (v - draws / 7.0) * (v - draws / 7.0) / (draws / 7.0);
    const boost::math::chi_squared dist(6);
    EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi)), 1e-3);
}

TEST(Sampler, ExactGuards) {
    RngStream rng(1);
    EXPECT_THROW(sample_carlitz_exact(6, rng, CountTable(5)), std::invalid_argument);
    EXPECT_THROW(sample_carlitz_exact(4, rng, CountTable(5, 2)), std::invalid_argument);
    EXPECT_THROW(sample_carlitz_exact(0, rng, CountTable(5)), std::invalid_argument);
}

TEST(Sampler, RejectionProducesCarlitz) {
    RngStream rng(77);
    std::uint64_t attempts = 0;
    for (int i = 0; i < 500; ++i) {
        const auto d = sample_carlitz_rejection(12, rng);
        EXPECT_TRUE(is_carlitz(d.composition));
        attempts += d.attempts;
    }
    // attempts are geometric with success probability a_12 / 2^11
    const double p = static_cast<double>(count_carlitz(12)) / 2048.0;
    EXPECT_NEAR(500.0 / attempts, p, 0.05);
    EXPECT_THROW(sample_carlitz_rejection(61, rng), ResourceGuardError);
    EXPECT_THROW(sample_carlitz_rejection(60, rng, 1), ResourceGuardError);
}

TEST(Estimators, ExpectedDistinctWithinFourSigma) {
    const auto s = estimate_expected_distinct(30, 20000, 123);
    const double exact = static_cast<double>(expected_distinct_exact(30).value);
    EXPECT_LT(std::abs(s.mean - exact), 4 * s.std_error);
    EXPECT_EQ(s.trials, 20000u);
}

TEST(Estimators, Deterministic) {
    const auto a = estimate_part_count(40, 5000, 8, 4);
    const auto b = estimate_part_count(40, 5000, 8, 4);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std_error, b.std_error);
    const auto c = estimate_expected_distinct(15, 3000, 99, 2);
    const auto d = estimate_expected_distinct(15, 3000, 99, 2);
    EXPECT_EQ(c.mean, d.mean);
    EXPECT_EQ(c.std_error, d.std_error);
    EXPECT_LT(std::abs(a.mean - 20.5), 4 * a.std_error);
}

TEST(Estimators, AvoidOneAndAcceptance) {
    const auto a1 = estimate_avoid1_prob(10, 40000, 4);
    const double p1 = static_cast<double>(count_compositions_avoiding_one(10)) / 512.0;
    EXPECT_LT(std::abs(a1.mean - p1), 4 * a1.std_error);
    const auto acc = estimate_acceptance_rate(10, 40000, 4);
    const double pa = static_cast<double>(count_carlitz(10)) / 512.0;
    EXPECT_LT(std::abs(acc.mean - pa), 4 * acc.std_error);
    EXPECT_THROW(estimate_part_count(10, 99, 1), std::invalid_argument);
}

TEST(Inequalities, InequalityWindow) {
    for (double a = 0.26; a <= 0.30 + 1e-12; a += 0.005) EXPECT_TRUE(verify_appendix_inequalities(a)) << a;
    EXPECT_FALSE(verify_appendix_inequalities(0.10));
    EXPECT_FALSE(verify_appendix_inequalities(0.45));
    EXPECT_THROW(verify_appendix_inequalities(0.5), std::invalid_argument);
}

TEST(Inequalities, WindowIsOneInterval) {
    int switches = 0;
    bool prev = false, saw = false;
    for (int k = 1; k < 500; ++k) {
        const bool v = verify_appendix_inequalities(k / 1000.0);
        if (k > 1 && v != prev) ++switches;
        saw = saw || v;
        prev = v;
    }
    EXPECT_TRUE(saw);
    EXPECT_EQ(switches, 2);
}

TEST(Inequalities, AcceptanceConstantPositive) {
    const double c = acceptance_constant_estimate(60);
    EXPECT_GT(c, 0.0);
    EXPECT_LE(c, 1.0 / 0.875);
}
