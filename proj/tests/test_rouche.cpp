#include <gtest/gtest.h>

#include "carlitz/rouche.hpp"

using namespace carlitz;

TEST(Rouche, PresetJ6) {
    const auto reps = rouche_verify_preset(RouchePreset::j6);
    ASSERT_EQ(reps.size(), 1u);
    const auto& r = reps[0];
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.f_root_count, 1);
    EXPECT_GE(r.certified_min_f, 0.28);
    EXPECT_LE(r.max_g_bound, 0.27);
    // mpmath: |f(0.663)| = 0.2834670004, the minimum on the circle
    EXPECT_NEAR(r.observed_min_f, 0.2834670004, 1e-9);
    EXPECT_NEAR(r.observed_min_at.real(), 0.663, 1e-12);
    EXPECT_EQ(r.j_range(), "[6, inf)");
}

TEST(Rouche, PresetJ2) {
    const auto r = rouche_verify_preset(RouchePreset::j2).at(0);
    EXPECT_TRUE(r.passed);
    EXPECT_GE(r.certified_min_f, 0.06);
    EXPECT_LE(r.max_g_bound, 0.016);
    // numpy scan, 20001 points on the half circle
    EXPECT_NEAR(r.observed_min_f, 0.239907, 1e-4);
    EXPECT_EQ(r.j_range(), "{2}");
}

TEST(Rouche, PresetJ345) {
    const auto reps = rouche_verify_preset(RouchePreset::j345);
    ASSERT_EQ(reps.size(), 3u);
    const double min_f[] = {0.59629, 0.37270, 0.37142};
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_TRUE(reps[i].passed) << i;
        EXPECT_NEAR(reps[i].observed_min_f, min_f[i], 1e-4) << i;
        EXPECT_NEAR(reps[i].max_g_bound, 0.17639, 1e-5);
    }
}

TEST(Rouche, CoarseGridFailsAndReportsStep) {
    const auto r = rouche_verify(RoucheSplit{0.8, 25, 2, true}, 0.01);
    EXPECT_FALSE(r.passed);
    ASSERT_TRUE(r.required_step.has_value());
    EXPECT_LT(*r.required_step, 0.01);
    const auto ok = rouche_verify(RoucheSplit{0.8, 25, 2, true}, *r.required_step * 0.9);
    EXPECT_TRUE(ok.passed);
}

TEST(Rouche, TooFewTermsFails) {
    // With 2 terms the tail bound on r = 0.663 exceeds min |f|.
    const auto r = rouche_verify(0.663, 2, 6);
    EXPECT_FALSE(r.passed);
    EXPECT_GT(r.max_g_bound, r.certified_min_f);
}

TEST(Rouche, Guards) {
    EXPECT_THROW(rouche_verify(1.0, 6, 6), std::invalid_argument);
    EXPECT_THROW(rouche_verify(0.5, 0, 6), std::invalid_argument);
    EXPECT_THROW(parse_rouche_preset("j7"), std::invalid_argument);
    EXPECT_THROW(rouche_verify(RoucheSplit{0.8, 25, 2, true}, 1e-9), ResourceGuardError);
}

TEST(Rouche, TruncatedF2Root) {
    // The 25-term f_2 has its real root within 5e-6 of rho_2 = 0.6353378 (mpmath).
    EXPECT_NEAR(rouche_f_real_root(RoucheSplit{0.8, 25, 2, true}), 0.635342276301, 1e-11);
}

TEST(RootCount, KnownCounts) {
    EXPECT_EQ(count_roots_in_disc(2, 0.8).roots, 1);
    EXPECT_EQ(count_roots_in_disc(6, 0.663).roots, 1);
    EXPECT_EQ(count_roots_in_disc(3, 0.75).roots, 1);
    // independent winding computations (mpmath)
    EXPECT_EQ(count_roots_in_disc(1, 0.663).roots, 1);
    EXPECT_EQ(count_roots_in_disc(1, 0.8).roots, 1);
    EXPECT_EQ(count_roots_in_disc(2, 0.95).roots, 13);
}

TEST(RootCount, Guards) {
    EXPECT_THROW(count_roots_in_disc(0, 0.5), std::invalid_argument);
    EXPECT_THROW(count_roots_in_disc(2, 1.2), std::invalid_argument);
    // the circle through rho_2 itself
    EXPECT_THROW(count_roots_in_disc(2, 0.6353377967), VerificationError);
}

// Whenever a Rouche split certifies, the argument principle finds one root.
TEST(RootCount, ConsistentWithRouche) {
    for (RouchePreset p : {RouchePreset::j6, RouchePreset::j2, RouchePreset::j345})
        for (const auto& s : preset_splits(p)) {
            ASSERT_TRUE(rouche_verify(s).passed);
            for (unsigned j = s.j; j <= (s.j_in_f ? s.j : 12u); ++j)
                EXPECT_EQ(count_roots_in_disc(j, s.radius).roots, 1) << j << " " << s.radius;
        }
}
