#include <gtest/gtest.h>

#include "carlitz/asymptotics.hpp"
#include "carlitz/core.hpp"

using namespace carlitz;

namespace {

Real abs_diff(const Real& a, const Real& b) { return boost::multiprecision::abs(Real(a - b)); }

const AsymptoticParams& params() {
    static const AsymptoticParams p = make_asymptotic_params(PrecisionContext(256));
    return p;
}

}  // namespace

TEST(Params, Constants) {
    const auto& p = params();
    PrecisionGuard g(p.ctx);
    // mpmath at 40 digits
    EXPECT_LT(abs_diff(p.L, Real("0.5597536594126046467020852989216722959818")), Real("1e-38"));
    EXPECT_LT(abs_diff(p.alpha, Real("0.2607431765084093030972637")), Real("1e-24"));
    EXPECT_LT(abs_diff(p.euler_gamma, Real("0.5772156649015328606065120900824024310422")), Real("1e-38"));
}

TEST(Fourier, FirstCoefficient) {
    const auto& p = params();
    PrecisionGuard g(p.ctx);
    const auto c = fourier_coeff(1, p);
    EXPECT_LT(abs_diff(c.value.re, Real("-2.456282284470424209774232940221758265146e-8")), Real("1e-45"));
    EXPECT_LT(abs_diff(c.value.im, Real("-1.617510548029272971791098854036555221658e-8")), Real("1e-45"));
    const auto cm = fourier_coeff(-1, p);
    EXPECT_LT(abs(cm.value - conj(c.value)), Real("1e-70"));
    EXPECT_THROW(fourier_coeff(0, p), std::invalid_argument);
}

TEST(Fourier, RapidDecay) {
    const auto& p = params();
    PrecisionGuard g(p.ctx);
    const Fluctuation h(p);
    const auto& pos = h.positive();
    ASSERT_EQ(pos.size(), 10u);
    // |c_2/c_1| = 1.5559e-8 (mpmath)
    EXPECT_NEAR(static_cast<double>(abs(pos[1].value) / abs(pos[0].value)), 1.5559e-8, 1e-11);
    for (std::size_t i = 1; i < pos.size(); ++i) EXPECT_LT(abs(pos[i].value), abs(pos[i - 1].value) * Real("1e-7"));
}

// h0 is real, has period 1 and mean zero, and stays below its amplitude bound.
TEST(Fluctuation, Properties) {
    const auto& p = params();
    PrecisionGuard g(p.ctx);
    const Fluctuation h(p);
    const Real bound = h.amplitude_bound();
    EXPECT_NEAR(static_cast<double>(bound), 5.88206198646e-8, 1e-18);
    Real mean = 0;
    const int samples = 64;
    for (int k = 0; k < samples; ++k) {
        const Real x = Real(k) / samples;
        const auto v = h.evaluate(x);
        EXPECT_LT(v.imaginary_residue, Real("1e-70"));
        EXPECT_LE(boost::multiprecision::abs(v.value), bound);
        EXPECT_LT(abs_diff(h(x + 3), v.value), Real("1e-70"));
        EXPECT_LT(abs_diff(h(x - 2), v.value), Real("1e-70"));
        mean += v.value;
    }
    EXPECT_LT(boost::multiprecision::abs(mean / samples), Real("1e-60"));
}

TEST(Constants, Values) {
    const auto& p = params();
    PrecisionGuard g(p.ctx);
    const auto c = constants(p);
    EXPECT_LT(abs_diff(c.C1, Real("1.786500156246199248514098")), Real("1e-23"));
    EXPECT_LT(abs_diff(c.C2, Real("0.8702522106934791342658564")), Real("1e-23"));
    EXPECT_LT(abs_diff(c.C2_gamma_flipped, Real("2.932643961762163620349822")), Real("1e-23"));
    EXPECT_LT(c.cutoff_tail_bound, Real("1e-80"));
}

TEST(Asymptotic, FormAndGuards) {
    const auto& p = params();
    PrecisionGuard g(p.ctx);
    EXPECT_THROW(expected_distinct_asymptotic(1, p), std::invalid_argument);
    const auto c = constants(p);
    const Real n(1000);
    const Real smooth = c.C1 * boost::multiprecision::log(n) - c.C2;
    EXPECT_LT(abs_diff(expected_distinct_asymptotic(1000, p), smooth), c.amplitude_bound);
}

// err(n) against the exact expectation shrinks along a doubling grid, for both
// the theorem form and the tail series.
TEST(Asymptotic, ConvergesToExact) {
    const auto& p = params();
    PrecisionGuard g(p.ctx);
    const Fluctuation h(p);
    Real prev_thm(100), prev_tail(100);
    for (std::size_t n : {25, 50, 100, 200}) {
        const Real exact = to_real(expected_distinct_exact(n).value);
        const Real e_thm = abs_diff(exact, expected_distinct_asymptotic(n, p, h));
        const Real e_tail = abs_diff(exact, tail_series_value(n, p));
        EXPECT_LT(e_thm, prev_thm) << n;
        EXPECT_LT(e_tail, prev_tail) << n;
        prev_thm = e_thm;
        prev_tail = e_tail;
    }
    EXPECT_LT(prev_thm, Real("0.03"));
}

TEST(TailSeries, ReferenceValues) {
    const auto& p = params();
    PrecisionGuard g(p.ctx);
    // mpmath: sum_j 1 - (1 - alpha rho^j)^n
    EXPECT_NEAR(static_cast<double>(tail_series_value(400, p)), 9.8357322785, 1e-9);
    EXPECT_NEAR(static_cast<double>(tail_series_value(50, p)), 6.1364, 1e-4);
    EXPECT_THROW(tail_series_value(0, p), std::invalid_argument);
}

TEST(TailSeries, ApproachesTheoremForm) {
    const auto& p = params();
    PrecisionGuard g(p.ctx);
    const Fluctuation h(p);
    const Real d = abs_diff(tail_series_value(100000, p), expected_distinct_asymptotic(100000, p, h));
    EXPECT_LT(d, Real("1e-3"));
}

TEST(Asymptotic, TheoremFormIdentity) {
    const auto& p = params();
    PrecisionGuard g(p.ctx);
    const Fluctuation h(p);
    const auto c = constants(p, h);
    for (std::size_t n : {2, 7, 50, 1000, 123456}) {
        const Real u = leading_log_term(n, p);
        const Real rest = expected_distinct_asymptotic(n, p, h) - (c.C1 * boost::multiprecision::log(Real(n)) - c.C2);
        EXPECT_LT(abs_diff(rest, h(u)), Real("1e-20")) << n;
    }
}

TEST(Fluctuation, CutoffInsensitive) {
    const auto& p = params();
    PrecisionGuard g(p.ctx);
    AsymptoticParams p20 = p;
    p20.fourier_cutoff = 20;
    const Fluctuation h10(p), h20(p20);
    for (int k = 0; k < 16; ++k) {
        const Real x = Real(k) / 16 + Real("0.01");
        EXPECT_LT(abs_diff(h10(x), h20(x)), Real("1e-30"));
        EXPECT_LT(h20.evaluate(x).imaginary_residue, Real("1e-25"));
    }
}
