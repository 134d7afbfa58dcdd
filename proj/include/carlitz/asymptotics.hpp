#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "carlitz/complex.hpp"
#include "carlitz/gamma.hpp"
#include "carlitz/precision.hpp"
#include "carlitz/roots.hpp"
#include "carlitz/types.hpp"

namespace carlitz {

inline constexpr unsigned kDefaultFourierCutoff = 10;

struct AsymptoticParams {
    PrecisionContext ctx;
    Real rho;
    Real L;  // ln(1/rho)
    Real sigma_prime_rho;
    Real alpha;  // 1/sigma'(rho)
    Real euler_gamma;
    unsigned fourier_cutoff = kDefaultFourierCutoff;
};

inline AsymptoticParams make_asymptotic_params(const PrecisionContext& ctx,
                                               unsigned fourier_cutoff = kDefaultFourierCutoff) {
    PrecisionGuard guard(ctx);
    AsymptoticParams p{ctx, find_rho(ctx), {}, {}, {}, {}, fourier_cutoff};
    p.L = -boost::multiprecision::log(p.rho);
    p.sigma_prime_rho = sigma_prime_eval(p.rho, ctx);
    p.alpha = 1 / p.sigma_prime_rho;
    p.euler_gamma = boost::math::constants::euler<Real>();
    return p;
}

struct FourierCoefficient {
    long ell = 0;
    ComplexReal value;
};

// c_l = Gamma(-2 pi i l / L) / L, l != 0.
inline FourierCoefficient fourier_coeff(long ell, const AsymptoticParams& p) {
    if (ell == 0) throw std::invalid_argument("h0 has mean zero: there is no l = 0 coefficient");
    PrecisionGuard guard(p.ctx);
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    const ComplexReal g = complex_gamma(ComplexReal(Real(0), Real(-two_pi * ell / p.L)));
    return {ell, ComplexReal(g.re / p.L, g.im / p.L)};
}

struct FluctuationValue {
    Real value;
    Real imaginary_residue;  // |Im| of the partial sum, zero up to rounding
};

// The period-1, mean-zero fluctuation h0(x) = sum_{0<|l|<=cutoff} c_l e^{2 pi i l x}.
// Both c_l and c_{-l} are computed, so the vanishing imaginary part is a
// genuine check rather than an assumption.
class Fluctuation {
public:
    explicit Fluctuation(const AsymptoticParams& p) : ctx_(p.ctx) {
        PrecisionGuard guard(ctx_);
        for (long l = 1; l <= static_cast<long>(p.fourier_cutoff); ++l) {
            pos_.push_back(fourier_coeff(l, p));
            neg_.push_back(fourier_coeff(-l, p));
        }
    }

    const std::vector<FourierCoefficient>& positive() const noexcept { return pos_; }
    const std::vector<FourierCoefficient>& negative() const noexcept { return neg_; }

    FluctuationValue evaluate(const Real& x) const {
        PrecisionGuard guard(ctx_);
        const Real frac = x - boost::multiprecision::floor(x);
        const Real two_pi = 2 * boost::math::constants::pi<Real>();
        ComplexReal sum;
        for (std::size_t i = 0; i < pos_.size(); ++i) {
            const Real theta = two_pi * pos_[i].ell * frac;
            const ComplexReal e = exp(ComplexReal(Real(0), theta));
            sum += pos_[i].value * e + neg_[i].value * conj(e);
        }
        return {sum.re, boost::multiprecision::abs(sum.im)};
    }

    Real operator()(const Real& x) const { return evaluate(x).value; }

    // 2 sum_{l>=1} |c_l|, a bound for sup |h0|.
    Real amplitude_bound() const {
        PrecisionGuard guard(ctx_);
        Real s = 0;
        for (const auto& c : pos_) s += abs(c.value);
        return 2 * s;
    }

private:
    PrecisionContext ctx_;
    std::vector<FourierCoefficient> pos_;
    std::vector<FourierCoefficient> neg_;
};

inline Real h0(const Real& x, const AsymptoticParams& p) { return Fluctuation(p)(x); }

// Leading term u = ln(n/sigma'(rho))/L; the fluctuation is evaluated at frac(u).
inline Real leading_log_term(std::size_t n, const AsymptoticParams& p) {
    PrecisionGuard guard(p.ctx);
    return boost::multiprecision::log(Real(n) / p.sigma_prime_rho) / p.L;
}

// E[D_n] ~ u + 1/2 + gamma/L + h0(frac(u)). The constant carries +gamma/L: it
// is the Mellin residue at s = 0 of sum_j (1 - exp(-x rho^j)) and the sign
// that agrees with the exact expectations.
inline Real expected_distinct_asymptotic(std::size_t n, const AsymptoticParams& p, const Fluctuation& h) {
    if (n < 2) throw std::invalid_argument("the asymptotic form needs n >= 2");
    PrecisionGuard guard(p.ctx);
    const Real u = leading_log_term(n, p);
    return u + Real(0.5) + p.euler_gamma / p.L + h(u);
}

inline Real expected_distinct_asymptotic(std::size_t n, const AsymptoticParams& p) {
    return expected_distinct_asymptotic(n, p, Fluctuation(p));
}

// sum_{j>=0} (1 - (1 - alpha rho^j)^n), truncated once the remaining terms,
// each at most n alpha rho^j, sum to at most eps.
inline Real tail_series_value(std::size_t n, const AsymptoticParams& p, const Real& eps) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    PrecisionGuard guard(p.ctx);
    const Real N(n);
    Real sum = 0;
    Real x = p.alpha;  // alpha rho^j
    for (;;) {
        if (N * x / (1 - p.rho) <= eps) break;
        sum -= boost::multiprecision::expm1(N * boost::multiprecision::log1p(-x));
        x *= p.rho;
    }
    return sum;
}

inline Real tail_series_value(std::size_t n, const AsymptoticParams& p) {
    PrecisionGuard guard(p.ctx);
    return tail_series_value(n, p, Real(p.ctx.eval_eps()));
}

struct TheoremConstants {
    Real C1;                // 1/L
    Real C2;                // (ln sigma'(rho) - gamma)/L - 1/2, so E D_n = C1 ln n - C2 + h0 + o(1)
    Real C2_gamma_flipped;  // (ln sigma'(rho) + gamma)/L - 1/2, the constant with the opposite gamma sign
    Real amplitude_bound;   // 2 sum_{l>=1} |c_l|
    Real cutoff_tail_bound; // bound on 2 sum_{l>cutoff} |c_l|
};

inline TheoremConstants constants(const AsymptoticParams& p, const Fluctuation& h) {
    PrecisionGuard guard(p.ctx);
    TheoremConstants c;
    const Real lsp = boost::multiprecision::log(p.sigma_prime_rho);
    c.C1 = 1 / p.L;
    c.C2 = (lsp - p.euler_gamma) / p.L - Real(0.5);
    c.C2_gamma_flipped = (lsp + p.euler_gamma) / p.L - Real(0.5);
    c.amplitude_bound = h.amplitude_bound();
    // |Gamma(it)|^2 = pi/(t sinh(pi t)) <= 2.01 pi e^{-pi t}/t for t >= 1, so
    // |c_l| decays at least geometrically with ratio q = e^{-2 pi^2 / L}.
    const Real pi = boost::math::constants::pi<Real>();
    const Real t = 2 * pi * (p.fourier_cutoff + 1) / p.L;
    const Real first = boost::multiprecision::sqrt(Real("2.01") * pi / t) * boost::multiprecision::exp(-pi * t / 2) / p.L;
    const Real q = boost::multiprecision::exp(-pi * pi / p.L);
    c.cutoff_tail_bound = 2 * first / (1 - q);
    return c;
}

inline TheoremConstants constants(const AsymptoticParams& p) { return constants(p, Fluctuation(p)); }

}  // namespace carlitz
