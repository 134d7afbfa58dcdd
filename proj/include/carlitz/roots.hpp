#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "carlitz/precision.hpp"
#include "carlitz/types.hpp"

namespace carlitz {

namespace detail {

inline void require_unit_interval(const Real& z, bool allow_zero) {
    if (z < 0 || z >= 1 || (!allow_zero && z == 0))
        throw std::domain_error("argument must lie in " + std::string(allow_zero ? "[0, 1)" : "(0, 1)"));
}

// Smallest M with x^{M+1} / ((1 - x^{M+1})(1 - x)) below eps, estimated in double and confirmed in Real.
inline std::size_t terms_for_tail(const Real& x, const Real& eps) {
    const double xd = static_cast<double>(x);
    if (xd <= 0.0) return 1;
    const double target = static_cast<double>(boost::multiprecision::log(eps * (1 - x)));
    std::size_t m = static_cast<std::size_t>(std::max(1.0, std::ceil(target / std::log(xd))));
    for (;; m += 8) {
        const Real p = boost::multiprecision::pow(x, static_cast<long>(m + 1));
        if (p / ((1 - p) * (1 - x)) <= eps) return m;
    }
}

}  // namespace detail

// sigma(z) = sum_{m>=1} z^m/(1+z^m) for real 0 <= z < 1, summed until the
// geometric tail bound drops below the working epsilon.
inline Real sigma_eval(const Real& z, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    detail::require_unit_interval(z, true);
    if (z == 0) return Real(0);
    const std::size_t terms = detail::terms_for_tail(z, ctx.eval_eps());
    Real sum = 0, p = 1;
    for (std::size_t m = 1; m <= terms; ++m) {
        p *= z;
        sum += p / (1 + p);
    }
    return sum;
}

// sigma'(z) = sum m z^{m-1}/(1+z^m)^2, tail bounded by sum_{m>M} m z^{m-1}.
inline Real sigma_prime_eval(const Real& z, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    detail::require_unit_interval(z, true);
    if (z == 0) return Real(1);
    const Real eps = ctx.eval_eps();
    Real sum = 0, prev = 1;  // prev = z^{m-1}
    for (std::size_t m = 1;; ++m) {
        Real p = prev * z;
        Real d = 1 + p;
        sum += m * prev / (d * d);
        // sum_{k>m} k z^{k-1} = z^m ((m+1) - m z) / (1-z)^2
        const Real tail = p * ((m + 1) - m * z) / ((1 - z) * (1 - z));
        prev = std::move(p);
        if (tail <= eps) break;
    }
    return sum;
}

namespace detail {

// Root of an increasing-through-zero function on [lo, hi] with f(lo) < 0 < f(hi):
// bisection for `bisections` steps, then Newton, falling back to bisection
// whenever an iterate leaves the bracket.
template <class F, class DF>
Real solve_bracketed(F&& f, DF&& df, Real lo, Real hi, Real start, const PrecisionContext& ctx,
                     int bisections = 0) {
    const Real eps = ctx.eval_eps();
    for (int i = 0; i < bisections; ++i) {
        Real mid = (lo + hi) / 2;
        if (f(mid) < 0) lo = mid; else hi = mid;
    }
    Real x = (start > lo && start < hi) ? start : Real((lo + hi) / 2);
    for (int iter = 0; iter < 400; ++iter) {
        const Real fx = f(x);
        if (fx == 0) return x;
        if (fx < 0) lo = x; else hi = x;
        Real next = x - fx / df(x);
        if (!(next > lo && next < hi)) next = (lo + hi) / 2;
        const Real step = boost::multiprecision::abs(next - x);
        x = std::move(next);
        if (step <= eps || hi - lo <= eps) return x;
    }
    throw std::runtime_error("root iteration did not converge");
}

}  // namespace detail

// The unique root of sigma(z) = 1 on [0, 1].
inline Real find_rho(const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    const Real lo("0.5"), hi("0.6");
    auto f = [&](const Real& z) { return Real(sigma_eval(z, ctx) - 1); };
    auto df = [&](const Real& z) { return sigma_prime_eval(z, ctx); };
    if (!(f(lo) < 0 && f(hi) > 0)) throw std::logic_error("sigma(z) - 1 does not change sign on [0.5, 0.6]");
    Real rho = detail::solve_bracketed(f, df, lo, hi, Real((lo + hi) / 2), ctx, 20);
    if (boost::multiprecision::abs(f(rho)) > ctx.tol()) throw std::runtime_error("rho failed the residual check");
    return rho;
}

// The real root of sigma(z) = 1 + z^j/(1 + z^j) just above rho. Both sigma
// and the right side are increasing on (0, 1); the root lies below 0.64 for
// every j >= 2.
inline Real find_rho_j(std::size_t j, const PrecisionContext& ctx, const Real& rho) {
    if (j == 0) throw std::invalid_argument("part size j must be positive");
    PrecisionGuard guard(ctx);
    const long jl = static_cast<long>(j);
    auto g = [&](const Real& z) {
        const Real zj = boost::multiprecision::pow(z, jl);
        return Real(sigma_eval(z, ctx) - 1 - zj / (1 + zj));
    };
    auto dg = [&](const Real& z) {
        const Real zj = boost::multiprecision::pow(z, jl);
        return Real(sigma_prime_eval(z, ctx) - jl * zj / z / ((1 + zj) * (1 + zj)));
    };
    const Real lo = rho;
    const Real hi("0.663");
    if (!(g(lo) < 0 && g(hi) > 0))
        throw std::logic_error("sigma_" + std::to_string(j) + "(z) - 1 does not change sign on [rho, " +
                               to_decimal(hi, 4) + "]");
    const Real start = rho + boost::multiprecision::pow(rho, jl) / sigma_prime_eval(rho, ctx);
    Real root = detail::solve_bracketed(g, dg, lo, hi, start, ctx);
    if (boost::multiprecision::abs(g(root)) > ctx.tol()) throw std::runtime_error("rho_j failed the residual check");
    return root;
}

inline Real find_rho_j(std::size_t j, const PrecisionContext& ctx) { return find_rho_j(j, ctx, find_rho(ctx)); }

// sigma_j'(z) = sigma'(z) - j z^{j-1}/(1+z^j)^2.
inline Real sigma_j_prime_eval(std::size_t j, const Real& z, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    const long jl = static_cast<long>(j);
    const Real zj = boost::multiprecision::pow(z, jl);
    return sigma_prime_eval(z, ctx) - jl * boost::multiprecision::pow(z, jl - 1) / ((1 + zj) * (1 + zj));
}

// A_j = -1/sigma_j'(rho_j), the residue of 1/(1 - sigma_j) at rho_j.
inline Real residue_Aj(std::size_t j, const PrecisionContext& ctx, const Real& rho_j) {
    PrecisionGuard guard(ctx);
    return -1 / sigma_j_prime_eval(j, rho_j, ctx);
}

inline Real residue_Aj(std::size_t j, const PrecisionContext& ctx) { return residue_Aj(j, ctx, find_rho_j(j, ctx)); }

// Dominant singularity data shared by the asymptotic routines.
struct SingularityData {
    Real rho;
    Real sigma_prime_rho;
    Real alpha;
    std::map<std::size_t, Real> rho_j;
    std::map<std::size_t, Real> residue_j;
};

inline SingularityData analyze_singularities(const PrecisionContext& ctx, const std::vector<std::size_t>& js = {}) {
    PrecisionGuard guard(ctx);
    SingularityData s;
    s.rho = find_rho(ctx);
    s.sigma_prime_rho = sigma_prime_eval(s.rho, ctx);
    s.alpha = 1 / s.sigma_prime_rho;
    for (std::size_t j : js) {
        Real r = find_rho_j(j, ctx, s.rho);
        s.residue_j[j] = residue_Aj(j, ctx, r);
        s.rho_j[j] = std::move(r);
    }
    return s;
}

// Leading term (1/sigma'(rho)) rho^{-(n+1)} of a_n.
inline Real asymptotic_an(std::size_t n, const PrecisionContext& ctx, const SingularityData& s) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    PrecisionGuard guard(ctx);
    return s.alpha / boost::multiprecision::pow(s.rho, static_cast<long>(n + 1));
}

inline Real asymptotic_an(std::size_t n, const PrecisionContext& ctx) {
    return asymptotic_an(n, ctx, analyze_singularities(ctx));
}

// Leading term (-A_j/rho_j) rho_j^{-n} of a_{n,j}. For j > n the exact ratio
// a_{n,j}/a_n is 1 while this term stays below a_n; the formula is only
// meaningful for n large compared to j.
inline Real asymptotic_anj(std::size_t n, std::size_t j, const PrecisionContext& ctx, const Real& rho_j,
                           const Real& residue) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    if (j == 0) throw std::invalid_argument("part size j must be positive");
    PrecisionGuard guard(ctx);
    return -residue / rho_j / boost::multiprecision::pow(rho_j, static_cast<long>(n));
}

inline Real asymptotic_anj(std::size_t n, std::size_t j, const PrecisionContext& ctx) {
    const Real r = find_rho_j(j, ctx);
    return asymptotic_anj(n, j, ctx, r, residue_Aj(j, ctx, r));
}

}  // namespace carlitz
