#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "carlitz/types.hpp"

namespace carlitz {

// Certification on circles |z| = r. Values are computed in double precision;
// the margins being certified (>= 1e-3) dwarf the rounding error, for which
// an explicit allowance of kRoundingSlack is subtracted anyway.
inline constexpr double kRoundingSlack = 1e-12;

using cplx = std::complex<double>;

// Splitting of sigma_j(z) - 1 = f(z) + g(z) on |z| = radius:
//   f(z) = sum_{m=1}^{split_terms} z^m/(1+z^m) - 1 [ - z^j/(1+z^j) if j_in_f ]
//   g(z) = sum_{m>split_terms} z^m/(1+z^m)       [ - z^j/(1+z^j) unless j_in_f ]
// With j_in_f unset, g covers every j >= j.
struct RoucheSplit {
    double radius;
    unsigned split_terms;
    unsigned j;
    bool j_in_f;
};

struct RoucheReport {
    double radius = 0;
    unsigned split_terms = 0;
    unsigned j = 0;                  // j_min when !j_in_f, else the single j
    bool j_in_f = false;
    double certified_min_f = 0;      // lower bound for min |f| on the circle
    double observed_min_f = 0;       // smallest sampled |f|
    cplx observed_min_at;            // where it was attained
    double max_g_bound = 0;          // upper bound for |g| on the circle
    std::size_t grid_points = 0;     // samples on the closed upper half circle
    double grid_step = 0;            // arc length between samples
    double lipschitz_bound = 0;
    long f_root_count = 0;           // winding number of f around 0
    std::optional<double> required_step;  // set when the grid was too coarse
    bool passed = false;

    double margin() const { return certified_min_f - max_g_bound; }
    std::string j_range() const {
        return j_in_f ? "{" + std::to_string(j) + "}" : "[" + std::to_string(j) + ", inf)";
    }
};

namespace detail {

inline cplx rouche_f(const RoucheSplit& s, cplx z) {
    cplx sum = -1.0, p = 1.0;
    for (unsigned m = 1; m <= s.split_terms; ++m) {
        p *= z;
        sum += p / (1.0 + p);
    }
    if (s.j_in_f) {
        const cplx zj = std::pow(z, static_cast<int>(s.j));
        sum -= zj / (1.0 + zj);
    }
    return sum;
}

// Sum over m of sup |d/dz z^m/(1+z^m)| on the circle, plus the j-term when it belongs to f.
inline double rouche_termwise_lipschitz(const RoucheSplit& s) {
    const double r = s.radius;
    double c = 0;
    for (unsigned m = 1; m <= s.split_terms; ++m) {
        const double rm = std::pow(r, m);
        c += m * rm / r / ((1 - rm) * (1 - rm));
    }
    if (s.j_in_f) {
        const double rj = std::pow(r, s.j);
        c += s.j * rj / r / ((1 - rj) * (1 - rj));
    }
    return c;
}

inline double kernel_tail_bound(double r, unsigned after) {
    const double p = std::pow(r, after + 1);
    return p / ((1 - p) * (1 - r));
}

struct CircleScan {
    double min_modulus = 0;
    cplx min_at;
    double arg_change = 0;  // total argument change over the upper half circle
};

// Samples F on the closed upper half circle at `points` equally spaced angles.
template <class F>
CircleScan scan_upper_half(F&& func, double radius, std::size_t points) {
    CircleScan out;
    out.min_modulus = INFINITY;
    cplx prev{};
    for (std::size_t k = 0; k < points; ++k) {
        const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(points - 1);
        const cplx z = std::polar(radius, theta);
        const cplx v = func(z);
        const double a = std::abs(v);
        if (a < out.min_modulus) {
            out.min_modulus = a;
            out.min_at = z;
        }
        if (k > 0) out.arg_change += std::arg(v / prev);
        prev = v;
    }
    return out;
}

inline std::size_t points_for_step(double radius, double step) {
    return static_cast<std::size_t>(std::ceil(std::numbers::pi * radius / step)) + 1;
}

}  // namespace detail

// Rouche certification: min |f| on the circle is bounded below by the sampled
// minimum minus lipschitz * step, and compared with the geometric-tail bound
// on |g|. `grid_step` is the arc length between samples; 0 picks a step whose
// slack is 0.5% of a coarse estimate of min |f|. Real coefficients give
// f(conj z) = conj f(z), so only the upper half circle is sampled.
inline RoucheReport rouche_verify(const RoucheSplit& split, double grid_step = 0.0) {
    if (!(split.radius > 0 && split.radius < 1)) throw std::invalid_argument("radius must lie in (0, 1)");
    if (split.split_terms < 1) throw std::invalid_argument("split must keep at least one term");
    if (split.j < 1) throw std::invalid_argument("j must be positive");
    const double r = split.radius;

    RoucheReport rep;
    rep.radius = r;
    rep.split_terms = split.split_terms;
    rep.j = split.j;
    rep.j_in_f = split.j_in_f;
    rep.lipschitz_bound = std::max(std::pow(1 - r, -4), detail::rouche_termwise_lipschitz(split));
    rep.max_g_bound = detail::kernel_tail_bound(r, split.split_terms);
    if (!split.j_in_f) {
        const double rj = std::pow(r, split.j);
        rep.max_g_bound += rj / (1 - rj);
    }

    auto f = [&](cplx z) { return detail::rouche_f(split, z); };
    if (grid_step <= 0) {
        const auto coarse = detail::scan_upper_half(f, r, 4097);
        grid_step = 0.005 * coarse.min_modulus / rep.lipschitz_bound;
    }
    const std::size_t points = detail::points_for_step(r, grid_step);
    if (points > (std::size_t{1} << 27)) throw ResourceGuardError("Rouche grid would need more than 2^27 points");
    rep.grid_points = points;
    rep.grid_step = std::numbers::pi * r / static_cast<double>(points - 1);

    const auto scan = detail::scan_upper_half(f, r, points);
    rep.observed_min_f = scan.min_modulus;
    rep.observed_min_at = scan.min_at;
    rep.certified_min_f = scan.min_modulus - rep.lipschitz_bound * rep.grid_step - kRoundingSlack;
    // With |f| > lipschitz * step at every sample, each half-step keeps f in a
    // half plane, so summed principal arguments give the exact winding.
    if (rep.certified_min_f > 0) rep.f_root_count = std::lround(scan.arg_change / std::numbers::pi);
    rep.passed = rep.certified_min_f > rep.max_g_bound && rep.f_root_count == 1;
    if (!rep.passed && rep.observed_min_f > rep.max_g_bound)
        rep.required_step = (rep.observed_min_f - rep.max_g_bound - kRoundingSlack) / rep.lipschitz_bound;
    return rep;
}

inline RoucheReport rouche_verify(double radius, unsigned split_terms, unsigned j_min, double grid_step = 0.0) {
    return rouche_verify(RoucheSplit{radius, split_terms, j_min, false}, grid_step);
}

enum class RouchePreset { j6, j2, j345 };

inline RouchePreset parse_rouche_preset(const std::string& name) {
    if (name == "j6") return RouchePreset::j6;
    if (name == "j2") return RouchePreset::j2;
    if (name == "j345") return RouchePreset::j345;
    throw std::invalid_argument("unknown Rouche preset '" + name + "' (expected j6, j2 or j345)");
}

inline std::vector<RoucheSplit> preset_splits(RouchePreset p) {
    switch (p) {
        case RouchePreset::j6: return {{0.663, 6, 6, false}};
        case RouchePreset::j2: return {{0.8, 25, 2, true}};
        case RouchePreset::j345: return {{0.75, 10, 3, true}, {0.75, 10, 4, true}, {0.75, 10, 5, true}};
    }
    return {};
}

inline std::vector<RoucheReport> rouche_verify_preset(RouchePreset p, double grid_step = 0.0) {
    std::vector<RoucheReport> out;
    for (const auto& s : preset_splits(p)) out.push_back(rouche_verify(s, grid_step));
    return out;
}

// Real root of the split function f inside the disc (bisection in double).
// For the j = 2 preset this is the root of the 25-term truncation f_2.
inline double rouche_f_real_root(const RoucheSplit& split) {
    auto f = [&](double x) { return detail::rouche_f(split, cplx(x, 0)).real(); };
    double lo = 0.0, hi = split.radius;
    if (!(f(lo) < 0 && f(hi) > 0)) throw std::logic_error("f has no sign change on [0, radius]");
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace detail {

// 1 - sigma_j(z) with the kernel truncated where its tail drops below 1e-15.
struct OneMinusSigmaJ {
    unsigned j;
    unsigned terms;
    cplx operator()(cplx z) const {
        cplx sum = 0.0, p = 1.0;
        for (unsigned m = 1; m <= terms; ++m) {
            p *= z;
            sum += p / (1.0 + p);
        }
        const cplx zj = std::pow(z, static_cast<int>(j));
        return 1.0 - (sum - zj / (1.0 + zj));
    }
};

}  // namespace detail

struct RootCountReport {
    unsigned j = 0;
    double radius = 0;
    long roots = 0;
    double min_modulus = 0;
    double lipschitz_bound = 0;
    std::size_t grid_points = 0;
};

// Number of roots of sigma_j(z) = 1 in |z| < radius by the argument principle.
// Samples are dense enough that |F| > lipschitz * step at every node, which
// rules out zeros on the circle and makes the summed argument exact. Replaces
// the symbolic polynomial route.
inline RootCountReport count_roots_in_disc(unsigned j, double radius) {
    if (j < 1) throw std::invalid_argument("j must be positive");
    if (!(radius > 0 && radius < 1)) throw std::invalid_argument("radius must lie in (0, 1)");
    unsigned terms = 1;
    while (detail::kernel_tail_bound(radius, terms) > 1e-15) ++terms;
    const detail::OneMinusSigmaJ F{j, terms};

    double lip = 0;
    for (unsigned m = 1; m <= terms; ++m) {
        const double rm = std::pow(radius, m);
        lip += m * rm / radius / ((1 - rm) * (1 - rm));
    }
    const double rj = std::pow(radius, j);
    lip += j * rj / radius / ((1 - rj) * (1 - rj));

    RootCountReport rep{j, radius, 0, 0, lip, 0};
    const auto coarse = detail::scan_upper_half(F, radius, 4097);
    if (coarse.min_modulus < 1e-9)
        throw VerificationError("1 - sigma_" + std::to_string(j) + " nearly vanishes on |z| = " +
                                std::to_string(radius) + "; try a slightly perturbed radius");
    const double step = 0.5 * coarse.min_modulus / lip;
    const std::size_t points = detail::points_for_step(radius, step);
    if (points > (std::size_t{1} << 26))
        throw VerificationError("circle |z| = " + std::to_string(radius) +
                                " passes too close to a root; try a slightly perturbed radius");
    const auto scan = detail::scan_upper_half(F, radius, points);
    const double h = std::numbers::pi * radius / static_cast<double>(points - 1);
    // The dropped kernel tail is below 1e-15, so by Rouche the truncated and
    // the full function have the same zeros inside once this margin holds.
    if (!(scan.min_modulus - lip * h > 1e-15 + kRoundingSlack))
        throw VerificationError("could not separate |z| = " + std::to_string(radius) +
                                " from the roots; try a slightly perturbed radius");
    rep.min_modulus = scan.min_modulus;
    rep.grid_points = points;
    rep.roots = std::lround(scan.arg_change / std::numbers::pi);
    return rep;
}

}  // namespace carlitz
