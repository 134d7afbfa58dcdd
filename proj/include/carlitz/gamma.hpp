#pragma once

#include <cmath>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "carlitz/complex.hpp"
#include "carlitz/precision.hpp"
#include "carlitz/types.hpp"

namespace carlitz {

namespace detail {

// B_0, B_2, B_4, ... as exact rationals, from sum_{k=0}^{m} C(m+1,k) B_k = 0.
inline const Rational& bernoulli_even(std::size_t k) {
    static std::mutex mu;
    static std::vector<Rational> all{Rational(1)};  // B_0, B_1, B_2, ...
    std::lock_guard<std::mutex> lock(mu);
    const std::size_t want = 2 * k;
    while (all.size() <= want) {
        const std::size_t m = all.size();
        // B_m = -1/(m+1) sum_{i<m} C(m+1, i) B_i
        Rational acc(0);
        BigInt binom(1);  // C(m+1, 0)
        for (std::size_t i = 0; i < m; ++i) {
            acc += Rational(binom) * all[i];
            binom = binom * (m + 1 - i) / (i + 1);
        }
        all.push_back(-acc / Rational(static_cast<long>(m + 1)));
    }
    return all[want];
}

}  // namespace detail

// Gamma(z) at the current default precision.
//
// Re z < 1/2 goes through the reflection formula. Otherwise z is shifted by an
// integer K so that Re(z+K) >= D, where the Stirling series for log Gamma is
// summed until its terms fall below 2^-bits; the terms of that asymptotic
// series first decrease for k < pi*|w|, and D is chosen so the smallest term
// (about e^{-2 pi D}) is already negligible.
inline ComplexReal complex_gamma(const ComplexReal& z) {
    using boost::multiprecision::floor;
    const Real pi = boost::math::constants::pi<Real>();
    if (z.im == 0 && z.re <= 0 && floor(z.re) == z.re) throw std::domain_error("Gamma has a pole at this argument");

    if (z.re < Real(0.5)) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        const ComplexReal s = sin(ComplexReal(pi * z.re, pi * z.im));
        return ComplexReal(pi) / (s * complex_gamma(ComplexReal(1 - z.re, -z.im)));
    }

    const unsigned bits = static_cast<unsigned>(std::ceil(Real::default_precision() * 3.3219280948873623));
    const double threshold = bits * 0.6931471805599453 / (2 * std::numbers::pi) + 4.0;

    ComplexReal w = z;
    ComplexReal shift(Real(1));
    while (w.re < threshold) {
        shift *= w;
        w.re += 1;
    }

    // 24 spare bits absorb the sec^{2k}(arg(w)/2) factor of the remainder bound.
    const Real eps = boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits) - 24);
    const ComplexReal logw = log(w);
    ComplexReal acc = (w - ComplexReal(Real(0.5))) * logw - w + ComplexReal(Real(log(2 * pi) / 2));
    const ComplexReal w2 = w * w;
    ComplexReal wpow = w;  // w^{2k-1}
    for (std::size_t k = 1;; ++k) {
        const Real coeff = to_real(detail::bernoulli_even(k)) / Real((2 * k) * (2 * k - 1));
        const ComplexReal term = ComplexReal(coeff) / wpow;
        acc += term;
        if (abs(term) < eps) break;
        if (k > 4 * bits) throw std::runtime_error("Stirling series failed to converge");
        wpow *= w2;
    }
    return exp(acc) / shift;
}

inline ComplexReal complex_gamma(const ComplexReal& z, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    return complex_gamma(z);
}

}  // namespace carlitz
