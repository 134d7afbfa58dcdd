#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "carlitz/complex.hpp"
#include "carlitz/core.hpp"
#include "carlitz/types.hpp"

namespace carlitz {

inline constexpr std::size_t kDefaultSeriesOrder = 300;

// Coefficients 0..N of a formal power series. Binary operations truncate to
// the smaller of the two orders.
template <class Coeff>
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t order) : c_(order + 1, Coeff(0)) {}
    explicit TruncatedSeries(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("a truncated series needs at least the constant term");
    }

    std::size_t order() const noexcept { return c_.size() - 1; }
    const std::vector<Coeff>& coeffs() const noexcept { return c_; }
    const Coeff& operator[](std::size_t i) const { return c_.at(i); }
    Coeff& operator[](std::size_t i) { return c_.at(i); }

    TruncatedSeries truncated(std::size_t order) const {
        if (order > this->order()) throw std::invalid_argument("cannot extend a truncated series");
        return TruncatedSeries(std::vector<Coeff>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order) + 1));
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= r.order(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= r.order(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        const std::size_t n = r.order();
        for (std::size_t i = 0; i <= n; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t k = 0; i + k <= n; ++k) r.c_[i + k] += a.c_[i] * b.c_[k];
        }
        return r;
    }
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<Coeff> c_;
};

using RationalSeries = TruncatedSeries<Rational>;

// sigma(z) = sum_{j>=1} (-1)^{j-1} z^j/(1-z^j). The coefficient of z^n is
// sum_{d | n} (-1)^{d-1}, obtained here by trial division.
inline RationalSeries sigma_series(std::size_t order) {
    RationalSeries s(order);
    for (std::size_t n = 1; n <= order; ++n) {
        long c = 0;
        for (std::size_t d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            c += (d % 2 == 1) ? 1 : -1;
            const std::size_t e = n / d;
            if (e != d) c += (e % 2 == 1) ? 1 : -1;
        }
        s[n] = c;
    }
    return s;
}

// sum_{m>=1} z^m/(1+z^m), expanded term by term as sum_t (-1)^{t-1} z^{mt}.
inline RationalSeries sigma_alt_series(std::size_t order) {
    RationalSeries s(order);
    for (std::size_t m = 1; m <= order; ++m) {
        int sign = 1;
        for (std::size_t k = m; k <= order; k += m, sign = -sign) s[k] += sign;
    }
    return s;
}

// sigma_j(z) = sigma(z) - z^j/(1+z^j): the m = j term of sum z^m/(1+z^m) removed.
inline RationalSeries sigma_j_series(std::size_t j, std::size_t order) {
    if (j == 0) throw std::invalid_argument("part size j must be positive");
    RationalSeries s = sigma_series(order);
    int sign = 1;
    for (std::size_t k = j; k <= order; k += j, sign = -sign) s[k] -= sign;
    return s;
}

// 1/(1 - s) for s without constant term: t_0 = 1, t_n = sum_{k=1}^n s_k t_{n-k}.
template <class Coeff>
TruncatedSeries<Coeff> reciprocal_one_minus(const TruncatedSeries<Coeff>& s) {
    if (s[0] != 0) throw std::invalid_argument("reciprocal_one_minus needs a series with zero constant term");
    const std::size_t n = s.order();
    TruncatedSeries<Coeff> t(n);
    t[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        Coeff acc(0);
        for (std::size_t k = 1; k <= i; ++k)
            if (s[k] != 0) acc += s[k] * t[i - k];
        t[i] = std::move(acc);
    }
    return t;
}

// E[D_n] from generating-function coefficients alone: a_n from 1/(1-sigma)
// and a_{n,j} from 1/(1-sigma_j).
inline Rational expected_distinct_series(std::size_t n) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    const Rational a = reciprocal_one_minus(sigma_series(n))[n];
    Rational e(0);
    for (std::size_t j = 1; j <= n; ++j) e += 1 - reciprocal_one_minus(sigma_j_series(j, n))[n] / a;
    return e;
}

// |c_n| <= scale * n^power for all n beyond the truncation order.
struct CoefficientBound {
    Real scale = 1;
    unsigned power = 0;  // 0 or 1
};

// Bound valid for sigma and sigma_j: |[z^n]| <= d(n) <= n.
inline CoefficientBound sigma_coefficient_bound() { return {Real(1), 1}; }

template <class Value>
struct SeriesValue {
    Value value;
    Real tail_bound;  // rigorous bound on |sum_{n>N} c_n z^n|
};

namespace detail {

inline Real magnitude(const Real& z) { return boost::multiprecision::abs(z); }
inline Real magnitude(const ComplexReal& z) { return abs(z); }

}  // namespace detail

// Horner evaluation of the truncated series at |z| < 1, with a tail bound
// derived from `bound`. The bound is checked against the stored coefficients.
template <class Value>
SeriesValue<Value> evaluate(const RationalSeries& s, const Value& z, const CoefficientBound& bound) {
    const Real x = detail::magnitude(z);
    if (x >= 1) throw std::invalid_argument("evaluate requires |z| < 1");
    if (bound.power > 1) throw std::invalid_argument("coefficient bounds of degree > 1 are not supported");
    const std::size_t order = s.order();
    for (std::size_t n = 1; n <= order; ++n) {
        const Real limit = bound.power == 0 ? bound.scale : Real(bound.scale * n);
        if (boost::multiprecision::abs(to_real(s[n])) > limit)
            throw std::invalid_argument("coefficient bound violated at n=" + std::to_string(n));
    }

    Value acc = Value(to_real(s[order]));
    for (std::size_t i = order; i-- > 0;) {
        acc *= z;
        acc += Value(to_real(s[i]));
    }

    const Real xn1 = boost::multiprecision::pow(x, static_cast<long>(order + 1));
    Real tail;
    if (bound.power == 0) {
        tail = bound.scale * xn1 / (1 - x);
    } else {
        // sum_{n>N} n x^n = x^{N+1} ((N+1) - N x) / (1-x)^2
        const Real N(order);
        tail = bound.scale * xn1 * ((N + 1) - N * x) / ((1 - x) * (1 - x));
    }
    return {std::move(acc), std::move(tail)};
}

}  // namespace carlitz
