#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <mpfr.h>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace carlitz {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

// Thrown when a computation would exceed a configured resource cap
// (enumeration size, retry budget, grid size).
class ResourceGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when a numerical certification cannot be established.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string to_string(const BigInt& x) { return x.str(); }

// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

inline Real to_real(const BigInt& z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
    return r;
}

// Decimal rendering with every printed digit correct: the value is truncated
// toward zero, never rounded. Values of magnitude >= 1e-4 (and zero) are
// printed in fixed notation with `digits` places after the point; smaller
// values in scientific notation with `digits` significant digits.
inline std::string to_decimal(const Real& x, int digits) {
    if (digits < 1) throw std::invalid_argument("digits must be positive");
    const mpfr_srcptr v = x.backend().data();
    if (mpfr_nan_p(v)) return "nan";
    if (mpfr_inf_p(v)) return mpfr_sgn(v) < 0 ? "-inf" : "inf";
    if (mpfr_zero_p(v)) return "0." + std::string(static_cast<std::size_t>(digits), '0');

    auto mantissa = [&](std::size_t nsig, mpfr_exp_t& exp10) {
        char* raw = mpfr_get_str(nullptr, &exp10, 10, nsig, v, MPFR_RNDZ);
        std::string s(raw);
        mpfr_free_str(raw);
        return s;
    };

    mpfr_exp_t e = 0;
    std::string probe = mantissa(2, e);
    const bool negative = probe.front() == '-';
    // value = 0.d1d2... x 10^e
    std::string out = negative ? "-" : "";
    if (e >= -3) {
        const long nsig = static_cast<long>(e) + digits;
        if (nsig <= 0) return out + "0." + std::string(static_cast<std::size_t>(digits), '0');
        std::string m = mantissa(static_cast<std::size_t>(std::max<long>(nsig, 2)), e);
        if (negative) m.erase(0, 1);
        m.resize(static_cast<std::size_t>(nsig), '0');
        if (e <= 0) {
            out += "0." + std::string(static_cast<std::size_t>(-e), '0') + m;
        } else {
            out += m.substr(0, static_cast<std::size_t>(e)) + "." + m.substr(static_cast<std::size_t>(e));
        }
        return out;
    }
    std::string m = mantissa(static_cast<std::size_t>(std::max(digits, 2)), e);
    if (negative) m.erase(0, 1);
    m.resize(static_cast<std::size_t>(digits), '0');
    out += m.substr(0, 1);
    if (m.size() > 1) out += "." + m.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
}

}  // namespace carlitz
