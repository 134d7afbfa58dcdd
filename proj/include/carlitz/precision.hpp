#pragma once

#include <cmath>
#include <stdexcept>

#include "carlitz/types.hpp"

namespace carlitz {

// Working precision for the multiprecision routines.
//
// `bits` is the MPFR mantissa size; `tol` the absolute error targeted for
// root values. Sixteen guard bits are reserved, so tol may not be finer than
// 2^(16 - bits).
class PrecisionContext {
public:
    explicit PrecisionContext(unsigned bits = 256, double tol = 1e-50) : bits_(bits), tol_(tol) {
        if (bits_ < 64) throw std::invalid_argument("precision must be at least 64 bits");
        if (!(tol_ > 0.0) || std::log2(tol_) < 16.0 - static_cast<double>(bits_))
            throw std::invalid_argument("tolerance finer than the working precision allows");
    }

    unsigned bits() const noexcept { return bits_; }
    double tol() const noexcept { return tol_; }

    // Decimal digits handed to Boost's variable-precision mpfr_float.
    unsigned digits10() const noexcept {
        return static_cast<unsigned>(std::ceil(static_cast<double>(bits_) * 0.30102999566398120));
    }

    // Accuracy to which series are summed: 2^(16 - bits), never coarser than tol.
    Real eval_eps() const {
        Real e = boost::multiprecision::ldexp(Real(1), 16 - static_cast<int>(bits_));
        return e;
    }

    PrecisionContext doubled() const { return PrecisionContext(2 * bits_, tol_); }

private:
    unsigned bits_;
    double tol_;
};

// Sets the default mpfr_float precision for the enclosing scope.
class PrecisionGuard {
public:
    explicit PrecisionGuard(const PrecisionContext& ctx) : saved_(Real::default_precision()) {
        Real::default_precision(ctx.digits10());
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

}  // namespace carlitz
