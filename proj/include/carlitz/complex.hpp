#pragma once

#include "carlitz/types.hpp"

namespace carlitz {

// Minimal complex number over an arbitrary real field. std::complex is only
// specified for the built-in floating point types.
template <class T>
struct Complex {
    T re{0};
    T im{0};

    Complex() = default;
    Complex(T r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        T r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        const T den = o.re * o.re + o.im * o.im;
        T r = (re * o.re + im * o.im) / den;
        im = (im * o.re - re * o.im) / den;
        re = std::move(r);
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
};

using ComplexReal = Complex<Real>;

template <class T>
Complex<T> conj(const Complex<T>& z) {
    return {z.re, -z.im};
}

template <class T>
T norm(const Complex<T>& z) {
    return z.re * z.re + z.im * z.im;
}

template <class T>
T abs(const Complex<T>& z) {
    using std::hypot;
    using boost::multiprecision::hypot;
    return hypot(z.re, z.im);
}

template <class T>
T arg(const Complex<T>& z) {
    using std::atan2;
    using boost::multiprecision::atan2;
    return atan2(z.im, z.re);
}

template <class T>
Complex<T> exp(const Complex<T>& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    using boost::multiprecision::cos;
    using boost::multiprecision::exp;
    using boost::multiprecision::sin;
    const T m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

// Principal branch.
template <class T>
Complex<T> log(const Complex<T>& z) {
    using std::log;
    using boost::multiprecision::log;
    return {log(abs(z)), arg(z)};
}

template <class T>
Complex<T> sin(const Complex<T>& z) {
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    using boost::multiprecision::cos;
    using boost::multiprecision::cosh;
    using boost::multiprecision::sin;
    using boost::multiprecision::sinh;
    return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

}  // namespace carlitz
