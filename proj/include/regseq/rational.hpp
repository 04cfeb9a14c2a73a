#pragma once

// Exact rational and Gaussian-rational scalars backed by GMP.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace regseq {

using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal: '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

inline double rational_to_double(const Rational& r) { return r.get_d(); }

/// Complex number with exact rational real and imaginary parts.
struct GRational {
    Rational re{0};
    Rational im{0};

    GRational() = default;
    GRational(long v) : re(v) {}  // NOLINT: implicit by design, mirrors complex<T>
    GRational(Rational r) : re(std::move(r)) {}
    GRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real() const { return im == 0; }
    bool is_zero() const { return re == 0 && im == 0; }

    friend GRational operator+(const GRational& a, const GRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GRational operator-(const GRational& a, const GRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GRational operator-(const GRational& a) { return {-a.re, -a.im}; }
    friend GRational operator*(const GRational& a, const GRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GRational operator/(const GRational& a, const GRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero GRational");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GRational& operator+=(const GRational& b) { return *this = *this + b; }
    GRational& operator-=(const GRational& b) { return *this = *this - b; }
    GRational& operator*=(const GRational& b) { return *this = *this * b; }
    friend bool operator==(const GRational& a, const GRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GRational& a, const GRational& b) { return !(a == b); }
};

inline std::string to_string(const GRational& v) {
    if (v.is_real()) return rational_to_string(v.re);
    return rational_to_string(v.re) + (v.im >= 0 ? "+" : "") + rational_to_string(v.im) + "i";
}

}  // namespace regseq
