#pragma once

#include "apery/bigfloat.hpp"

namespace apery {

struct BigComplex {
    BigFloat re, im;

    explicit BigComplex(mpfr_prec_t prec = 256) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigComplex(const BigFloat& r) : re(r), im(BigFloat(0L, r.prec())) {}

    mpfr_prec_t prec() const { return std::min(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
}
inline BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
}
inline BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
inline BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline BigComplex operator*(const BigFloat& s, const BigComplex& a) {
    return {s * a.re, s * a.im};
}
inline BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline BigComplex operator/(const BigComplex& a, const BigFloat& s) {
    return {a.re / s, a.im / s};
}

inline BigFloat abs(const BigComplex& a) { return sqrt(a.re * a.re + a.im * a.im); }

// Principal branch, cut along the negative real axis.
inline BigComplex log(const BigComplex& a) {
    return {log(abs(a)), atan2(a.im, a.re)};
}
inline BigComplex exp(const BigComplex& a) {
    BigFloat m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
}

}  // namespace apery
