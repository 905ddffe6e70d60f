#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace apery {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    Rat r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num().get_mpz_t(), q.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den().get_mpz_t(), q.get_den().get_mpz_t(), a);
    if (e < 0) {
        if (q == 0) throw std::domain_error("rat_pow: 0 to negative power");
        r = 1 / r;
    }
    r.canonicalize();
    return r;
}

inline Rat parse_rat(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

// Dense univariate polynomial over Q, coefficients low->high degree.
using RatPoly = std::vector<Rat>;

inline void poly_trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int poly_deg(const RatPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

inline Rat poly_eval(const RatPoly& p, const Rat& x) {
    Rat r(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

inline RatPoly poly_add(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

inline RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

inline RatPoly poly_scale(const RatPoly& a, const Rat& c) {
    if (c == 0) return {};
    RatPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

// p(x + c)
inline RatPoly poly_shift_arg(const RatPoly& p, const Rat& c) {
    RatPoly r{Rat(0)};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        r = poly_mul(r, RatPoly{c, Rat(1)});
        if (r.empty()) r = {Rat(0)};
        r[0] += *it;
        poly_trim(r);
    }
    poly_trim(r);
    return r;
}

// Continued-fraction convergents of x = num/den, denominators capped by qmax.
inline std::vector<Rat> cf_convergents(const Rat& x, const Int& qmax) {
    std::vector<Rat> out;
    Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Int num = x.get_num(), den = x.get_den();
    while (den != 0) {
        Int a, rem;
        mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > qmax) break;
        out.emplace_back(Rat(p2) / Rat(q2));
        out.back().canonicalize();
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        num = den; den = rem;
    }
    return out;
}

}  // namespace apery
