#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "apery/rational.hpp"

namespace apery {

// How a value was obtained; carried along so reports can say what backs a number.
enum class Provenance { ExactCast, Series, Quadrature };

inline Provenance combine(Provenance a, Provenance b) {
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

// Arbitrary-precision real. Precision is fixed per value (bits); binary
// operations produce results at the minimum of the operand precisions, so
// precision never silently increases past what the inputs support.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 256) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    BigFloat(const Rat& q, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const Int& z, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }
    BigFloat(const std::string& s, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("BigFloat: bad decimal literal: " + s);
    }

    BigFloat(const BigFloat& o) : prov_(o.prov_) {
        mpfr_init2(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept : prov_(o.prov_) {
        mpfr_init2(v_, o.prec());
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        prov_ = o.prov_;
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    Provenance provenance() const { return prov_; }
    BigFloat& tag(Provenance p) { prov_ = p; return *this; }

    mpfr_srcptr mp() const { return v_; }
    mpfr_ptr mp() { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    BigFloat round_to(mpfr_prec_t prec) const {
        BigFloat r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        r.prov_ = prov_;
        return r;
    }

    // Fixed-point decimal, `digits` after the point.
    std::string str_fixed(int digits) const;
    // Scientific, `digits` significant.
    std::string str_sci(int digits) const;

    friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }

  private:
    mpfr_t v_;
    Provenance prov_ = Provenance::ExactCast;
};

namespace detail {
inline mpfr_prec_t minp(const BigFloat& a, const BigFloat& b) {
    return std::min(a.prec(), b.prec());
}
}  // namespace detail

#define APERY_BF_BINOP(op, fn)                                             \
    inline BigFloat operator op(const BigFloat& a, const BigFloat& b) {    \
        BigFloat r(detail::minp(a, b));                                    \
        fn(r.mp(), a.mp(), b.mp(), MPFR_RNDN);                             \
        r.tag(combine(a.provenance(), b.provenance()));                    \
        return r;                                                          \
    }
APERY_BF_BINOP(+, mpfr_add)
APERY_BF_BINOP(-, mpfr_sub)
APERY_BF_BINOP(*, mpfr_mul)
APERY_BF_BINOP(/, mpfr_div)
#undef APERY_BF_BINOP

inline BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_neg(r.mp(), a.mp(), MPFR_RNDN);
    r.tag(a.provenance());
    return r;
}

#define APERY_BF_UNARY(name, fn)                       \
    inline BigFloat name(const BigFloat& a) {          \
        BigFloat r(a.prec());                          \
        fn(r.mp(), a.mp(), MPFR_RNDN);                 \
        r.tag(a.provenance());                         \
        return r;                                      \
    }
APERY_BF_UNARY(abs, mpfr_abs)
APERY_BF_UNARY(sqrt, mpfr_sqrt)
APERY_BF_UNARY(log, mpfr_log)
APERY_BF_UNARY(exp, mpfr_exp)
APERY_BF_UNARY(sin, mpfr_sin)
APERY_BF_UNARY(cos, mpfr_cos)
APERY_BF_UNARY(sinh, mpfr_sinh)
APERY_BF_UNARY(cosh, mpfr_cosh)
APERY_BF_UNARY(tanh, mpfr_tanh)
#undef APERY_BF_UNARY

inline BigFloat pow_si(const BigFloat& a, long e) {
    BigFloat r(a.prec());
    mpfr_pow_si(r.mp(), a.mp(), e, MPFR_RNDN);
    r.tag(a.provenance());
    return r;
}

inline BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(detail::minp(y, x));
    mpfr_atan2(r.mp(), y.mp(), x.mp(), MPFR_RNDN);
    r.tag(combine(y.provenance(), x.provenance()));
    return r;
}

inline bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
inline bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
inline bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
inline bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
inline bool operator==(const BigFloat& a, const BigFloat& b) { return cmp(a, b) == 0; }

// 10^-k at the given precision.
BigFloat pow10(long k, mpfr_prec_t prec);
// |a - b| measured in ulps of a (for cross-method agreement checks).
BigFloat ulp_distance(const BigFloat& a, const BigFloat& b);

}  // namespace apery
