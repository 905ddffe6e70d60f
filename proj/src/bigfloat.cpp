#include "apery/bigfloat.hpp"

#include <cstdlib>

namespace apery {

std::string BigFloat::str_fixed(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rf", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string BigFloat::str_sci(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits > 0 ? digits - 1 : 0, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

BigFloat pow10(long k, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.mp(), 10, MPFR_RNDN);
    mpfr_pow_si(r.mp(), r.mp(), k, MPFR_RNDN);
    return r;
}

BigFloat ulp_distance(const BigFloat& a, const BigFloat& b) {
    BigFloat d = abs(a - b);
    if (d.is_zero()) return d;
    if (a.is_zero()) return d;  // no ulp scale; caller treats as absolute
    // ulp(a) = 2^(exp(a) - prec(a))
    mpfr_exp_t e = mpfr_get_exp(a.mp());
    BigFloat ulp(a.prec());
    mpfr_set_ui_2exp(ulp.mp(), 1, e - a.prec(), MPFR_RNDN);
    return d / ulp;
}

}  // namespace apery
