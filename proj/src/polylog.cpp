#include "apery/polylog.hpp"

#include <stdexcept>

#include "apery/constants.hpp"

namespace apery {

namespace {

// Direct defining series; fine for |z| <= 3/4.
BigComplex li_series(int n, const BigComplex& z, mpfr_prec_t wp) {
    BigComplex sum(wp), zk = z;
    BigFloat eps = pow_si(BigFloat(2, wp), static_cast<long>(-(wp - 16)));
    for (long k = 1;; ++k) {
        BigComplex term = zk / BigFloat(Rat(Int(k)) * k * (n == 3 ? k : 1), wp);
        sum = sum + term;
        if (abs(term) < eps && k > 4) break;
        zk = zk * z;
        if (k > 64 * static_cast<long>(wp)) throw std::runtime_error("polylog: series stalled");
    }
    return sum;
}

// Li_n(e^mu) = mu^(n-1)/(n-1)! (H_(n-1) - log(-mu)) + sum_{k != n-1} zeta(n-k) mu^k/k!
// for |mu| < 2 pi. Geometric convergence at rate |mu|/2pi; here |mu| <= ~3.2.
BigComplex li_log_expansion(int n, const BigComplex& z, mpfr_prec_t wp) {
    BigComplex mu = log(z);
    BigFloat two_pi = BigFloat(2, wp) * named_constant("pi", wp);
    if (!(abs(mu) < two_pi)) throw std::domain_error("polylog: log expansion needs |log z| < 2pi");

    BigFloat eps = pow_si(BigFloat(2, wp), static_cast<long>(-(wp - 16)));
    BigComplex sum(wp);

    // singular term: mu^(n-1)/(n-1)! (H_(n-1) - log(-mu))
    Rat H(0);
    for (int q = 1; q < n; ++q) H += Rat(1, q);
    BigComplex mu_pow(BigFloat(1L, wp), BigFloat(0L, wp));
    for (int q = 0; q < n - 1; ++q) mu_pow = mu_pow * mu;
    if (!mu.is_zero()) {
        BigComplex logneg = log(-mu);
        BigComplex hln = BigComplex(BigFloat(H, wp)) - logneg;
        sum = mu_pow * hln / BigFloat(Rat(factorial(n - 1)), wp);
    }

    // |zeta(n-k) mu^k/k!| <= C_n (|mu|/2pi)^k, so the envelope below controls
    // the tail even at the even k where zeta(n-k) vanishes.
    BigFloat ratio = abs(mu) / two_pi;
    BigFloat env(1L, wp);
    BigComplex muk(BigFloat(1L, wp), BigFloat(0L, wp));  // mu^k/k!
    for (long k = 0;; ++k) {
        if (k != n - 1) {
            long s = n - k;
            BigComplex term(wp);
            if (s >= 2) {
                term = BigFloat(s == 2 ? named_constant("zeta2", wp)
                                       : named_constant("zeta3", wp)) *
                       muk;
            } else {
                Rat zv = zeta_neg(s);
                if (zv != 0) term = BigFloat(zv, wp) * muk;
            }
            sum = sum + term;
            if (k > n + 4 && env < eps) break;
        }
        muk = muk * mu / BigFloat(k + 1, wp);
        env = env * ratio;
        if (k > 64 * static_cast<long>(wp)) throw std::runtime_error("polylog: expansion stalled");
    }
    return sum;
}

}  // namespace

BigComplex polylog(int n, const BigComplex& z, mpfr_prec_t prec) {
    if (n != 2 && n != 3) throw std::domain_error("polylog: only n = 2, 3 supported");
    mpfr_prec_t wp = prec + 48;
    BigComplex zw(z.re.round_to(wp), z.im.round_to(wp));
    BigFloat r = abs(zw);
    BigFloat one(1L, wp);
    BigFloat tol = pow_si(BigFloat(2, wp), static_cast<long>(-(prec / 2)));
    if (r > one + tol) throw std::domain_error("polylog: |z| > 1 out of scope");
    BigComplex out(wp);
    if (zw.is_zero()) {
        out = BigComplex(wp);
    } else if (r <= BigFloat(Rat(3, 4), wp)) {
        out = li_series(n, zw, wp);
    } else {
        out = li_log_expansion(n, zw, wp);
    }
    BigComplex res(out.re.round_to(prec), out.im.round_to(prec));
    res.re.tag(Provenance::Series);
    res.im.tag(Provenance::Series);
    return res;
}

BigFloat polylog_real(int n, const BigFloat& x, mpfr_prec_t prec) {
    BigComplex z(x, BigFloat(0L, x.prec()));
    return polylog(n, z, prec).re;
}

}  // namespace apery
