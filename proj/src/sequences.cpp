#include "apery/sequences.hpp"

#include <algorithm>

namespace apery {

RationalSequence solve_homogeneous(const DiffOperator& L, long K) {
    RationalSequence u;
    u.terms.reserve(K + 1);
    u.terms.emplace_back(1);
    long d = L.degree();
    for (long m = 1; m <= K; ++m) {
        Rat p0 = L.P_eval(0, Rat(m));
        if (p0 == 0) throw Obstructed(m);
        Rat s(0);
        for (long i = 1; i <= std::min<long>(m, d); ++i)
            s += L.P_eval(i, Rat(m - i)) * u[m - i];
        u.terms.push_back(-s / p0);
    }
    return u;
}

RationalSequence solve_inhomogeneous(const DiffOperator& L, const RatPoly& g, long K) {
    RationalSequence b;
    b.terms.assign(K + 1, Rat(0));
    long m0 = 0;
    while (m0 < static_cast<long>(g.size()) && g[m0] == 0) ++m0;
    if (m0 == static_cast<long>(g.size())) return b;  // g = 0: all-zero solution
    long d = L.degree();
    for (long m = m0; m <= K; ++m) {
        Rat p0 = L.P_eval(0, Rat(m));
        if (p0 == 0) throw Obstructed(m);
        Rat gm = m < static_cast<long>(g.size()) ? g[m] : Rat(0);
        Rat s(0);
        for (long i = 1; i <= std::min<long>(m, d); ++i)
            s += L.P_eval(i, Rat(m - i)) * b[m - i];
        b.terms[m] = (gm - s) / p0;
    }
    return b;
}

AperyLimitResult apery_limit(const RationalSequence& a, const RationalSequence& b,
                             mpfr_prec_t prec) {
    if (a.size() != b.size()) throw std::domain_error("apery_limit: length mismatch");
    if (a.size() < 20) throw std::domain_error("apery_limit: need at least 20 terms");
    for (size_t k = 1; k < a.size(); ++k)
        if (a[k] == 0) throw std::domain_error("apery_limit: zero a_k at k=" + std::to_string(k));

    long K = static_cast<long>(a.size()) - 1;
    mpfr_prec_t wp = prec + 32;

    AperyLimitResult out;
    out.terms_used = K + 1;
    out.value = BigFloat(Rat(b[K] / a[K]), wp).round_to(prec);

    // Geometric model on the last increments |r_n - r_{n-1}| ~ C rho^n. The
    // increments are formed exactly in Q first; converting the difference of
    // two nearly equal ratios in floating point would drown the tail in
    // rounding noise once it falls below the working precision.
    long window = std::min<long>(20, K - 1);
    std::vector<BigFloat> incr;
    for (long n = K - window; n <= K; ++n) {
        Rat exact = b[n] / a[n] - b[n - 1] / a[n - 1];
        if (exact < 0) exact = -exact;
        incr.push_back(BigFloat(exact, wp));
    }
    out.monotone_decay = true;
    for (size_t i = 1; i < incr.size(); ++i)
        if (!(incr[i] < incr[i - 1]) && !incr[i].is_zero()) out.monotone_decay = false;

    BigFloat zero(0L, wp);
    if (incr.back().is_zero()) {
        out.error_estimate = zero.round_to(prec);
        out.convergence_ratio = zero.round_to(prec);
        return out;
    }
    // rho from the tail: geometric mean of the last few increment ratios
    long fit = std::min<long>(8, static_cast<long>(incr.size()) - 1);
    BigFloat rho(1L, wp);
    bool stable = true;
    BigFloat prev_q(0L, wp);
    for (long i = static_cast<long>(incr.size()) - fit; i < static_cast<long>(incr.size());
         ++i) {
        if (incr[i - 1].is_zero()) continue;
        BigFloat q = incr[i] / incr[i - 1];
        if (i > static_cast<long>(incr.size()) - fit) {
            BigFloat rel = abs(q - prev_q) / q;
            if (rel > BigFloat(Rat(1, 100), wp)) stable = false;
        }
        prev_q = q;
        rho = rho * q;
    }
    // geometric mean via log/exp
    rho = exp(log(rho) / BigFloat(fit, wp));
    out.convergence_ratio = rho.round_to(prec);
    BigFloat one(1L, wp);
    // representation floor: the returned value itself is rounded to prec bits
    BigFloat ulps = abs(out.value);
    mpfr_mul_2si(ulps.mp(), ulps.mp(), 2 - static_cast<long>(prec), MPFR_RNDU);
    if (rho < one) {
        out.error_estimate = (incr.back() * rho / (one - rho) + ulps).round_to(prec);
        if (stable) {
            BigFloat rk(Rat(b[K] / a[K]), wp), rk1(Rat(b[K - 1] / a[K - 1]), wp);
            out.accelerated = ((rk - rho * rk1) / (one - rho)).round_to(prec);
        }
    } else {
        out.error_estimate = (incr.back() + ulps).round_to(prec);  // no geometric decay
    }
    return out;
}

KappaResult inhomogeneous_constant(const DiffOperator& L, const std::vector<BigFloat>& v,
                                   const BigFloat& uncertainty) {
    long d = L.degree();
    if (static_cast<long>(v.size()) != d)
        throw std::domain_error("inhomogeneous_constant: need exactly d Taylor coefficients");
    mpfr_prec_t wp = v[0].prec();
    BigFloat kappa(0L, wp);
    for (long i = 0; i <= d - 1; ++i)
        kappa = kappa + BigFloat(L.P_eval(i, Rat(d - 1 - i)), wp) * v[d - 1 - i];
    kappa = -kappa;

    KappaResult out;
    out.value = kappa;
    out.margin = BigFloat(0L, wp);

    // continued-fraction rounding with denominator <= 10^4
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, 40, kappa.mp(), MPFR_RNDN);
    std::string digits(s);
    mpfr_free_str(s);
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(digits.begin());
    Int num(digits.c_str());
    if (neg) num = -num;
    // kappa ~ num * 10^(e - len)
    long scale = static_cast<long>(digits.size()) - e;
    Int den = 1;
    for (long q = 0; q < scale; ++q) den *= 10;
    Rat approx = scale >= 0 ? Rat(Rat(num) / Rat(den)) : Rat(Rat(num) * Rat(den));
    approx.canonicalize();

    Int qmax = 10000;
    auto convs = cf_convergents(approx, qmax);
    if (convs.empty()) return out;
    Rat best = convs.back();
    BigFloat d1 = abs(kappa - BigFloat(best, wp));
    for (const auto& c : convs) {
        BigFloat dist = abs(kappa - BigFloat(c, wp));
        if (dist < d1) {
            d1 = dist;
            best = c;
        }
    }
    // any other rational with denominator <= qmax sits at least
    // 1/(den(best) qmax) away from best
    BigFloat farey = BigFloat(1L, wp) / BigFloat(Rat(best.get_den()) * Rat(qmax), wp);
    BigFloat gap = farey - d1;
    if (gap.sign() <= 0 || uncertainty.sign() <= 0) {
        out.rounded = std::nullopt;  // flagged non-rational at this height
        return out;
    }
    out.margin = gap / uncertainty;
    out.certified = out.margin >= BigFloat(1000L, wp) && d1 < uncertainty * BigFloat(10L, wp);
    if (d1 < farey / BigFloat(2, wp)) out.rounded = best;
    return out;
}

std::vector<BigComplex> normalize_thnf(const std::vector<BigComplex>& v, const BigComplex& kappa,
                                       const DiffOperator& L) {
    if (kappa.is_zero())
        throw std::domain_error("normalize_thnf: kappa = 0 (torsion normal function)");
    long d = L.degree();
    mpfr_prec_t wp = kappa.prec();
    BigComplex factor(BigFloat(L.P_eval(0, Rat(d - 1)), wp), BigFloat(0L, wp));
    factor = factor / kappa;
    std::vector<BigComplex> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x * factor);
    return out;
}

}  // namespace apery
