#include "apery/thnf.hpp"

#include <stdexcept>

#include "apery/constants.hpp"
#include "apery/polylog.hpp"

namespace apery {

ThnfMethod thnf_method_from_string(const std::string& s) {
    if (s == "quadrature-2d") return ThnfMethod::Quadrature2D;
    if (s == "quadrature-3d") return ThnfMethod::Quadrature3D;
    if (s == "closed-form-1d") return ThnfMethod::ClosedForm1D;
    if (s == "contour") return ThnfMethod::Contour;
    throw std::domain_error("unknown thnf method: " + s);
}

std::string thnf_method_to_string(ThnfMethod m) {
    switch (m) {
        case ThnfMethod::Quadrature2D: return "quadrature-2d";
        case ThnfMethod::Quadrature3D: return "quadrature-3d";
        case ThnfMethod::ClosedForm1D: return "closed-form-1d";
        case ThnfMethod::Contour: return "contour";
    }
    return "?";
}

namespace {

ThnfValue quad2d_coefficient(const ThnfProblem& p, long k, int digits) {
    // integrand: [phi^k]_{x^0} (inner, outer) / (inner * outer)
    LaurentPolynomial f = partial_constant_term(p.phi, k, p.drop_var);
    QuadOptions opt;
    opt.target_digits = digits;
    auto res = tanh_sinh_2d(
        [&](const BigFloat& inner, const BigFloat& outer) {
            std::vector<BigFloat> xs{inner, outer};
            return f.eval(xs) / (inner * outer);
        },
        p.region, opt);
    ThnfValue out;
    out.value = BigComplex(res.value);
    out.error = res.error;
    return out;
}

ThnfValue quad3d_coefficient(const ThnfProblem& p, long k, int digits) {
    QuadOptions opt;
    opt.target_digits = digits;
    auto res = tanh_sinh_3d(
        [&](const BigFloat& x1, const BigFloat& x2, const BigFloat& x3) {
            mpfr_prec_t wp = x1.prec();
            BigFloat one(1L, wp);
            BigFloat den = one - x3 * (one - x1 * x2);
            BigFloat num(1L, wp);
            for (long q = 0; q < k; ++q)
                num = num * (x1 * (one - x1)) * (x2 * (one - x2)) * (x3 * (one - x3));
            BigFloat dpw = den;
            for (long q = 0; q < k; ++q) dpw = dpw * den;
            return num / dpw;
        },
        opt);
    ThnfValue out;
    out.value = BigComplex(res.value);
    out.error = res.error;
    return out;
}

ThnfValue v16_closed(int digits) {
    // 4 int_0^1 log^2 u / (1 - u^2) du
    QuadOptions opt;
    opt.target_digits = digits;
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(digits * 10) + 64;
    auto res = tanh_sinh_1d(
        [](const BigFloat& u, const BigFloat&, const BigFloat& from_hi) {
            BigFloat lg = log(u);
            return lg * lg / (from_hi * (BigFloat(1L, u.prec()) + u));
        },
        BigFloat(0L, wp), BigFloat(1L, wp), opt);
    ThnfValue out;
    out.value = BigComplex(BigFloat(4L, wp) * res.value);
    out.error = BigFloat(4L, wp) * res.error;
    return out;
}

ThnfValue v18_contour(int digits) {
    // closed form: [4 Li3(u) - 4 Li2(u) log u + (1/3) log^3 u] between
    // u = e^{-i pi/3} and e^{+i pi/3}
    mpfr_prec_t wp = static_cast<mpfr_prec_t>(digits * 4) + 96;
    BigFloat pi = named_constant("pi", wp);
    BigFloat th = pi / BigFloat(3, wp);
    auto anti = [&](int sgn) {
        BigComplex u(cos(th), sgn > 0 ? sin(th) : -sin(th));
        BigComplex lg = log(u);
        BigComplex li3 = polylog(3, u, wp);
        BigComplex li2 = polylog(2, u, wp);
        BigComplex four(BigFloat(4L, wp), BigFloat(0L, wp));
        return four * li3 - four * (li2 * lg) + lg * lg * lg / BigFloat(3L, wp);
    };
    BigComplex closed = anti(+1) - anti(-1);

    // cross-check: direct quadrature of (4 log(1-u) + log u) log u du/u on the
    // arc u = e^{i theta}, split at theta = 0 where log(1-u) is singular
    QuadOptions opt;
    opt.target_digits = digits;
    auto integrand = [&](const BigFloat& theta, const BigFloat&, const BigFloat&) {
        mpfr_prec_t p = theta.prec();
        BigComplex u(cos(theta), sin(theta));
        BigComplex one_minus_u = BigComplex(BigFloat(1L, p)) - u;
        BigComplex lg1u = log(one_minus_u);
        BigComplex lgu(BigFloat(0L, p), theta);  // log e^{i theta} = i theta
        BigComplex val = (BigFloat(4L, p) * lg1u + lgu) * lgu;
        return BigComplex(-val.im, val.re);  // times i (du/u = i dtheta)
    };
    auto left = tanh_sinh_1d_complex(integrand, -th, BigFloat(0L, wp), opt);
    auto right = tanh_sinh_1d_complex(integrand, BigFloat(0L, wp), th, opt);
    BigComplex quad = left.value + right.value;
    BigFloat agree = abs(closed - quad);
    BigFloat tol = pow10(-digits, wp);
    if (agree > tol * BigFloat(100L, wp))
        throw std::runtime_error("thnf_v0_closed: contour cross-check failed, gap " +
                                 agree.str_sci(4));
    ThnfValue out;
    out.value = closed;
    out.error = agree + left.error + right.error;
    return out;
}

}  // namespace

ThnfValue thnf_coefficient(const ThnfProblem& p, long k, int digits) {
    if (k < 0 || k > 3) throw std::domain_error("thnf_coefficient: k in 0..3 only");
    switch (p.method) {
        case ThnfMethod::Quadrature2D: return quad2d_coefficient(p, k, digits);
        case ThnfMethod::Quadrature3D: return quad3d_coefficient(p, k, digits);
        default:
            throw std::domain_error("thnf_coefficient: case computes V(0) directly; use thnf_v0_closed");
    }
}

ThnfValue thnf_v0_closed(ThnfMethod method, int digits) {
    switch (method) {
        case ThnfMethod::ClosedForm1D: return v16_closed(digits);
        case ThnfMethod::Contour: return v18_contour(digits);
        default: throw std::domain_error("thnf_v0_closed: quadrature case; use thnf_coefficient");
    }
}

}  // namespace apery
