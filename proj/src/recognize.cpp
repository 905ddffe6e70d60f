#include "apery/recognize.hpp"

#include <algorithm>
#include <cmath>

#include "apery/constants.hpp"

namespace apery {

std::vector<BigFloat> ConstantBasis::values(mpfr_prec_t prec) const {
    std::vector<BigFloat> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(value(l, prec));
    return out;
}

ConstantBasis ConstantBasis::standard() {
    return from_labels({"one", "zeta2", "zeta3", "pi3_over_sqrt3", "log2"});
}

ConstantBasis ConstantBasis::from_labels(const std::vector<std::string>& labels) {
    ConstantBasis b;
    b.labels = labels;
    b.value = [](const std::string& l, mpfr_prec_t p) { return named_constant(l, p); };
    return b;
}

namespace {

// Textbook LLL (delta = 0.99) on integer rows, Gram-Schmidt in BigFloat at
// extended precision; sizes here are <= 8 x 9.
void lll_reduce(std::vector<std::vector<Int>>& basis, mpfr_prec_t fp) {
    size_t n = basis.size();
    auto dotf = [&](const std::vector<Int>& u, const std::vector<Int>& v) {
        BigFloat s(0L, fp);
        for (size_t i = 0; i < u.size(); ++i)
            s = s + BigFloat(u[i], fp) * BigFloat(v[i], fp);
        return s;
    };
    std::vector<std::vector<BigFloat>> mu(n, std::vector<BigFloat>(n, BigFloat(0L, fp)));
    std::vector<BigFloat> B(n, BigFloat(0L, fp));
    std::vector<std::vector<BigFloat>> gs;  // orthogonal vectors

    auto recompute = [&]() {
        gs.assign(n, {});
        for (size_t i = 0; i < n; ++i) {
            std::vector<BigFloat> v;
            for (const auto& c : basis[i]) v.emplace_back(c, fp);
            for (size_t j = 0; j < i; ++j) {
                BigFloat num(0L, fp);
                for (size_t k = 0; k < v.size(); ++k) num = num + BigFloat(basis[i][k], fp) * gs[j][k];
                mu[i][j] = B[j].is_zero() ? BigFloat(0L, fp) : num / B[j];
                for (size_t k = 0; k < v.size(); ++k) v[k] = v[k] - mu[i][j] * gs[j][k];
            }
            BigFloat nrm(0L, fp);
            for (const auto& c : v) nrm = nrm + c * c;
            B[i] = nrm;
            gs[i] = std::move(v);
        }
    };
    recompute();

    BigFloat half(Rat(1, 2), fp), delta(Rat(99, 100), fp);
    size_t k = 1;
    int guard = 0;
    while (k < n) {
        if (++guard > 10000) break;
        // size reduction
        for (size_t j = k; j-- > 0;) {
            BigFloat m = mu[k][j];
            if (abs(m) > half) {
                Int q;
                mpfr_get_z(q.get_mpz_t(), m.mp(), MPFR_RNDN);
                for (size_t c = 0; c < basis[k].size(); ++c) basis[k][c] -= q * basis[j][c];
                recompute();
            }
        }
        // Lovasz condition
        BigFloat lhs = B[k];
        BigFloat rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            recompute();
            k = k > 1 ? k - 1 : 1;
        }
    }
    (void)dotf;
}

Int height_of(const std::vector<Int>& c, size_t upto) {
    Int h = 0;
    for (size_t i = 0; i < upto; ++i) {
        Int a = c[i] < 0 ? Int(-c[i]) : c[i];
        if (a > h) h = a;
    }
    return h;
}

// residual sum c_i x_i at elevated working precision
BigFloat residual(const std::vector<Int>& c, const std::vector<BigFloat>& x, mpfr_prec_t wp) {
    BigFloat s(0L, wp);
    for (size_t i = 0; i < x.size(); ++i) s = s + BigFloat(c[i], wp) * x[i].round_to(wp);
    return abs(s);
}

std::vector<std::vector<Int>> relation_candidates(const std::vector<BigFloat>& x,
                                                  long max_height, mpfr_prec_t prec) {
    size_t n = x.size();
    // scaling: N = 2^(prec - guard); rows (e_i | round(N x_i))
    long guard = 16 + static_cast<long>(n) * 4;
    mpfr_prec_t wp = prec + 64;
    std::vector<std::vector<Int>> rows(n, std::vector<Int>(n + 1, Int(0)));
    for (size_t i = 0; i < n; ++i) {
        rows[i][i] = 1;
        BigFloat scaled = x[i].round_to(wp);
        mpfr_mul_2si(scaled.mp(), scaled.mp(), prec - guard, MPFR_RNDN);
        Int z;
        mpfr_get_z(z.get_mpz_t(), scaled.mp(), MPFR_RNDN);
        rows[i][n] = z;
    }
    lll_reduce(rows, wp);
    std::vector<std::vector<Int>> out;
    for (const auto& row : rows) {
        std::vector<Int> c(row.begin(), row.begin() + n);
        bool nonzero = std::any_of(c.begin(), c.end(), [](const Int& v) { return v != 0; });
        if (!nonzero) continue;
        if (height_of(c, n) > max_height) continue;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

std::optional<std::vector<Int>> integer_relation(const std::vector<BigFloat>& x, long max_height,
                                                 mpfr_prec_t prec) {
    if (x.size() < 2) throw std::domain_error("integer_relation: need at least two values");
    double needed =
        2.0 * std::log2(static_cast<double>(max_height)) * static_cast<double>(x.size()) + 32.0;
    for (const auto& v : x)
        if (static_cast<double>(v.prec()) < needed)
            throw std::domain_error("integer_relation: precision too low for requested height");

    long digits = static_cast<long>(static_cast<double>(prec) * 0.30103);
    long safety = 10;
    BigFloat thresh = pow10(-(digits - safety), prec + 64);

    auto cands = relation_candidates(x, max_height, prec);
    std::optional<std::vector<Int>> best;
    BigFloat best_res(0L, 64);
    for (auto& c : cands) {
        BigFloat res = residual(c, x, prec + 64);
        if (res < thresh) {
            if (!best || res < best_res) {
                best = c;
                best_res = res;
            }
        }
    }
    return best;
}

std::optional<Recognition> recognize_constant(const BigFloat& x, const ConstantBasis& basis,
                                              long max_height) {
    mpfr_prec_t prec = x.prec();
    std::vector<BigFloat> vec{x};
    auto bvals = basis.values(prec);
    vec.insert(vec.end(), bvals.begin(), bvals.end());

    auto cands = relation_candidates(vec, max_height, prec);
    long digits = static_cast<long>(static_cast<double>(prec) * 0.30103);
    BigFloat thresh = pow10(-(digits - 10), prec + 64);
    std::vector<std::vector<Int>> good;
    for (auto& c : cands) {
        if (c[0] == 0) continue;
        if (residual(c, vec, prec + 64) < thresh) good.push_back(c);
    }
    if (good.empty()) return std::nullopt;
    // keep only candidates not proportional to the first
    std::vector<std::vector<Int>> distinct{good[0]};
    for (size_t i = 1; i < good.size(); ++i) {
        const auto& a = good[0];
        const auto& b = good[i];
        bool prop = true;
        for (size_t j = 0; j < a.size() && prop; ++j)
            for (size_t k = 0; k < a.size(); ++k)
                if (a[j] * b[k] != a[k] * b[j]) {
                    prop = false;
                    break;
                }
        if (!prop) distinct.push_back(b);
    }
    if (distinct.size() > 1) {
        std::string msg = "ambiguous recognition:";
        for (const auto& c : distinct) {
            msg += " [";
            for (const auto& v : c) msg += v.get_str() + ",";
            msg += "]";
        }
        throw AmbiguousRecognition(msg);
    }

    const auto& c = distinct[0];
    // re-verify at doubled precision with recomputed basis values
    mpfr_prec_t p2 = prec * 2;
    std::vector<BigFloat> vec2{x.round_to(p2)};
    auto b2 = basis.values(p2);
    vec2.insert(vec2.end(), b2.begin(), b2.end());
    BigFloat res2 = residual(c, vec2, p2);
    // x itself carries only prec bits, so the doubled-precision residual is
    // bounded by its ulp, not by 2^-p2
    BigFloat ulp_x = abs(x);
    mpfr_mul_2si(ulp_x.mp(), ulp_x.mp(), 8 - static_cast<long>(prec), MPFR_RNDU);
    Int hc = 0;
    for (const auto& v : c) {
        Int a = v < 0 ? Int(-v) : v;
        hc = std::max(hc, a);
    }
    if (res2 > BigFloat(hc, p2) * ulp_x + thresh.round_to(p2))
        return std::nullopt;

    Recognition out;
    out.relation = c;
    Rat c0(c[0]);
    std::string pretty;
    for (size_t i = 0; i < basis.labels.size(); ++i) {
        if (c[i + 1] == 0) continue;
        Rat q = Rat(-c[i + 1]) / c0;
        q.canonicalize();
        out.combo.emplace_back(q, basis.labels[i]);
        if (!pretty.empty()) pretty += " + ";
        pretty += q.get_str() + " * " + basis.labels[i];
    }
    out.pretty = pretty.empty() ? "0" : pretty;
    return out;
}

}  // namespace apery
