#include "apery/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "apery/constants.hpp"

namespace apery {

namespace {

inline BigFloat abs_of(const BigFloat& x) { return abs(x); }
inline BigFloat abs_of(const BigComplex& x) { return abs(x); }

struct Node {
    BigFloat t;     // abscissa in (0, 1)
    BigFloat dist;  // 1 - t, computed without cancellation
    BigFloat w;
};

// Nodes at odd multiples of h = 2^-level (all j >= 1 for level 0), t_j > 0 side.
struct LevelNodes {
    std::vector<Node> nodes;
};

// t = tanh(u), u = (pi/2) sinh(jh); 1 - t = 2 / (e^{2u} + 1);
// w = (pi/2) cosh(jh) / cosh^2(u).
const LevelNodes& nodes_for(mpfr_prec_t wp, int level, int digits) {
    static std::map<std::tuple<mpfr_prec_t, int, int>, LevelNodes> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_tuple(wp, level, digits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    LevelNodes ln;
    BigFloat half_pi = named_constant("pi", wp) / BigFloat(2, wp);
    // Tail cutoff: stop once the weight cannot contribute at the target.
    BigFloat cutoff = pow10(-(digits + 10), wp);
    BigFloat h = pow_si(BigFloat(2, wp), -level);
    long step = (level == 0) ? 1 : 2;
    long j = (level == 0) ? 1 : 1;
    for (;; j += step) {
        BigFloat jh = BigFloat(j, wp) * h;
        BigFloat u = half_pi * sinh(jh);
        BigFloat e2u = exp(u + u);
        BigFloat dist = BigFloat(2, wp) / (e2u + BigFloat(1L, wp));
        BigFloat ch = cosh(u);
        BigFloat w = half_pi * cosh(jh) / (ch * ch);
        if (w < cutoff && j > 2) break;
        ln.nodes.push_back({BigFloat(1L, wp) - dist, dist, w});
        if (j > 100000) throw std::runtime_error("tanh_sinh: node generation runaway");
    }
    return cache.emplace(key, std::move(ln)).first->second;
}

mpfr_prec_t working_prec(const QuadOptions& opt) {
    mpfr_prec_t base = static_cast<mpfr_prec_t>(opt.target_digits * 10) + 64;
    return std::max(opt.prec, base);
}

template <typename Value, typename Fn, typename Zero>
std::pair<Value, QuadResult> run_levels(const Fn& g, const Zero& zero, mpfr_prec_t wp,
                                        const QuadOptions& opt) {
    // g(t, dist, sign) evaluates the mapped integrand at the node; t in [0,1).
    BigFloat half_pi = named_constant("pi", wp) / BigFloat(2, wp);
    BigFloat tol = pow10(-opt.target_digits, wp);
    Value total = zero;  // running sum of g over all nodes inserted so far
    {
        BigFloat one(1L, wp), z(0L, wp);
        total = g(z, one, +1);
        total = half_pi * total;
    }
    Value prev = zero;
    BigFloat h(1L, wp);
    QuadResult meta;
    Value best = zero;
    for (int level = 0; level <= opt.max_level; ++level) {
        const LevelNodes& ln = nodes_for(wp, level, opt.target_digits);
        for (const Node& nd : ln.nodes) {
            Value fp = g(nd.t, nd.dist, +1);
            Value fm = g(nd.t, nd.dist, -1);
            total = total + nd.w * (fp + fm);
        }
        h = (level == 0) ? BigFloat(1L, wp) : h / BigFloat(2, wp);
        Value cur = h * total;
        if (level > 0) {
            BigFloat gap = abs_of(cur - prev);
            BigFloat scale = abs_of(cur);
            if (scale < BigFloat(1L, wp)) scale = BigFloat(1L, wp);
            if (gap < tol * scale) {
                meta.error = BigFloat(10, wp) * gap;
                meta.levels = level;
                meta.converged = true;
                return {cur, meta};
            }
            meta.error = BigFloat(10, wp) * gap;
        }
        prev = cur;
        best = cur;
        meta.levels = level;
    }
    if (opt.strict) throw std::runtime_error("tanh_sinh: no convergence at max level");
    return {best, meta};
}

}  // namespace

QuadResult tanh_sinh_1d(const RealFn1& f, const BigFloat& lo, const BigFloat& hi,
                        const QuadOptions& opt) {
    mpfr_prec_t wp = working_prec(opt);
    BigFloat a = lo.round_to(wp), b = hi.round_to(wp);
    BigFloat halfw = (b - a) / BigFloat(2, wp);
    auto g = [&](const BigFloat&, const BigFloat& dist, int sign) -> BigFloat {
        // node x: for sign + : x = b - halfw*dist (distance to hi = halfw*dist)
        //          for sign - : x = a + halfw*dist
        BigFloat d = halfw * dist;
        if (sign > 0) return f(b - d, (b - a) - d, d);
        return f(a + d, d, (b - a) - d);
    };
    auto [val, meta] = run_levels<BigFloat>(g, BigFloat(0L, wp), wp, opt);
    QuadResult r = meta;
    r.value = (halfw * val).round_to(opt.prec ? opt.prec : wp);
    r.value.tag(Provenance::Quadrature);
    r.error = (abs(halfw) * r.error);
    return r;
}

QuadResultC tanh_sinh_1d_complex(const ComplexFn1& f, const BigFloat& lo, const BigFloat& hi,
                                 const QuadOptions& opt) {
    mpfr_prec_t wp = working_prec(opt);
    BigFloat a = lo.round_to(wp), b = hi.round_to(wp);
    BigFloat halfw = (b - a) / BigFloat(2, wp);
    auto g = [&](const BigFloat&, const BigFloat& dist, int sign) -> BigComplex {
        BigFloat d = halfw * dist;
        if (sign > 0) return f(b - d, (b - a) - d, d);
        return f(a + d, d, (b - a) - d);
    };
    auto [val, meta] = run_levels<BigComplex>(g, BigComplex(wp), wp, opt);
    QuadResultC r;
    r.value = halfw * val;
    r.value.re.tag(Provenance::Quadrature);
    r.value.im.tag(Provenance::Quadrature);
    r.error = abs(halfw) * meta.error;
    r.levels = meta.levels;
    r.converged = meta.converged;
    return r;
}

IntegrationRegion IntegrationRegion::unit_cube() {
    IntegrationRegion r;
    r.kind = Kind::Cube3D;
    r.name = "unit-cube";
    return r;
}

IntegrationRegion IntegrationRegion::named(const std::string& id) {
    IntegrationRegion r;
    r.name = id;
    if (id == "unit-cube") return unit_cube();
    if (id == "v10-mu") {
        // outer x2 in [0,1]; inner x1 in [1-x2, 1]
        r.inner_lo = [](const BigFloat& o) { return BigFloat(1L, o.prec()) - o; };
        r.inner_hi = [](const BigFloat& o) { return BigFloat(1L, o.prec()); };
        return r;
    }
    if (id == "v14-mu") {
        // outer x3 in [0,1]; inner x2 in [(1-x3)^2, 1-x3]
        r.inner_lo = [](const BigFloat& o) {
            BigFloat w = BigFloat(1L, o.prec()) - o;
            return w * w;
        };
        r.inner_hi = [](const BigFloat& o) { return BigFloat(1L, o.prec()) - o; };
        return r;
    }
    throw std::domain_error("IntegrationRegion: unknown region " + id);
}

QuadResult tanh_sinh_2d(const std::function<BigFloat(const BigFloat&, const BigFloat&)>& f,
                        const IntegrationRegion& region, const QuadOptions& opt) {
    if (region.kind != IntegrationRegion::Kind::Graph2D)
        throw std::domain_error("tanh_sinh_2d: need a Graph2D region");
    mpfr_prec_t wp = working_prec(opt);
    QuadOptions inner_opt = opt;
    inner_opt.target_digits = opt.target_digits + 2;
    inner_opt.strict = false;
    inner_opt.prec = wp;
    auto outer = [&](const BigFloat& x, const BigFloat&, const BigFloat&) -> BigFloat {
        BigFloat ilo = region.inner_lo(x), ihi = region.inner_hi(x);
        if (!(ilo < ihi)) return BigFloat(0L, wp);
        auto inner = [&](const BigFloat& y, const BigFloat&, const BigFloat&) {
            return f(y, x);  // f(inner, outer)
        };
        return tanh_sinh_1d(inner, ilo, ihi, inner_opt).value;
    };
    QuadOptions outer_opt = opt;
    outer_opt.prec = wp;
    return tanh_sinh_1d(outer, BigFloat(region.outer_lo, wp), BigFloat(region.outer_hi, wp),
                        outer_opt);
}

QuadResult tanh_sinh_3d(const std::function<BigFloat(const BigFloat&, const BigFloat&,
                                                     const BigFloat&)>& f,
                        const QuadOptions& opt) {
    mpfr_prec_t wp = working_prec(opt);
    BigFloat zero(0L, wp), one(1L, wp);
    QuadOptions in_opt = opt;
    in_opt.target_digits = opt.target_digits + 2;
    in_opt.strict = false;
    in_opt.prec = wp;
    QuadOptions mid_opt = in_opt;
    auto outer = [&](const BigFloat& x1, const BigFloat&, const BigFloat&) -> BigFloat {
        auto middle = [&](const BigFloat& x2, const BigFloat&, const BigFloat&) -> BigFloat {
            auto inner = [&](const BigFloat& x3, const BigFloat&, const BigFloat&) {
                return f(x1, x2, x3);
            };
            return tanh_sinh_1d(inner, zero, one, in_opt).value;
        };
        return tanh_sinh_1d(middle, zero, one, mid_opt).value;
    };
    QuadOptions outer_opt = opt;
    outer_opt.prec = wp;
    return tanh_sinh_1d(outer, zero, one, outer_opt);
}

}  // namespace apery
