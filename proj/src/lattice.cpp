#include "apery/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "apery/laurent.hpp"

namespace apery {

namespace {

long igcd(long a, long b) { return std::gcd(std::abs(a), std::abs(b)); }

long dot(const std::vector<long>& a, const std::vector<long>& b) {
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<long> sub(const LatticePoint& a, const LatticePoint& b) {
    std::vector<long> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

std::vector<long> cross(const std::vector<long>& u, const std::vector<long>& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

void make_primitive(std::vector<long>& n) {
    long g = 0;
    for (long c : n) g = igcd(g, c);
    if (g > 1)
        for (long& c : n) c /= g;
}

int affine_rank(const std::vector<LatticePoint>& pts) {
    if (pts.empty()) return -1;
    std::vector<std::vector<Rat>> rows;
    for (size_t i = 1; i < pts.size(); ++i) {
        auto d = sub(pts[i], pts[0]);
        rows.emplace_back(d.begin(), d.end());
    }
    int rank = 0;
    size_t cols = pts[0].size();
    for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == rank || rows[i][c] == 0) continue;
            Rat f = rows[i][c] / rows[rank][c];
            for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::vector<LatticePoint> dedupe(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

LatticePolytope hull_1d(const std::vector<LatticePoint>& pts) {
    LatticePolytope p;
    p.dim = 1;
    long lo = pts[0][0], hi = pts[0][0];
    for (const auto& q : pts) {
        lo = std::min(lo, q[0]);
        hi = std::max(hi, q[0]);
    }
    if (lo == hi) {
        p.vertices = {{lo}};
        return p;
    }
    p.vertices = {{lo}, {hi}};
    p.facets = {{{1}, -lo}, {{-1}, hi}};
    p.full_dim = true;
    return p;
}

LatticePolytope hull_2d(std::vector<LatticePoint> pts) {
    LatticePolytope p;
    p.dim = 2;
    pts = dedupe(std::move(pts));
    if (affine_rank(pts) < 2) {
        p.vertices = pts.size() == 1 ? pts : std::vector<LatticePoint>{pts.front(), pts.back()};
        return p;
    }
    auto cross2 = [](const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    // Andrew monotone chain; pts sorted lexicographically already.
    std::vector<LatticePoint> lower, upper;
    for (const auto& q : pts) {
        while (lower.size() >= 2 && cross2(lower[lower.size() - 2], lower.back(), q) <= 0)
            lower.pop_back();
        lower.push_back(q);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (upper.size() >= 2 && cross2(upper[upper.size() - 2], upper.back(), *it) <= 0)
            upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    p.vertices = lower;  // counterclockwise cycle
    p.full_dim = true;
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        const auto& a = p.vertices[i];
        const auto& b = p.vertices[(i + 1) % p.vertices.size()];
        std::vector<long> n{-(b[1] - a[1]), b[0] - a[0]};  // inward normal of a ccw edge
        make_primitive(n);
        p.facets.push_back({n, -dot(n, a)});
    }
    return p;
}

LatticePolytope hull_3d(std::vector<LatticePoint> pts) {
    LatticePolytope p;
    p.dim = 3;
    pts = dedupe(std::move(pts));
    if (affine_rank(pts) < 3) {
        p.vertices = pts;
        return p;
    }
    // Candidate facet normals from point triples. For each direction the
    // supporting plane (either sign) is a facet iff its tight set is
    // 2-dimensional; opposite parallel facets both get their turn.
    std::set<std::pair<std::vector<long>, long>> facets;
    std::set<std::vector<long>> seen;
    size_t n = pts.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                auto nor = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                if (nor == std::vector<long>{0, 0, 0}) continue;
                make_primitive(nor);
                if (nor[0] < 0 || (nor[0] == 0 && (nor[1] < 0 || (nor[1] == 0 && nor[2] < 0))))
                    for (long& c : nor) c = -c;
                if (!seen.insert(nor).second) continue;
                for (int sgn : {+1, -1}) {
                    std::vector<long> nn = nor;
                    if (sgn < 0)
                        for (long& c : nn) c = -c;
                    long lo = dot(nn, pts[0]);
                    for (const auto& q : pts) lo = std::min(lo, dot(nn, q));
                    std::vector<LatticePoint> tight;
                    for (const auto& q : pts)
                        if (dot(nn, q) == lo) tight.push_back(q);
                    if (tight.size() >= 3 && affine_rank(tight) == 2)
                        facets.insert({nn, -lo});
                }
            }
    for (const auto& [nor, off] : facets) p.facets.push_back({nor, off});
    for (const auto& q : pts) {
        std::vector<LatticePoint> tight{{0, 0, 0}};
        for (const auto& f : p.facets)
            if (dot(f.normal, q) == -f.offset) tight.push_back(f.normal);
        if (tight.size() >= 4 && affine_rank(tight) == 3) p.vertices.push_back(q);
    }
    p.vertices = dedupe(std::move(p.vertices));
    p.full_dim = true;
    return p;
}

// Cycle the vertices of a planar facet by angle about their first point,
// with exact sign comparisons (no floating point).
std::vector<LatticePoint> order_facet_cycle(std::vector<LatticePoint> pts,
                                            const std::vector<long>& normal) {
    std::vector<long> u;
    for (size_t i = 1; i < pts.size() && u.empty(); ++i) {
        auto d = sub(pts[i], pts[0]);
        if (d != std::vector<long>{0, 0, 0}) u = d;
    }
    auto v = cross(normal, u);
    LatticePoint base = pts[0];
    auto angular_less = [&](const LatticePoint& a, const LatticePoint& b) {
        auto da = sub(a, base), db = sub(b, base);
        Int xa = dot(u, da), ya = dot(v, da);
        Int xb = dot(u, db), yb = dot(v, db);
        auto half = [](const Int& x, const Int& y) { return (y > 0 || (y == 0 && x > 0)) ? 0 : 1; };
        int ha = half(xa, ya), hb = half(xb, yb);
        if (ha != hb) return ha < hb;
        return xa * yb - ya * xb > 0;
    };
    std::sort(pts.begin() + 1, pts.end(),
              [&](const LatticePoint& a, const LatticePoint& b) { return angular_less(a, b); });
    return pts;
}

}  // namespace

LatticePolytope hull_of(int dim, const std::vector<LatticePoint>& pts) {
    if (pts.empty()) throw std::domain_error("hull_of: empty point set");
    for (const auto& q : pts)
        if (static_cast<int>(q.size()) != dim) throw std::domain_error("hull_of: dim mismatch");
    switch (dim) {
        case 1: return hull_1d(pts);
        case 2: return hull_2d(pts);
        case 3: return hull_3d(pts);
        default: throw std::domain_error("hull_of: dimensions 1..3 only");
    }
}

LatticePolytope newton_polytope(const LaurentPolynomial& phi) {
    if (phi.is_zero()) throw std::domain_error("newton_polytope: zero polynomial");
    return hull_of(phi.num_vars(), phi.support());
}

PolarDual polar_dual(const LatticePolytope& p) {
    if (!p.full_dim) throw std::domain_error("polar_dual: polytope not full-dimensional");
    PolarDual d;
    d.dim = p.dim;
    d.is_lattice = true;
    for (const auto& f : p.facets) {
        if (f.offset <= 0) throw std::domain_error("polar_dual: origin not strictly interior");
        std::vector<Rat> v;
        for (long c : f.normal) {
            Rat q(c, f.offset);
            q.canonicalize();
            if (q.get_den() != 1) d.is_lattice = false;
            v.push_back(q);
        }
        d.vertices.push_back(std::move(v));
    }
    return d;
}

LatticePolytope PolarDual::as_lattice() const {
    if (!is_lattice) throw std::domain_error("PolarDual: dual has non-integral vertices");
    std::vector<LatticePoint> pts;
    for (const auto& v : vertices) {
        LatticePoint q;
        for (const auto& c : v) q.push_back(c.get_num().get_si());
        pts.push_back(q);
    }
    return hull_of(dim, pts);
}

bool is_reflexive(const LatticePolytope& p) {
    if (!p.full_dim) throw std::domain_error("is_reflexive: polytope not full-dimensional");
    for (const auto& f : p.facets)
        if (f.offset <= 0) return false;  // origin not strictly interior
    for (const auto& f : p.facets)
        if (f.offset != 1) return false;  // primitive normal: dual vertex integral iff offset 1
    auto in = interior_lattice_points(p);
    if (in.size() != 1 || std::any_of(in[0].begin(), in[0].end(), [](long c) { return c != 0; }))
        throw std::runtime_error("is_reflexive: interior-point cross-check failed");
    return true;
}

Int normalized_volume(const LatticePolytope& p) {
    if (!p.full_dim) throw std::domain_error("normalized_volume: degenerate polytope");
    if (p.dim == 1) return Int(p.vertices.back()[0] - p.vertices.front()[0]);
    if (p.dim == 2) {
        Int s = 0;
        const auto& v = p.vertices;
        for (size_t i = 0; i < v.size(); ++i) {
            const auto& a = v[i];
            const auto& b = v[(i + 1) % v.size()];
            s += Int(a[0]) * b[1] - Int(a[1]) * b[0];
        }
        return s > 0 ? s : -s;
    }
    // dim 3: fan from vertices[0] over triangulated facets; 3! vol(tet) = |det|.
    const LatticePoint& apex = p.vertices[0];
    Int total = 0;
    for (const auto& f : p.facets) {
        if (dot(f.normal, apex) == -f.offset) continue;
        std::vector<LatticePoint> fverts;
        for (const auto& q : p.vertices)
            if (dot(f.normal, q) == -f.offset) fverts.push_back(q);
        auto cyc = order_facet_cycle(fverts, f.normal);
        for (size_t i = 1; i + 1 < cyc.size(); ++i) {
            auto u = sub(cyc[0], apex), v = sub(cyc[i], apex), w = sub(cyc[i + 1], apex);
            Int det = Int(u[0]) * (Int(v[1]) * w[2] - Int(v[2]) * w[1]) -
                      Int(u[1]) * (Int(v[0]) * w[2] - Int(v[2]) * w[0]) +
                      Int(u[2]) * (Int(v[0]) * w[1] - Int(v[1]) * w[0]);
            total += det > 0 ? det : -det;
        }
    }
    return total;
}

bool contains(const LatticePolytope& p, const LatticePoint& x) {
    for (const auto& f : p.facets)
        if (dot(f.normal, x) < -f.offset) return false;
    return true;
}

std::vector<LatticePoint> lattice_points_in(const LatticePolytope& p) {
    std::vector<long> lo(p.dim, 0), hi(p.dim, 0);
    for (const auto& v : p.vertices)
        for (int i = 0; i < p.dim; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    std::vector<LatticePoint> out;
    LatticePoint x(p.dim);
    std::function<void(int)> rec = [&](int i) {
        if (i == p.dim) {
            if (contains(p, x)) out.push_back(x);
            return;
        }
        for (long c = lo[i]; c <= hi[i]; ++c) {
            x[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<LatticePoint> interior_lattice_points(const LatticePolytope& p) {
    std::vector<LatticePoint> out;
    for (const auto& q : lattice_points_in(p)) {
        bool strict = true;
        for (const auto& f : p.facets)
            if (dot(f.normal, q) == -f.offset) {
                strict = false;
                break;
            }
        if (strict) out.push_back(q);
    }
    return out;
}

namespace {

using IntPoly = std::vector<Int>;  // low -> high

std::optional<IntPoly> ipoly_divide(const IntPoly& a, const IntPoly& b) {
    if (b.empty() || a.size() < b.size()) return std::nullopt;
    IntPoly r = a, q(a.size() - b.size() + 1, Int(0));
    for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
        Int num = r[i + b.size() - 1];
        if (num % b.back() != 0) return std::nullopt;
        Int c = num / b.back();
        q[i] = c;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] -= c * b[j];
    }
    for (const auto& c : r)
        if (c != 0) return std::nullopt;
    return q;
}

const IntPoly& cyclotomic(long k) {
    static std::map<long, IntPoly> cache;
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    IntPoly num(k + 1, Int(0));
    num[0] = -1;
    num[k] = 1;
    for (long d = 1; d < k; ++d)
        if (k % d == 0) num = *ipoly_divide(num, cyclotomic(d));
    return cache.emplace(k, std::move(num)).first->second;
}

long euler_phi(long k) {
    long r = k;
    for (long p = 2; p * p <= k; ++p)
        if (k % p == 0) {
            r -= r / p;
            while (k % p == 0) k /= p;
        }
    if (k > 1) r -= r / k;
    return r;
}

}  // namespace

bool is_cyclotomic_product(const std::vector<Rat>& poly) {
    Int den = 1;
    for (const auto& c : poly) den = lcm(den, Int(c.get_den()));
    IntPoly p;
    for (const auto& c : poly) p.push_back(Int(Rat(c * den).get_num()));
    while (!p.empty() && p.back() == 0) p.pop_back();
    if (p.empty()) throw std::domain_error("is_cyclotomic_product: zero polynomial");
    size_t low = 0;
    while (p[low] == 0) ++low;
    p.erase(p.begin(), p.begin() + low);
    Int content = 0;
    for (const auto& c : p) content = gcd(content, c);
    for (auto& c : p) c /= content;
    while (p.size() > 1) {
        long deg = static_cast<long>(p.size()) - 1;
        long bound = 2 * deg * deg + 1;  // phi(k) >= sqrt(k/2), so larger k cannot divide
        bool divided = false;
        for (long k = 1; k <= bound && !divided; ++k) {
            if (euler_phi(k) > deg) continue;
            while (true) {
                auto q = ipoly_divide(p, cyclotomic(k));
                if (!q) break;
                p = *q;
                divided = true;
                if (p.size() <= 1) break;
            }
        }
        if (!divided) return false;
    }
    return p.size() == 1 && (p[0] == 1 || p[0] == -1);
}

TemperedReport is_tempered_2d(const LaurentPolynomial& phi) {
    if (phi.num_vars() != 2) throw std::domain_error("is_tempered_2d: need exactly 2 variables");
    auto np = newton_polytope(phi);
    if (!np.full_dim || !is_reflexive(np))
        throw std::domain_error("is_tempered_2d: Newton polygon must be reflexive");
    TemperedReport rep;
    rep.tempered = true;
    const auto& vs = np.vertices;
    for (size_t i = 0; i < vs.size(); ++i) {
        const auto& a = vs[i];
        const auto& b = vs[(i + 1) % vs.size()];
        auto d = sub(b, a);
        long g = igcd(d[0], d[1]);
        std::vector<long> step{d[0] / g, d[1] / g};
        EdgeReport er;
        er.from = a;
        er.to = b;
        er.poly.assign(g + 1, Rat(0));
        for (long j = 0; j <= g; ++j)
            er.poly[j] = phi.coefficient({a[0] + j * step[0], a[1] + j * step[1]});
        er.cyclotomic = is_cyclotomic_product(er.poly);
        if (!er.cyclotomic) rep.tempered = false;
        rep.edges.push_back(std::move(er));
    }
    return rep;
}

}  // namespace apery
