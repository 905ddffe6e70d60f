#include "apery/diffop.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace apery {

// ---------------------------------------------------------------- algebraic

std::pair<Int, Int> square_free_part(const Int& n) {
    if (n == 0) return {Int(0), Int(1)};
    Int m = n < 0 ? Int(-n) : n;
    Int s = 1, d = 1;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        for (int q = 0; q < e / 2; ++q) s *= p;
        if (e % 2) d *= p;
    }
    d *= m;
    if (n < 0) d = -d;
    return {s, d};
}

AlgebraicNumber::AlgebraicNumber(Rat a_, Rat b_, Int D_)
    : a(std::move(a_)), b(std::move(b_)), D(std::move(D_)) {
    if (D == 0) throw std::domain_error("AlgebraicNumber: D must be nonzero");
    if (b == 0) {
        D = 1;
        return;
    }
    auto [s, d] = square_free_part(D);
    b *= Rat(s);
    D = d;
    if (D == 1) {
        a += b;
        b = 0;
    }
}

AlgebraicNumber operator+(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    if (x.b != 0 && y.b != 0 && x.D != y.D)
        throw std::domain_error("AlgebraicNumber: mixed radicands");
    Int D = x.b != 0 ? x.D : y.D;
    return AlgebraicNumber(x.a + y.a, x.b + y.b, D);
}
AlgebraicNumber operator-(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    if (x.b != 0 && y.b != 0 && x.D != y.D)
        throw std::domain_error("AlgebraicNumber: mixed radicands");
    Int D = x.b != 0 ? x.D : y.D;
    return AlgebraicNumber(x.a - y.a, x.b - y.b, D);
}
AlgebraicNumber operator*(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    if (x.b != 0 && y.b != 0 && x.D != y.D)
        throw std::domain_error("AlgebraicNumber: mixed radicands");
    Int D = x.b != 0 ? x.D : y.D;
    return AlgebraicNumber(x.a * y.a + x.b * y.b * Rat(D), x.a * y.b + x.b * y.a, D);
}
AlgebraicNumber operator/(const AlgebraicNumber& x, const AlgebraicNumber& y) {
    if (y.is_zero()) throw std::domain_error("AlgebraicNumber: division by zero");
    AlgebraicNumber num = x * y.conjugate();
    Rat n = y.norm();
    return AlgebraicNumber(num.a / n, num.b / n, num.D);
}

BigComplex AlgebraicNumber::embed(mpfr_prec_t prec) const {
    BigComplex out(prec);
    out.re = BigFloat(a, prec);
    if (b == 0) return out;
    BigFloat rad = sqrt(BigFloat(D < 0 ? Int(-D) : D, prec));
    if (D > 0) {
        out.re = out.re + BigFloat(b, prec) * rad;
    } else {
        out.im = BigFloat(b, prec) * rad;
    }
    return out;
}

std::string AlgebraicNumber::str() const {
    if (b == 0) return a.get_str();
    std::ostringstream os;
    if (a != 0) os << a.get_str() << (b > 0 ? "+" : "");
    if (b == -1)
        os << "-";
    else if (b != 1)
        os << b.get_str() << "*";
    os << "sqrt(" << D.get_str() << ")";
    return os.str();
}

AlgebraicNumber AlgebraicNumber::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("AlgebraicNumber: empty");
    AlgebraicNumber acc;
    size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        size_t end = pos;
        int depth = 0;
        while (end < s.size()) {
            if (s[end] == '(') ++depth;
            if (s[end] == ')') --depth;
            if ((s[end] == '+' || s[end] == '-') && depth == 0 && end > pos) break;
            ++end;
        }
        std::string term = s.substr(pos, end - pos);
        pos = end;
        Rat coef(sign);
        bool over_sqrt = false;
        Int rad = 1;
        size_t sq = term.find("sqrt(");
        if (sq == std::string::npos) {
            coef *= parse_rat(term);
        } else {
            size_t close = term.find(')', sq);
            if (close == std::string::npos)
                throw std::invalid_argument("AlgebraicNumber: bad sqrt in " + term);
            rad = Int(term.substr(sq + 5, close - sq - 5));
            std::string head = term.substr(0, sq);
            if (!head.empty()) {
                if (head.back() == '*') {
                    coef *= parse_rat(head.substr(0, head.size() - 1));
                } else if (head.back() == '/') {
                    coef *= parse_rat(head.substr(0, head.size() - 1));
                    over_sqrt = true;
                } else {
                    throw std::invalid_argument("AlgebraicNumber: bad term " + term);
                }
            }
        }
        AlgebraicNumber t;
        if (rad == 1) {
            t = AlgebraicNumber(coef, 0, 1);
        } else if (over_sqrt) {
            t = AlgebraicNumber(0, coef / Rat(rad), rad);  // q/sqrt(D) = (q/D) sqrt(D)
        } else {
            t = AlgebraicNumber(0, coef, rad);
        }
        acc = acc.is_zero() ? t : acc + t;
    }
    return acc;
}

// ----------------------------------------------------------------- operator

DiffOperator::DiffOperator(std::vector<std::vector<Rat>> beta) : beta_(std::move(beta)) {
    if (beta_.empty()) throw std::domain_error("DiffOperator: empty");
    size_t cols = 0;
    for (auto& row : beta_) cols = std::max(cols, row.size());
    for (auto& row : beta_) row.resize(cols, Rat(0));
    auto col_zero = [&](size_t j) {
        for (const auto& row : beta_)
            if (row[j] != 0) return false;
        return true;
    };
    while (cols > 1 && col_zero(cols - 1)) {
        --cols;
        for (auto& row : beta_) row.resize(cols);
    }
    auto row_zero = [](const std::vector<Rat>& row) {
        return std::all_of(row.begin(), row.end(), [](const Rat& c) { return c == 0; });
    };
    while (beta_.size() > 1 && row_zero(beta_.back())) beta_.pop_back();
    bool all_zero = true;
    for (const auto& row : beta_)
        if (!row_zero(row)) all_zero = false;
    if (all_zero) throw std::domain_error("DiffOperator: zero operator");
}

long DiffOperator::order() const { return static_cast<long>(beta_[0].size()) - 1; }

bool DiffOperator::pf_normalized() const { return beta_[0].back() == 1; }

DiffOperator DiffOperator::normalized() const {
    long r = order();
    std::vector<std::vector<Rat>> b = beta_;
    if (poly_deg(beta_[0]) == r) {
        Rat lead = beta_[0][r];
        for (auto& row : b)
            for (auto& c : row) c /= lead;
        return DiffOperator(b);
    }
    Int den = 1;
    for (const auto& row : b)
        for (const auto& c : row) den = lcm(den, Int(c.get_den()));
    Int content = 0;
    for (const auto& row : b)
        for (const auto& c : row) content = gcd(content, Int(Rat(c * den).get_num()));
    Rat sc = Rat(den) / Rat(content);
    for (const auto& row : b) {
        for (const auto& c : row)
            if (c != 0) {
                if (c * sc < 0) sc = -sc;
                goto found;
            }
    }
found:
    for (auto& row : b)
        for (auto& c : row) c *= sc;
    return DiffOperator(b);
}

std::string DiffOperator::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < beta_.size(); ++i)
        for (size_t j = 0; j < beta_[i].size(); ++j) {
            const Rat& c = beta_[i][j];
            if (c == 0) continue;
            Rat mag = c < 0 ? Rat(-c) : c;
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            bool star = false;
            if (mag != 1 || (i == 0 && j == 0)) {
                os << mag.get_str();
                star = true;
            }
            if (i > 0) {
                if (star) os << "*";
                os << "t";
                if (i > 1) os << "^" << i;
                star = true;
            }
            if (j > 0) {
                if (star) os << "*";
                os << "D";
                if (j > 1) os << "^" << j;
            }
        }
    return os.str();
}

DiffOperator DiffOperator::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("DiffOperator: empty text");
    std::vector<std::vector<Rat>> beta;
    auto bump = [&](size_t i, size_t j, const Rat& c) {
        if (beta.size() <= i) beta.resize(i + 1);
        size_t cols = j + 1;
        for (auto& row : beta) cols = std::max(cols, row.size());
        for (auto& row : beta) row.resize(cols, Rat(0));
        beta[i][j] += c;
    };
    size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        Rat coef(sign);
        long ti = 0, dj = 0;
        bool expect_factor = true;
        while (pos < s.size() && (expect_factor || s[pos] == '*')) {
            if (s[pos] == '*') ++pos;
            if (pos >= s.size()) throw std::invalid_argument("DiffOperator: dangling *");
            if (s[pos] == 't' || s[pos] == 'D') {
                char var = s[pos++];
                long e = 1;
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    size_t q = pos;
                    while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
                    if (q == pos) throw std::invalid_argument("DiffOperator: bad exponent");
                    e = std::stol(s.substr(pos, q - pos));
                    pos = q;
                }
                (var == 't' ? ti : dj) += e;
            } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                size_t q = pos;
                while (q < s.size() &&
                       (std::isdigit(static_cast<unsigned char>(s[q])) || s[q] == '/'))
                    ++q;
                coef *= parse_rat(s.substr(pos, q - pos));
                pos = q;
            } else {
                throw std::invalid_argument("DiffOperator: unexpected text at '" +
                                            s.substr(pos) + "'");
            }
            expect_factor = false;
        }
        bump(ti, dj, coef);
    }
    return DiffOperator(beta);
}

DiffOperator multiply(const DiffOperator& l1, const DiffOperator& l2) {
    long d1 = l1.degree(), d2 = l2.degree();
    std::vector<std::vector<Rat>> beta(d1 + d2 + 1);
    for (long i = 0; i <= d1; ++i)
        for (long j = 0; j <= d2; ++j) {
            // t^i P(delta) t^j Q(delta) = t^(i+j) P(delta + j) Q(delta)
            RatPoly shifted = poly_shift_arg(l1.P(i), Rat(j));
            beta[i + j] = poly_add(beta[i + j], poly_mul(shifted, l2.P(j)));
        }
    return DiffOperator(beta);
}

RationalSequence apply_to_series(const DiffOperator& L, const RationalSequence& u) {
    if (u.size() == 0) throw std::domain_error("apply_to_series: empty sequence");
    long d = L.degree();
    RationalSequence g;
    g.terms.resize(u.size(), Rat(0));
    for (long m = 0; m < static_cast<long>(u.size()); ++m)
        for (long i = 0; i <= std::min<long>(m, d); ++i)
            g.terms[m] += L.P_eval(i, Rat(m - i)) * u[m - i];
    return g;
}

RecurrenceScheme to_recurrence(const DiffOperator& L) {
    RecurrenceScheme r;
    for (long i = 0; i <= L.degree(); ++i)
        r.offset_polys.push_back(poly_shift_arg(L.P(i), Rat(-i)));
    return r;
}

RationalSequence RecurrenceScheme::apply(const RationalSequence& u) const {
    RationalSequence g;
    g.terms.resize(u.size(), Rat(0));
    for (long m = 0; m < static_cast<long>(u.size()); ++m)
        for (long i = 0; i < static_cast<long>(offset_polys.size()) && i <= m; ++i)
            g.terms[m] += poly_eval(offset_polys[i], Rat(m)) * u[m - i];
    return g;
}

DiffOperator regularized_recurrence(const DiffOperator& L) {
    long d = L.degree();
    std::vector<std::vector<Rat>> beta(d + 1);
    for (long i = 0; i <= d; ++i) {
        RatPoly ff{Rat(1)};
        for (long q = 0; q < d - i; ++q) ff = poly_mul(ff, RatPoly{Rat(-q), Rat(1)});
        beta[i] = poly_mul(L.P(i), ff);
    }
    return DiffOperator(beta);
}

RationalSequence regularize_sequence(const RationalSequence& u, FlDirection dir) {
    RationalSequence out;
    out.terms.reserve(u.size());
    Rat fact(1);
    for (size_t k = 0; k < u.size(); ++k) {
        if (k > 0) fact *= Rat(static_cast<long>(k));
        out.terms.push_back(dir == FlDirection::Forward ? Rat(u[k] / fact) : Rat(u[k] * fact));
    }
    return out;
}

// ---------------------------------------------------------------- Weyl form

namespace {

const Rat& stirling2(long j, long k) {
    static std::vector<std::vector<Rat>> table{{Rat(1)}};
    while (static_cast<long>(table.size()) <= j) {
        long n = static_cast<long>(table.size());
        std::vector<Rat> row(n + 1, Rat(0));
        for (long i = 1; i <= n; ++i) {
            Rat lo = (i - 1 < static_cast<long>(table[n - 1].size())) ? table[n - 1][i - 1] : Rat(0);
            Rat hi = (i < static_cast<long>(table[n - 1].size())) ? table[n - 1][i] : Rat(0);
            row[i] = lo + Rat(i) * hi;
        }
        table.push_back(std::move(row));
    }
    static const Rat zero(0);
    if (k < 0 || k > j) return zero;
    return table[j][k];
}

}  // namespace

WeylOp to_dform(const DiffOperator& L) {
    WeylOp w;
    for (long i = 0; i <= L.degree(); ++i)
        for (long j = 0; j <= poly_deg(L.P(i)); ++j) {
            const Rat& c = L.P(i)[j];
            if (c == 0) continue;
            for (long k = 0; k <= j; ++k) {  // delta^j = sum_k S(j,k) t^k d^k
                const Rat& s = stirling2(j, k);
                if (s == 0) continue;
                w.terms[{i + k, k}] += c * s;
            }
        }
    std::erase_if(w.terms, [](const auto& kv) { return kv.second == 0; });
    return w;
}

WeylOp fl_transform_weyl(const WeylOp& w) {
    WeylOp out;
    for (const auto& [ab, c] : w.terms) {
        auto [a, b] = ab;
        // t^a d^b -> ds^a (-s)^b; ds^a s^b = sum_k C(a,k) b!/(b-k)! s^(b-k) ds^(a-k)
        Rat sign = (b % 2 == 0) ? Rat(1) : Rat(-1);
        for (long k = 0; k <= std::min(a, b); ++k) {
            Rat coef = c * sign * Rat(binomial(a, k)) * Rat(factorial(b) / factorial(b - k));
            out.terms[{b - k, a - k}] += coef;
        }
    }
    std::erase_if(out.terms, [](const auto& kv) { return kv.second == 0; });
    return out;
}

WeylOp fl_transform_operator(const DiffOperator& L) { return fl_transform_weyl(to_dform(L)); }

std::string WeylOp::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [ab, c] : terms) {
        auto [a, b] = ab;
        Rat mag = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool star = false;
        if (mag != 1 || (a == 0 && b == 0)) {
            os << mag.get_str();
            star = true;
        }
        if (a > 0) {
            if (star) os << "*";
            os << "s";
            if (a > 1) os << "^" << a;
            star = true;
        }
        if (b > 0) {
            if (star) os << "*";
            os << "ds";
            if (b > 1) os << "^" << b;
        }
    }
    return os.str();
}

RationalSequence WeylOp::apply_to_series(const RationalSequence& u) const {
    long K = static_cast<long>(u.size());
    long min_shift = 0;
    for (const auto& [ab, c] : terms) min_shift = std::min(min_shift, ab.first - ab.second);
    long out_len = std::max<long>(0, K + min_shift);
    RationalSequence g;
    g.terms.resize(out_len, Rat(0));
    for (const auto& [ab, c] : terms) {
        auto [a, b] = ab;
        for (long k = b; k < K; ++k) {
            long m = k + a - b;
            if (m < 0 || m >= out_len) continue;
            Rat ff(1);
            for (long q = 0; q < b; ++q) ff *= Rat(k - q);
            g.terms[m] += c * ff * u[k];
        }
    }
    return g;
}

// -------------------------------------------------- singularities, exponents

namespace {

struct RootSet {
    std::vector<AlgebraicNumber> exact;
    std::vector<BigComplex> numeric;
};

std::vector<Int> divisors_of(const Int& n) {
    Int m = n < 0 ? Int(-n) : n;
    std::vector<Int> out;
    for (Int d = 1; d * d <= m; ++d)
        if (m % d == 0) {
            out.push_back(d);
            out.push_back(m / d);
        }
    return out;
}

std::vector<BigComplex> durand_kerner_c(const std::vector<BigComplex>& coeffs, long n,
                                        mpfr_prec_t prec, mpfr_prec_t wp) {
    std::vector<BigComplex> roots;
    BigComplex seed(BigFloat(Rat(2, 5), wp), BigFloat(Rat(9, 10), wp));
    BigComplex z(BigFloat(1L, wp), BigFloat(0L, wp));
    for (long i = 0; i < n; ++i) {
        z = z * seed;
        roots.push_back(z);
    }
    auto eval = [&](const BigComplex& x) {
        BigComplex acc(wp);
        for (long j = n; j >= 0; --j) acc = acc * x + coeffs[j];
        return acc;
    };
    BigFloat eps = pow_si(BigFloat(2, wp), static_cast<long>(-(prec + 16)));
    for (int iter = 0; iter < 800; ++iter) {
        BigFloat worst(0L, wp);
        for (long i = 0; i < n; ++i) {
            BigComplex denom = coeffs[n];
            for (long j = 0; j < n; ++j)
                if (j != i) denom = denom * (roots[i] - roots[j]);
            BigComplex delta = eval(roots[i]) / denom;
            roots[i] = roots[i] - delta;
            if (worst < abs(delta)) worst = abs(delta);
        }
        if (worst < eps) break;
    }
    for (auto& r : roots) r = BigComplex(r.re.round_to(prec), r.im.round_to(prec));
    return roots;
}

RootSet roots_of_rational_poly(RatPoly p, mpfr_prec_t prec) {
    RootSet out;
    poly_trim(p);
    if (p.empty()) throw std::domain_error("roots_of_rational_poly: zero polynomial");
    size_t low = 0;
    while (low < p.size() && p[low] == 0) ++low;
    for (size_t q = 0; q < low; ++q) out.exact.push_back(AlgebraicNumber::rational(Rat(0)));
    p.erase(p.begin(), p.begin() + low);
    bool progress = true;
    while (poly_deg(p) > 2 && progress) {
        progress = false;
        Int den = 1;
        for (const auto& c : p) den = lcm(den, Int(c.get_den()));
        Int lo = Int(Rat(p.front() * den).get_num());
        Int hi = Int(Rat(p.back() * den).get_num());
        for (const Int& pn : divisors_of(lo)) {
            for (const Int& qd : divisors_of(hi)) {
                for (int sgn : {1, -1}) {
                    Rat cand(sgn * pn, qd);
                    cand.canonicalize();
                    if (poly_eval(p, cand) != 0) continue;
                    out.exact.push_back(AlgebraicNumber::rational(cand));
                    RatPoly q(p.size() - 1);
                    Rat carry = p.back();
                    for (long i = static_cast<long>(p.size()) - 2; i >= 0; --i) {
                        q[i] = carry;
                        carry = p[i] + carry * cand;
                    }
                    p = q;
                    progress = true;
                    goto deflated;
                }
            }
        }
    deflated:;
    }
    long deg = poly_deg(p);
    if (deg == 1) {
        out.exact.push_back(AlgebraicNumber::rational(-p[0] / p[1]));
    } else if (deg == 2) {
        Rat disc = p[1] * p[1] - 4 * p[0] * p[2];
        Int nd = disc.get_num() * disc.get_den();
        auto [s, d] = square_free_part(nd);
        if (d == 1) {
            Rat sq = Rat(s) / Rat(disc.get_den());
            out.exact.push_back(AlgebraicNumber::rational((-p[1] + sq) / (2 * p[2])));
            out.exact.push_back(AlgebraicNumber::rational((-p[1] - sq) / (2 * p[2])));
        } else {
            Rat broot = Rat(s) / Rat(disc.get_den());
            out.exact.push_back(AlgebraicNumber(-p[1] / (2 * p[2]), broot / (2 * p[2]), d));
            out.exact.push_back(AlgebraicNumber(-p[1] / (2 * p[2]), -broot / (2 * p[2]), d));
        }
    } else if (deg > 2) {
        mpfr_prec_t wp = prec + 64;
        std::vector<BigComplex> emb;
        for (const auto& c : p) emb.push_back(BigComplex(BigFloat(c, wp)));
        auto nums = durand_kerner_c(emb, deg, prec, wp);
        out.numeric.insert(out.numeric.end(), nums.begin(), nums.end());
    }
    return out;
}

using ANPoly = std::vector<AlgebraicNumber>;

long an_ord(const ANPoly& p) {
    for (size_t i = 0; i < p.size(); ++i)
        if (!p[i].is_zero()) return static_cast<long>(i);
    return -1;
}

}  // namespace

SingularLocus singular_locus(const DiffOperator& L, mpfr_prec_t prec) {
    long r = L.order();
    RatPoly lead;
    for (long i = 0; i <= L.degree(); ++i) lead.push_back(L.beta()[i][r]);
    poly_trim(lead);
    SingularLocus out;
    if (lead.empty())
        throw std::domain_error("singular_locus: top delta-column identically zero");
    if (poly_deg(lead) >= 1) {
        auto roots = roots_of_rational_poly(lead, prec);
        for (const auto& e : roots.exact) {
            if (e.is_zero()) continue;
            SingularPoint sp;
            sp.exact = e;
            sp.approx = e.embed(prec);
            sp.modulus = abs(sp.approx);
            out.finite.push_back(std::move(sp));
        }
        for (const auto& z : roots.numeric) {
            SingularPoint sp;
            sp.approx = z;
            sp.modulus = abs(z);
            out.finite.push_back(std::move(sp));
        }
    }
    std::sort(out.finite.begin(), out.finite.end(),
              [](const SingularPoint& a, const SingularPoint& b) {
                  return cmp(a.modulus, b.modulus) < 0;
              });
    return out;
}

ExponentSet local_exponents(const DiffOperator& L, const ExpPoint& at, mpfr_prec_t prec) {
    long r = L.order(), d = L.degree();
    ExponentSet out;
    if (at.kind == ExpPoint::Kind::Zero) {
        if (poly_deg(L.P(0)) != r) {
            out.regular_singular = false;  // Fuchs fails at 0
            return out;
        }
        auto roots = roots_of_rational_poly(L.P(0), prec);
        out.exact = roots.exact;
        out.numeric = roots.numeric;
        return out;
    }
    if (at.kind == ExpPoint::Kind::Infinity) {
        if (poly_deg(L.P(d)) != r) {
            out.regular_singular = false;
            return out;
        }
        RatPoly q = L.P(d);
        for (size_t j = 1; j < q.size(); j += 2) q[j] = -q[j];  // P_d(-rho)
        auto roots = roots_of_rational_poly(q, prec);
        out.exact = roots.exact;
        out.numeric = roots.numeric;
        return out;
    }

    // Finite sigma: Frobenius on the d-form, recentred exactly in Q(sqrt(D)).
    const AlgebraicNumber& sigma = at.sigma;
    WeylOp w = to_dform(L);
    std::vector<ANPoly> c(r + 1);
    for (auto& ci : c) ci.assign(d + r + 2, AlgebraicNumber());
    for (const auto& [ab, coef] : w.terms) {
        auto [a, b] = ab;
        for (long q = 0; q <= a; ++q) {
            AlgebraicNumber pw = AlgebraicNumber::rational(Rat(1));
            for (long e = 0; e < a - q; ++e) pw = pw * sigma;
            c[b][q] = c[b][q] + pw * AlgebraicNumber::rational(coef * Rat(binomial(a, q)));
        }
    }
    long nu = 1000000;
    for (long i = 0; i <= r; ++i) {
        long o = an_ord(c[i]);
        if (o >= 0) nu = std::min(nu, o - i);
    }
    long o_r = an_ord(c[r]);
    if (o_r < 0 || o_r - r > nu) {
        out.regular_singular = false;
        return out;
    }
    ANPoly ind(r + 1, AlgebraicNumber());
    for (long i = 0; i <= r; ++i) {
        long o = an_ord(c[i]);
        if (o < 0 || o - i != nu) continue;
        const AlgebraicNumber& lead = c[i][i + nu];
        RatPoly ff{Rat(1)};
        for (long q = 0; q < i; ++q) ff = poly_mul(ff, RatPoly{Rat(-q), Rat(1)});
        for (size_t j = 0; j < ff.size(); ++j)
            ind[j] = ind[j] + lead * AlgebraicNumber::rational(ff[j]);
    }
    while (!ind.empty() && ind.back().is_zero()) ind.pop_back();
    if (ind.empty()) throw std::runtime_error("local_exponents: vanishing indicial polynomial");

    ANPoly cur = ind;
    bool progress = true;
    while (static_cast<long>(cur.size()) - 1 >= 1 && progress) {
        progress = false;
        // rational roots of ind lie among rational roots of ind * conj(ind)
        RatPoly normpoly(2 * cur.size() - 1, Rat(0));
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = 0; j < cur.size(); ++j) {
                AlgebraicNumber prod = cur[i] * cur[j].conjugate();
                normpoly[i + j] += prod.a;
            }
        poly_trim(normpoly);
        size_t lowz = 0;
        while (lowz < normpoly.size() && normpoly[lowz] == 0) ++lowz;
        std::vector<Rat> cands{Rat(0)};
        if (lowz < normpoly.size()) {
            RatPoly base(normpoly.begin() + lowz, normpoly.end());
            Int den = 1;
            for (const auto& cc : base) den = lcm(den, Int(cc.get_den()));
            Int lo = Int(Rat(base.front() * den).get_num());
            Int hi = Int(Rat(base.back() * den).get_num());
            for (const Int& pn : divisors_of(lo))
                for (const Int& qd : divisors_of(hi))
                    for (int sgn : {1, -1}) {
                        Rat cand(sgn * pn, qd);
                        cand.canonicalize();
                        cands.push_back(cand);
                    }
        }
        for (const Rat& cand : cands) {
            AlgebraicNumber val;
            for (long j = static_cast<long>(cur.size()) - 1; j >= 0; --j)
                val = val * AlgebraicNumber::rational(cand) + cur[j];
            if (!val.is_zero()) continue;
            out.exact.push_back(AlgebraicNumber::rational(cand));
            ANPoly q(cur.size() - 1);
            AlgebraicNumber carry = cur.back();
            for (long i = static_cast<long>(cur.size()) - 2; i >= 0; --i) {
                q[i] = carry;
                carry = cur[i] + carry * AlgebraicNumber::rational(cand);
            }
            cur = q;
            while (!cur.empty() && cur.back().is_zero()) cur.pop_back();
            progress = true;
            break;
        }
    }
    long deg_left = static_cast<long>(cur.size()) - 1;
    if (deg_left >= 1) {
        bool all_rational = std::all_of(cur.begin(), cur.end(),
                                        [](const AlgebraicNumber& x) { return x.is_rational(); });
        if (all_rational && deg_left <= 2) {
            RatPoly rp;
            for (const auto& x : cur) rp.push_back(x.a);
            auto roots = roots_of_rational_poly(rp, prec);
            out.exact.insert(out.exact.end(), roots.exact.begin(), roots.exact.end());
            out.numeric.insert(out.numeric.end(), roots.numeric.begin(), roots.numeric.end());
        } else {
            mpfr_prec_t wp = prec + 64;
            std::vector<BigComplex> emb;
            for (const auto& x : cur) emb.push_back(x.embed(wp));
            auto nums = durand_kerner_c(emb, deg_left, prec, wp);
            out.numeric.insert(out.numeric.end(), nums.begin(), nums.end());
        }
    }
    return out;
}

}  // namespace apery
