#include "apery/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace apery {

namespace {
constexpr long kBias = 1L << 20;
constexpr int kFieldBits = 21;
constexpr uint64_t kFieldMask = (1ULL << kFieldBits) - 1;
}  // namespace

LaurentPolynomial::LaurentPolynomial(int num_vars) : nvars_(num_vars) {
    if (num_vars < 1 || num_vars > 3)
        throw std::domain_error("LaurentPolynomial: 1..3 variables supported");
}

uint64_t LaurentPolynomial::pack(std::span<const long> exps) {
    uint64_t key = 0;
    for (size_t i = 0; i < 3; ++i) {
        long e = i < exps.size() ? exps[i] : 0;
        if (e < -kExpBound || e > kExpBound)
            throw std::domain_error("LaurentPolynomial: exponent out of packed range");
        key = (key << kFieldBits) | static_cast<uint64_t>(e + kBias);
    }
    return key;
}

void LaurentPolynomial::unpack(uint64_t key, int nvars, long* exps) {
    for (int i = 2; i >= 0; --i) {
        long e = static_cast<long>(key & kFieldMask) - kBias;
        if (i < nvars) exps[i] = e;
        key >>= kFieldBits;
    }
}

void LaurentPolynomial::add_term(const std::vector<long>& exps, const Rat& c) {
    if (static_cast<int>(exps.size()) != nvars_)
        throw std::domain_error("LaurentPolynomial: exponent arity mismatch");
    if (c == 0) return;
    uint64_t key = pack(exps);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const auto& t, uint64_t k) { return t.first < k; });
    if (it != terms_.end() && it->first == key) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {key, c});
    }
}

Rat LaurentPolynomial::coefficient(const std::vector<long>& exps) const {
    if (static_cast<int>(exps.size()) != nvars_)
        throw std::domain_error("LaurentPolynomial: exponent arity mismatch");
    uint64_t key = pack(exps);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const auto& t, uint64_t k) { return t.first < k; });
    return (it != terms_.end() && it->first == key) ? it->second : Rat(0);
}

Rat LaurentPolynomial::constant_term() const {
    return coefficient(std::vector<long>(nvars_, 0));
}

std::vector<std::vector<long>> LaurentPolynomial::support() const {
    std::vector<std::vector<long>> out;
    long e[3];
    for (const auto& [key, c] : terms_) {
        unpack(key, nvars_, e);
        out.emplace_back(e, e + nvars_);
    }
    return out;
}

bool LaurentPolynomial::has_integer_coefficients() const {
    for (const auto& [k, c] : terms_)
        if (c.get_den() != 1) return false;
    return true;
}

std::string LaurentPolynomial::str(const std::vector<std::string>& names) const {
    std::vector<std::string> nm = names;
    if (nm.empty()) {
        nm = {"x1", "x2", "x3"};
        nm.resize(nvars_);
    }
    if (terms_.empty()) return "0";
    std::ostringstream os;
    long e[3];
    bool first = true;
    for (const auto& [key, c] : terms_) {
        unpack(key, nvars_, e);
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int i = 0; i < nvars_; ++i)
            if (e[i] != 0) os << "*" << nm[i] << "^" << e[i];
    }
    return os.str();
}

BigFloat LaurentPolynomial::eval(std::span<const BigFloat> x) const {
    if (static_cast<int>(x.size()) != nvars_)
        throw std::domain_error("LaurentPolynomial::eval: arity mismatch");
    mpfr_prec_t p = x[0].prec();
    for (const auto& xi : x) p = std::min(p, xi.prec());
    BigFloat acc(0L, p);
    long e[3];
    for (const auto& [key, c] : terms_) {
        unpack(key, nvars_, e);
        BigFloat t(c, p);
        for (int i = 0; i < nvars_; ++i)
            if (e[i] != 0) t = t * pow_si(x[i], e[i]);
        acc = acc + t;
    }
    return acc;
}

LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    if (f.num_vars() != g.num_vars())
        throw std::domain_error("multiply: variable count mismatch");
    LaurentPolynomial out(f.num_vars());
    // Packed keys are biased per field, so key arithmetic is additive up to a
    // constant bias offset.
    static const uint64_t kZero = LaurentPolynomial::pack(std::vector<long>{0, 0, 0});
    std::unordered_map<uint64_t, Rat> acc;
    acc.reserve(f.term_count() * std::min<size_t>(g.term_count(), 16));
    for (const auto& [ka, ca] : f.terms())
        for (const auto& [kb, cb] : g.terms()) {
            uint64_t key = ka + kb - kZero;
            auto [it, fresh] = acc.try_emplace(key, Rat(0));
            it->second += ca * cb;
        }
    out.terms_.reserve(acc.size());
    for (auto& [k, c] : acc)
        if (c != 0) out.terms_.emplace_back(k, std::move(c));
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

LaurentPolynomial add(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    if (f.num_vars() != g.num_vars()) throw std::domain_error("add: variable count mismatch");
    LaurentPolynomial out(f.num_vars());
    auto ia = f.terms().begin(), ib = g.terms().begin();
    while (ia != f.terms().end() || ib != g.terms().end()) {
        if (ib == g.terms().end() || (ia != f.terms().end() && ia->first < ib->first)) {
            out.terms_.push_back(*ia++);
        } else if (ia == f.terms().end() || ib->first < ia->first) {
            out.terms_.push_back(*ib++);
        } else {
            Rat c = ia->second + ib->second;
            if (c != 0) out.terms_.emplace_back(ia->first, c);
            ++ia;
            ++ib;
        }
    }
    return out;
}

LaurentPolynomial scale(const LaurentPolynomial& f, const Rat& c) {
    LaurentPolynomial out(f.num_vars());
    if (c == 0) return out;
    for (const auto& [k, v] : f.terms()) out.add_term([&] {
        std::vector<long> e(f.num_vars());
        LaurentPolynomial::unpack(k, f.num_vars(), e.data());
        return e;
    }(), v * c);
    return out;
}

namespace {

// True when -m lies in s * Delta, via the scaled facet inequalities.
bool neg_in_scaled(const LatticePolytope& delta, const long* e, int nvars, long s) {
    for (const auto& f : delta.facets) {
        long d = 0;
        for (int i = 0; i < nvars; ++i) d += f.normal[i] * (-e[i]);
        if (d < -s * f.offset) return false;
    }
    return true;
}

}  // namespace

RationalSequence constant_term_sequence(const LaurentPolynomial& phi, long K,
                                        const LatticePolytope* prune) {
    if (K < 0) throw std::domain_error("constant_term_sequence: K must be >= 0");
    if (prune) {
        auto np = newton_polytope(phi);
        auto eq = [](const LatticePolytope& a, const LatticePolytope& b) {
            return a.vertices == b.vertices;
        };
        if (!eq(np, *prune))
            throw std::domain_error("constant_term_sequence: prune polytope != newton_polytope(phi)");
    }
    bool assert_integral = phi.has_integer_coefficients();
    RationalSequence out;
    out.terms.reserve(K + 1);
    out.terms.emplace_back(1);
    LaurentPolynomial p(phi.num_vars());
    p.add_term(std::vector<long>(phi.num_vars(), 0), Rat(1));
    long e[3];
    for (long k = 1; k <= K; ++k) {
        p = multiply(p, phi);
        if (prune) {
            // A monomial m of phi^k reaches the constant term of phi^K' for
            // some K' <= K only if -m lies in (K-k) Delta.
            std::vector<std::pair<uint64_t, Rat>> kept;
            for (const auto& [key, c] : p.terms()) {
                LaurentPolynomial::unpack(key, p.num_vars(), e);
                if (neg_in_scaled(*prune, e, p.num_vars(), K - k)) kept.emplace_back(key, c);
            }
            p.terms_ = std::move(kept);
        }
        Rat a = p.constant_term();
        if (assert_integral && a.get_den() != 1)
            throw std::runtime_error("constant_term_sequence: expected integral term");
        out.terms.push_back(std::move(a));
    }
    return out;
}

LaurentPolynomial partial_constant_term(const LaurentPolynomial& phi, long k, int var_index) {
    if (k < 0) throw std::domain_error("partial_constant_term: k must be >= 0");
    if (var_index < 0 || var_index >= phi.num_vars())
        throw std::domain_error("partial_constant_term: bad variable index");
    LaurentPolynomial p(phi.num_vars());
    p.add_term(std::vector<long>(phi.num_vars(), 0), Rat(1));
    for (long i = 0; i < k; ++i) p = multiply(p, phi);
    int outv = phi.num_vars() - 1;
    LaurentPolynomial out(std::max(outv, 1));
    long e[3];
    for (const auto& [key, c] : p.terms()) {
        LaurentPolynomial::unpack(key, phi.num_vars(), e);
        if (e[var_index] != 0) continue;
        std::vector<long> rest;
        for (int i = 0; i < phi.num_vars(); ++i)
            if (i != var_index) rest.push_back(e[i]);
        if (rest.empty()) rest.push_back(0);  // k = 0 or univariate input
        out.add_term(rest, c);
    }
    return out;
}

RationalSequence binomial_shift(const RationalSequence& a, const Rat& c) {
    RationalSequence out;
    out.terms.reserve(a.size());
    for (size_t k = 0; k < a.size(); ++k) {
        Rat s(0);
        Rat cpow(1);
        // sum_j C(k,j) c^(k-j) a_j, accumulated with c-powers from the top
        for (long j = static_cast<long>(k); j >= 0; --j) {
            s += Rat(binomial(k, j)) * cpow * a[j];
            cpow *= c;
        }
        out.terms.push_back(s);
    }
    return out;
}

}  // namespace apery
