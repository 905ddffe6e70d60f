#include "doctest.h"

#include <random>

#include "apery/laurent.hpp"
#include "testcases.hpp"

using namespace apery;

namespace {

// naive double-loop product oracle on exponent->coeff maps
std::map<std::vector<long>, Rat> naive_mul(const std::map<std::vector<long>, Rat>& a,
                                           const std::map<std::vector<long>, Rat>& b) {
    std::map<std::vector<long>, Rat> out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<long> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out[e] += ca * cb;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

std::map<std::vector<long>, Rat> to_map(const LaurentPolynomial& p) {
    std::map<std::vector<long>, Rat> m;
    for (const auto& e : p.support()) m[e] = p.coefficient(e);
    return m;
}

LaurentPolynomial random_poly(std::mt19937_64& rng, int nv, int nterms) {
    std::uniform_int_distribution<long> exp(-3, 3), num(-9, 9);
    std::uniform_int_distribution<long> den(1, 4);
    LaurentPolynomial p(nv);
    for (int i = 0; i < nterms; ++i) {
        std::vector<long> e(nv);
        for (auto& x : e) x = exp(rng);
        Rat c(num(rng), den(rng));
        c.canonicalize();
        p.add_term(e, c);
    }
    return p;
}

}  // namespace

TEST_SUITE("laurent") {
    TEST_CASE("product examples") {
        // (x + 1/x)(x - 1/x) = x^2 - 1/x^2
        LaurentPolynomial a(1), b(1);
        a.add_term({1}, 1);
        a.add_term({-1}, 1);
        b.add_term({1}, 1);
        b.add_term({-1}, -1);
        auto p = multiply(a, b);
        CHECK(p.term_count() == 2);
        CHECK(p.coefficient({2}) == 1);
        CHECK(p.coefficient({-2}) == -1);
        // f * 1 = f
        LaurentPolynomial one(1);
        one.add_term({0}, 1);
        CHECK(multiply(a, one) == a);
    }

    TEST_CASE("(1+x+y)^2 against the double-loop oracle") {
        LaurentPolynomial s(2);
        s.add_term({0, 0}, 1);
        s.add_term({1, 0}, 1);
        s.add_term({0, 1}, 1);
        auto p = multiply(s, s);
        CHECK(p.term_count() == 6);
        CHECK(to_map(p) == naive_mul(to_map(s), to_map(s)));
    }

    TEST_CASE("random products match the oracle") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 40; ++trial) {
            int nv = 1 + static_cast<int>(trial % 3);
            auto a = random_poly(rng, nv, 5), b = random_poly(rng, nv, 4);
            CHECK(to_map(multiply(a, b)) == naive_mul(to_map(a), to_map(b)));
        }
    }

    TEST_CASE("mismatched arity rejected") {
        CHECK_THROWS_AS(multiply(LaurentPolynomial(2), LaurentPolynomial(3)), std::domain_error);
    }

    TEST_CASE("period sequence anchors: v12 and v10") {
        auto s12 = constant_term_sequence(testcases::phi("v12"), 3);
        CHECK(s12.terms == std::vector<Rat>{1, 5, 73, 1445});
        auto s10 = constant_term_sequence(testcases::phi("v10"), 2);
        CHECK(s10.terms == std::vector<Rat>{1, 6, 114});
    }

    TEST_CASE("binomial closed forms hold through k = 12") {
        auto s12 = constant_term_sequence(testcases::phi("v12"), 12);
        auto s10 = constant_term_sequence(testcases::phi("v10"), 12);
        for (long k = 0; k <= 12; ++k) {
            // A3: sum C(k,l)^2 C(k+l,l)^2 ; B3: C(2k,k) sum C(k,j)^2 C(k+j,j)
            Rat a3(0), a2(0);
            for (long l = 0; l <= k; ++l) {
                Int b1 = binomial(k, l), b2 = binomial(k + l, l);
                a3 += Rat(b1 * b1 * b2 * b2);
                a2 += Rat(b1 * b1 * b2);
            }
            CHECK(s12[k] == a3);
            CHECK(s10[k] == Rat(binomial(2 * k, k)) * a2);
        }
    }

    TEST_CASE("triangle sequence has factorial spikes at multiples of 3") {
        LaurentPolynomial phi(2);
        phi.add_term({1, 0}, 1);
        phi.add_term({0, 1}, 1);
        phi.add_term({-1, -1}, 1);
        auto s = constant_term_sequence(phi, 9);
        std::vector<Rat> expect{1, 0, 0, 6, 0, 0, 90, 0, 0, 1680};
        CHECK(s.terms == expect);
    }

    TEST_CASE("pruned and unpruned sequences agree exactly") {
        std::mt19937_64 rng(9);
        int trials = 0;
        while (trials < 100) {
            int nv = 2 + static_cast<int>(trials % 2);
            auto p = random_poly(rng, nv, 6);
            // ensure full-dimensional support so the polytope has facets
            std::vector<long> e1(nv, 0), e2(nv, 0);
            for (int i = 0; i < nv; ++i) e1[i] = 1;
            for (int i = 0; i < nv; ++i) e2[i] = -1;
            p.add_term(e1, 1);
            p.add_term(e2, 1);
            if (p.is_zero()) continue;
            auto np = newton_polytope(p);
            if (!np.full_dim) continue;
            auto plain = constant_term_sequence(p, 8);
            auto pruned = constant_term_sequence(p, 8, &np);
            CHECK(plain.terms == pruned.terms);
            ++trials;
        }
    }

    TEST_CASE("pruned sequences agree for the registered cases") {
        for (const char* id : {"v10", "v12", "v14", "v16", "v18"}) {
            auto phi = testcases::phi(id);
            auto np = newton_polytope(phi);
            auto plain = constant_term_sequence(phi, 12);
            auto pruned = constant_term_sequence(phi, 12, &np);
            CHECK(plain.terms == pruned.terms);
        }
    }

    TEST_CASE("prune polytope must match") {
        auto phi = testcases::phi("v12");
        auto wrong = newton_polytope(testcases::phi("v18"));
        CHECK_THROWS_AS(constant_term_sequence(phi, 4, &wrong), std::domain_error);
        CHECK_THROWS_AS(constant_term_sequence(phi, -1), std::domain_error);
    }

    TEST_CASE("partial constant term: v10 k=1 drops x3") {
        auto p = partial_constant_term(testcases::phi("v10"), 1, 2);
        // (2-x1-x2)(2-2x1-2x2+x1x2)/(x1x2) expanded
        std::map<std::vector<long>, Rat> expect{
            {{-1, -1}, 4}, {{0, -1}, -6}, {{-1, 0}, -6}, {{0, 0}, 6},
            {{1, -1}, 2},  {{-1, 1}, 2},  {{1, 0}, -1},  {{0, 1}, -1}};
        CHECK(to_map(p) == expect);
    }

    TEST_CASE("partial constant term: v14 k=1 drops x1") {
        auto p = partial_constant_term(testcases::phi("v14"), 1, 0);
        // (1-x2-x3)((1-x3)^2 - 2x2)/(x2 x3) expanded; vars (x2,x3)
        std::map<std::vector<long>, Rat> expect{
            {{-1, -1}, 1}, {{-1, 0}, -3}, {{-1, 1}, 3}, {{-1, 2}, -1},
            {{0, -1}, -3}, {{0, 0}, 4},   {{0, 1}, -1}, {{1, -1}, 2}};
        CHECK(to_map(p) == expect);
    }

    TEST_CASE("partial constant term: k = 0 is 1, bad index rejected") {
        auto phi = testcases::phi("v12");
        auto p = partial_constant_term(phi, 0, 1);
        CHECK(p.term_count() == 1);
        CHECK(p.constant_term() == 1);
        CHECK_THROWS_AS(partial_constant_term(phi, 1, 5), std::domain_error);
    }

    TEST_CASE("constant shift acts by binomial transform") {
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 20; ++trial) {
            auto p = random_poly(rng, 2, 5);
            if (p.is_zero()) continue;
            Rat c(trial % 5 - 2, 1 + trial % 3);
            c.canonicalize();
            LaurentPolynomial shifted = p;
            shifted.add_term({0, 0}, c);
            auto base = constant_term_sequence(p, 8);
            auto direct = constant_term_sequence(shifted, 8);
            auto transformed = binomial_shift(base, c);
            CHECK(direct.terms == transformed.terms);
        }
    }

    TEST_CASE("newton polytope of a product is the Minkowski sum") {
        std::mt19937_64 rng(17);
        int done = 0;
        while (done < 100) {
            int nv = 2 + (done % 2);
            auto a = random_poly(rng, nv, 4), b = random_poly(rng, nv, 4);
            if (a.is_zero() || b.is_zero()) continue;
            auto prod = multiply(a, b);
            if (prod.is_zero()) continue;
            // hull-of-sums oracle
            std::vector<LatticePoint> sums;
            for (const auto& ea : a.support())
                for (const auto& eb : b.support()) {
                    LatticePoint e(nv);
                    for (int i = 0; i < nv; ++i) e[i] = ea[i] + eb[i];
                    sums.push_back(e);
                }
            auto lhs = newton_polytope(prod);
            auto rhs = hull_of(nv, sums);
            auto vl = lhs.vertices, vr = rhs.vertices;
            std::sort(vl.begin(), vl.end());
            std::sort(vr.begin(), vr.end());
            CHECK(vl == vr);
            ++done;
        }
    }

    TEST_CASE("integrality is asserted for integer-coefficient inputs") {
        auto s = constant_term_sequence(testcases::phi("v16"), 6);
        for (const auto& t : s.terms) CHECK(t.get_den() == 1);
    }
}
