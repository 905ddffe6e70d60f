#include "doctest.h"

#include <random>

#include "apery/diffop.hpp"
#include "testcases.hpp"

using namespace apery;

namespace {

RationalSequence seq(std::vector<Rat> v) { return RationalSequence{std::move(v)}; }

RationalSequence solve_front(const DiffOperator& L, long K) {
    // minimal local solver for tests: P_0(m) u_m = -sum_{i>=1} P_i(m-i) u_{m-i}
    RationalSequence u;
    u.terms.push_back(Rat(1));
    for (long m = 1; m <= K; ++m) {
        Rat s(0);
        for (long i = 1; i <= std::min<long>(m, L.degree()); ++i)
            s += L.P_eval(i, Rat(m - i)) * u[m - i];
        u.terms.push_back(-s / L.P_eval(0, Rat(m)));
    }
    return u;
}

DiffOperator random_mum_op(std::mt19937_64& rng, long r, long d) {
    std::uniform_int_distribution<long> coef(-9, 9);
    std::vector<std::vector<Rat>> beta(d + 1, std::vector<Rat>(r + 1, Rat(0)));
    beta[0][r] = 1;  // P_0 = T^r
    for (long i = 1; i <= d; ++i)
        for (long j = 0; j <= r; ++j) beta[i][j] = Rat(coef(rng));
    return DiffOperator(beta);
}

}  // namespace

TEST_SUITE("diffop") {
    TEST_CASE("algebraic number arithmetic and canonical form") {
        AlgebraicNumber x(Rat(1, 2), Rat(3), 8);  // 1/2 + 3 sqrt(8) = 1/2 + 6 sqrt(2)
        CHECK(x.D == 2);
        CHECK(x.b == 6);
        AlgebraicNumber y(Rat(0), Rat(1), 2);
        CHECK((y * y).is_rational());
        CHECK((y * y).a == 2);
        AlgebraicNumber z = x / y;  // 6 + (1/4) sqrt2
        CHECK(z.a == 6);
        CHECK(z.b == Rat(1, 4));
        CHECK(AlgebraicNumber(Rat(5), Rat(2), 9) == AlgebraicNumber::rational(Rat(11)));
    }

    TEST_CASE("algebraic number parse and embed") {
        auto k = AlgebraicNumber::parse("9*sqrt(-3)");
        CHECK(k.D == -3);
        CHECK(k.b == 9);
        auto r = AlgebraicNumber::parse("1/sqrt(-3)");
        CHECK(r.D == -3);
        CHECK(r.b == Rat(-1, 3));
        CHECK(k * r == AlgebraicNumber::rational(Rat(9)));
        auto s = AlgebraicNumber::parse("-11/8 + 5/8*sqrt(5)");
        CHECK(s.a == Rat(-11, 8));
        CHECK(s.b == Rat(5, 8));
        auto e = s.embed(128);
        CHECK(abs(e.re - BigFloat("0.0225424859", 128)) < pow10(-9, 128));
        CHECK(e.im.is_zero());
        auto c = AlgebraicNumber(Rat(0), Rat(9), -3).embed(128);
        CHECK(c.re.is_zero());
        CHECK(abs(c.im - BigFloat("15.5884572681", 128)) < pow10(-9, 128));
    }

    TEST_CASE("operator construction trims and normalizes") {
        DiffOperator L = testcases::op("a3");
        CHECK(L.degree() == 2);
        CHECK(L.order() == 3);
        CHECK(L.pf_normalized());
        std::vector<std::vector<Rat>> b = L.beta();
        for (auto& row : b)
            for (auto& c : row) c *= Rat(7, 3);
        CHECK(DiffOperator(b).normalized() == L);
    }

    TEST_CASE("textual round trip for the registered operators") {
        for (const char* id : {"a2", "a3", "b3", "v14", "v16", "v18", "p2"}) {
            DiffOperator L = testcases::op(id);
            CHECK(DiffOperator::parse(L.str()) == L);
        }
        auto M = DiffOperator::parse("D^3 - 5*t - 27*t*D - 51*t*D^2 - 34*t*D^3 + "
                                     "t^2 + 3*t^2*D + 3*t^2*D^2 + t^2*D^3");
        CHECK(M == testcases::op("a3"));
    }

    TEST_CASE("delta applied to series") {
        DiffOperator delta({{Rat(0), Rat(1)}});
        auto g = apply_to_series(delta, seq({Rat(3), Rat(3), Rat(3), Rat(3)}));
        CHECK(g.terms == std::vector<Rat>{0, 3, 6, 9});
    }

    TEST_CASE("A3 annihilates its sequence; applied to b gives exactly t") {
        DiffOperator L = testcases::op("a3");
        auto g = apply_to_series(L, seq({Rat(1), Rat(5), Rat(73), Rat(1445)}));
        CHECK(g.terms == std::vector<Rat>{0, 0, 0, 0});
        auto gb = apply_to_series(L, seq({Rat(0), Rat(1), Rat(117, 8), Rat(62531, 216)}));
        CHECK(gb.terms == std::vector<Rat>{0, 1, 0, 0});
    }

    TEST_CASE("recurrence view round-trips against apply_to_series") {
        std::mt19937_64 rng(23);
        std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
        for (int trial = 0; trial < 100; ++trial) {
            long r = 1 + trial % 3, d = 1 + (trial / 3) % 3;
            DiffOperator L = random_mum_op(rng, r, d);
            RationalSequence u;
            for (int k = 0; k < 30; ++k) {
                Rat c(num(rng), den(rng));
                c.canonicalize();
                u.terms.push_back(c);
            }
            auto a = apply_to_series(L, u);
            auto b = to_recurrence(L).apply(u);
            CHECK(a.terms == b.terms);
        }
    }

    TEST_CASE("to_recurrence reproduces the classical recursions") {
        auto r3 = to_recurrence(testcases::op("a3"));
        CHECK(r3.offset_polys[0] == RatPoly{Rat(0), Rat(0), Rat(0), Rat(1)});
        CHECK(r3.offset_polys[1] == RatPoly{Rat(5), Rat(-27), Rat(51), Rat(-34)});
        CHECK(r3.offset_polys[2] == RatPoly{Rat(-1), Rat(3), Rat(-3), Rat(1)});
        // B3 operator: middle -2(2m-1)(11m^2-11m+3), last -4(m-1)(2m-1)(2m-3)
        auto rb = to_recurrence(testcases::op("b3"));
        CHECK(rb.offset_polys[1] == RatPoly{Rat(6), Rat(-34), Rat(66), Rat(-44)});
        CHECK(rb.offset_polys[2] == RatPoly{Rat(12), Rat(-44), Rat(48), Rat(-16)});
        auto ra = to_recurrence(testcases::op("a2"));
        CHECK(ra.offset_polys[1] == RatPoly{Rat(-3), Rat(11), Rat(-11)});
        CHECK(ra.offset_polys[2] == RatPoly{Rat(-1), Rat(2), Rat(-1)});
        // L = delta: scheme m * u_m
        auto rd = to_recurrence(DiffOperator({{Rat(0), Rat(1)}}));
        CHECK(rd.offset_polys.size() == 1);
        CHECK(rd.offset_polys[0] == RatPoly{Rat(0), Rat(1)});
    }

    TEST_CASE("regularize_sequence") {
        auto f = regularize_sequence(seq({Rat(1), Rat(1), Rat(2), Rat(6), Rat(24)}),
                                     FlDirection::Forward);
        CHECK(f.terms == std::vector<Rat>{1, 1, 1, 1, 1});
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<long> num(-50, 50), den(1, 11);
        RationalSequence u;
        for (int i = 0; i < 25; ++i) {
            Rat c(num(rng), den(rng));
            c.canonicalize();
            u.terms.push_back(c);
        }
        auto back = regularize_sequence(regularize_sequence(u, FlDirection::Forward),
                                        FlDirection::Inverse);
        CHECK(back.terms == u.terms);
        CHECK(regularize_sequence(seq({Rat(1), Rat(5)}), FlDirection::Inverse).terms[1] == 5);
    }

    TEST_CASE("fl transform pinned examples") {
        // d_t -> -s
        WeylOp dt;
        dt.terms[{0, 1}] = Rat(1);
        CHECK(fl_transform_weyl(dt).str() == "-s");
        // t -> ds
        DiffOperator tmul({{Rat(0)}, {Rat(1)}});
        CHECK(fl_transform_operator(tmul).str() == "ds");
        // delta_t -> ds (-s) = -(delta_s + 1)
        DiffOperator delta({{Rat(0), Rat(1)}});
        CHECK(fl_transform_operator(delta).str() == "-1 - s*ds");
        // t^2 d^2 = delta^2 - delta -> ds^2 s^2 = s^2 ds^2 + 4 s ds + 2
        DiffOperator dd({{Rat(0), Rat(-1), Rat(1)}});
        CHECK(fl_transform_operator(dd).str() == "2 + 4*s*ds + s^2*ds^2");
    }

    TEST_CASE("quantum recursion annihilates the regularized sequence") {
        for (const char* id : {"a2", "a3", "b3", "v14", "v16", "v18", "p2"}) {
            DiffOperator L = testcases::op(id);
            long r = L.order();
            auto u = solve_front(L, 30);
            auto uh = regularize_sequence(u, FlDirection::Forward);
            auto g = apply_to_series(regularized_recurrence(L), uh);
            for (long m = 0; m < static_cast<long>(g.size()) - r; ++m) CHECK(g[m] == 0);
        }
    }

    TEST_CASE("quantum recursion on random MUM operators (property)") {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 100; ++trial) {
            long r = 1 + trial % 3, d = 1 + (trial / 5) % 3;
            DiffOperator L = random_mum_op(rng, r, d);
            auto u = solve_front(L, 26);
            auto uh = regularize_sequence(u, FlDirection::Forward);
            auto g = apply_to_series(regularized_recurrence(L), uh);
            bool ok = true;
            for (const auto& c : g.terms)
                if (c != 0) ok = false;
            CHECK(ok);
        }
    }

    TEST_CASE("literal FL substitution fails to transfer annihilation (recorded)") {
        // delta - t(3 delta + 1): the substituted operator does not annihilate
        // u_k/k!, which is why the sequence-level check uses the quantum form.
        DiffOperator L({{Rat(0), Rat(1)}, {Rat(-1), Rat(-3)}});
        auto u = solve_front(L, 12);
        auto uh = regularize_sequence(u, FlDirection::Forward);
        auto g = fl_transform_operator(L).apply_to_series(uh);
        bool all_zero = true;
        for (const auto& c : g.terms)
            if (c != 0) all_zero = false;
        CHECK(!all_zero);
    }

    TEST_CASE("(D-1) L annihilates the inhomogeneous solution of L(.) = t") {
        DiffOperator L = testcases::op("a3");
        DiffOperator Dm1({{Rat(-1), Rat(1)}});
        DiffOperator comp = multiply(Dm1, L);
        RationalSequence b;
        b.terms = {Rat(0), Rat(1)};
        for (long m = 2; m <= 20; ++m) {
            Rat s(0);
            for (long i = 1; i <= 2; ++i) s += L.P_eval(i, Rat(m - i)) * b[m - i];
            b.terms.push_back(-s / L.P_eval(0, Rat(m)));
        }
        auto g = apply_to_series(comp, b);
        for (const auto& c : g.terms) CHECK(c == 0);
    }

    TEST_CASE("operator multiplication agrees with sequential application") {
        std::mt19937_64 rng(41);
        std::uniform_int_distribution<long> num(-9, 9);
        for (int trial = 0; trial < 50; ++trial) {
            DiffOperator A = random_mum_op(rng, 1 + trial % 2, 1 + trial % 3);
            DiffOperator B = random_mum_op(rng, 1 + (trial / 2) % 3, 1 + (trial / 3) % 2);
            RationalSequence u;
            for (int i = 0; i < 18; ++i) u.terms.push_back(Rat(num(rng)));
            auto lhs = apply_to_series(multiply(A, B), u);
            auto rhs = apply_to_series(A, apply_to_series(B, u));
            CHECK(lhs.terms == rhs.terms);
        }
    }

    TEST_CASE("singular loci of the registered operators") {
        auto s14 = singular_locus(testcases::op("v14"));
        REQUIRE(s14.finite.size() == 2);
        CHECK(s14.finite[0].exact == AlgebraicNumber::rational(Rat(1, 27)));
        CHECK(s14.finite[1].exact == AlgebraicNumber::rational(Rat(-1)));
        auto s12 = singular_locus(testcases::op("v12"));
        REQUIRE(s12.finite.size() == 2);
        CHECK(s12.finite[0].exact == AlgebraicNumber(Rat(17), Rat(-12), 2));
        CHECK(s12.finite[1].exact == AlgebraicNumber(Rat(17), Rat(12), 2));
        auto s10 = singular_locus(testcases::op("v10"));
        REQUIRE(s10.finite.size() == 2);
        CHECK(s10.finite[0].exact == AlgebraicNumber(Rat(-11, 8), Rat(5, 8), 5));
        CHECK(s10.finite[1].exact == AlgebraicNumber(Rat(-11, 8), Rat(-5, 8), 5));
        auto sp = singular_locus(testcases::op("p2"));
        REQUIRE(sp.finite.size() == 1);
        CHECK(sp.finite[0].exact == AlgebraicNumber::rational(Rat(1, 27)));
    }

    TEST_CASE("local exponents at zero and infinity") {
        auto e0 = local_exponents(testcases::op("v10"), ExpPoint::zero());
        REQUIRE(e0.regular_singular);
        REQUIRE(e0.exact.size() == 3);
        for (const auto& x : e0.exact) CHECK(x == AlgebraicNumber::rational(Rat(0)));
        auto einf12 = local_exponents(testcases::op("v12"), ExpPoint::infinity());
        REQUIRE(einf12.exact.size() == 3);
        for (const auto& x : einf12.exact) CHECK(x == AlgebraicNumber::rational(Rat(1)));
        auto einf14 = local_exponents(testcases::op("v14"), ExpPoint::infinity());
        std::vector<Rat> got;
        for (const auto& x : einf14.exact) got.push_back(x.a);
        std::sort(got.begin(), got.end());
        CHECK(got == std::vector<Rat>{Rat(2, 3), Rat(1), Rat(4, 3)});
        auto einf10 = local_exponents(testcases::op("v10"), ExpPoint::infinity());
        got.clear();
        for (const auto& x : einf10.exact) got.push_back(x.a);
        std::sort(got.begin(), got.end());
        CHECK(got == std::vector<Rat>{Rat(1, 2), Rat(1), Rat(3, 2)});
    }

    TEST_CASE("conifold exponents are exact and stable across precisions") {
        for (const char* id : {"v12", "v14", "v10", "v16", "v18"}) {
            DiffOperator L = testcases::op(id);
            for (const auto& sp : singular_locus(L).finite) {
                REQUIRE(sp.exact.has_value());
                for (mpfr_prec_t p : {128, 320}) {
                    auto es = local_exponents(L, ExpPoint::finite(*sp.exact), p);
                    REQUIRE(es.regular_singular);
                    REQUIRE(es.exact.size() == 3);
                    std::vector<Rat> got;
                    for (const auto& x : es.exact) {
                        CHECK(x.is_rational());
                        got.push_back(x.a);
                    }
                    std::sort(got.begin(), got.end());
                    CHECK(got == std::vector<Rat>{Rat(0), Rat(1, 2), Rat(1)});
                }
            }
        }
    }

    TEST_CASE("irregular points are flagged") {
        // t delta^3 + delta is irregular at 0 (indicial degree 1 < order 3)
        DiffOperator L({{Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(0), Rat(1)}});
        auto e = local_exponents(L, ExpPoint::zero());
        CHECK(!e.regular_singular);
        auto ei = local_exponents(L, ExpPoint::infinity());
        CHECK(ei.regular_singular);
    }
}
