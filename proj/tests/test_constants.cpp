#include "doctest.h"

#include "apery/constants.hpp"

using namespace apery;

TEST_SUITE("constants") {
    TEST_CASE("bernoulli numbers") {
        const auto& B = bernoulli_upto(12);
        CHECK(B[0] == 1);
        CHECK(B[1] == Rat(-1, 2));
        CHECK(B[2] == Rat(1, 6));
        CHECK(B[4] == Rat(-1, 30));
        CHECK(B[12] == Rat(-691, 2730));
        CHECK(B[7] == 0);
    }

    TEST_CASE("zeta at nonpositive integers") {
        CHECK(zeta_neg(0) == Rat(-1, 2));
        CHECK(zeta_neg(-1) == Rat(-1, 12));
        CHECK(zeta_neg(-2) == 0);
        CHECK(zeta_neg(-3) == Rat(1, 120));
    }

    TEST_CASE("zeta2 against reference digits") {
        BigFloat z2 = named_constant("zeta2", 256);
        // spec value: 1.64493406684822643647...
        BigFloat ref("1.64493406684822643647241516665", 256);
        CHECK(abs(z2 - ref) < pow10(-28, 256));
    }

    TEST_CASE("zeta3 against reference digits") {
        BigFloat z3 = named_constant("zeta3", 256);
        BigFloat ref("1.20205690315959428540", 256);
        CHECK(abs(z3 - ref) < pow10(-19, 256));
    }

    TEST_CASE("L(chi3,3) equals its closed form") {
        mpfr_prec_t p = 320;
        BigFloat L = named_constant("L_chi3_3", p);
        BigFloat pi = named_constant("pi", p);
        BigFloat closed = BigFloat(4, p) * pi * pi * pi / (BigFloat(81, p) * named_constant("sqrt(3)", p));
        CHECK(ulp_distance(L, closed) < BigFloat(64L, 64));
    }

    TEST_CASE("dual-method agreement scales with precision") {
        for (mpfr_prec_t p : {128, 512, 1024}) {
            CHECK_NOTHROW(named_constant("pi", p));
            CHECK_NOTHROW(named_constant("zeta3", p));
            CHECK_NOTHROW(named_constant("log2", p));
        }
    }

    TEST_CASE("hurwitz zeta basic identities") {
        mpfr_prec_t p = 256;
        // zeta(s, 1/2) = (2^s - 1) zeta(s)
        BigFloat lhs = hurwitz_zeta(3, Rat(1, 2), p);
        BigFloat rhs = BigFloat(7, p) * named_constant("zeta3", p);
        CHECK(abs(lhs - rhs) < pow10(-70, p));
        // zeta(2, 1/3) + zeta(2, 2/3) = (9 - 1) zeta(2)
        BigFloat s = hurwitz_zeta(2, Rat(1, 3), p) + hurwitz_zeta(2, Rat(2, 3), p);
        CHECK(abs(s - BigFloat(8, p) * named_constant("zeta2", p)) < pow10(-70, p));
    }

    TEST_CASE("unknown name rejected") {
        CHECK_THROWS_AS(named_constant("zeta9000", 64), std::domain_error);
    }
}
