#include "doctest.h"

#include <cstdlib>
#include <fstream>

#include "apery/casebook.hpp"
#include "testcases.hpp"

using namespace apery;

namespace {

std::string case_dir() {
    const char* env = std::getenv("APERY_CASE_DIR");
    return env ? env : "cases";
}

}  // namespace

TEST_SUITE("casebook") {
    TEST_CASE("registry completeness and on-load checks") {
        auto cases = load_casebook(case_dir());
        std::vector<std::string> ids;
        for (const auto& c : cases) ids.push_back(c.id);
        for (const char* want : {"v10", "v12", "v14", "v16", "v18", "a2", "a3", "b3",
                                 "p2-elliptic", "polygon-ex32-1", "polygon-ex32-2",
                                 "polygon-ex32-3", "polygon-ex32-4", "polygon-ex32-5",
                                 "polygon-ex32-6"})
            CHECK(std::find(ids.begin(), ids.end(), want) != ids.end());
    }

    TEST_CASE("case phis match the factored-form constructions") {
        for (const char* id : {"v10", "v12", "v14", "v16", "v18"}) {
            auto c = load_case(case_dir() + "/" + id + ".case");
            REQUIRE(c.phi.has_value());
            CHECK(*c.phi == testcases::phi(id));
            REQUIRE(c.expected_operator.has_value());
            CHECK(*c.expected_operator == testcases::op(id));
        }
    }

    TEST_CASE("v12 case carries the A3 data") {
        auto c = load_case(case_dir() + "/v12.case");
        REQUIRE(c.expected_limit.has_value());
        CHECK(c.expected_limit->first == Rat(1, 6));
        CHECK(c.expected_limit->second == "zeta3");
        CHECK(c.thnf == ThnfMethod::Quadrature3D);
    }

    TEST_CASE("a2 case: pure recurrence with the (A2) operator") {
        auto c = load_case(case_dir() + "/a2.case");
        CHECK(c.kind == CaseKind::Recurrence);
        CHECK(!c.phi.has_value());
        REQUIRE(c.expected_operator.has_value());
        CHECK(*c.expected_operator == testcases::op("a2"));
    }

    TEST_CASE("pencil stride extracts the elliptic sequence") {
        auto c = load_case(case_dir() + "/p2-elliptic.case");
        CHECK(c.metadata.step == 3);
        auto a = case_period_sequence(c, 3);
        CHECK(a.terms == std::vector<Rat>{1, 6, 90, 1680});
    }

    TEST_CASE("malformed files produce detailed parse errors") {
        std::string bad = "/tmp/apery-bad.case";
        {
            std::ofstream f(bad);
            f << "[case]\nid = broken\nkind = fano\nnvars = 3\n[phi]\n1 0 0\n";
        }
        CHECK_THROWS_WITH_AS(load_case(bad), doctest::Contains("monomial arity"),
                             std::runtime_error);
        {
            std::ofstream f(bad);
            f << "[case]\nid = broken\nkind = nonsense\n";
        }
        CHECK_THROWS_AS(load_case(bad), std::runtime_error);
        {
            // operator that does not annihilate the sequence: on-load failure
            std::ofstream f(bad);
            f << "[case]\nid = broken\nkind = pencil\nnvars = 2\n[phi]\n1 1 0\n1 0 1\n"
                 "1 -1 -1\n[operator]\nD^2 - 5*t - 27*t*D - 27*t*D^2\n";
        }
        CHECK_THROWS_WITH_AS(load_case(bad), doctest::Contains("annihilate"),
                             std::runtime_error);
        std::remove(bad.c_str());
    }

    TEST_CASE("verify: recurrence-only a3 passes with geometric stages skipped") {
        auto c = load_case(case_dir() + "/a3.case");
        VerifyOptions opt;
        opt.terms = 120;
        opt.precision = 320;
        opt.tol_digits = 20;
        auto rep = verify_case(c, opt);
        CHECK(rep.pass);
        int skipped = 0;
        for (const auto& chk : rep.checks) {
            if (chk.skipped) ++skipped;
            if (chk.name == "period-sequence") CHECK(chk.skipped);
            if (chk.name == "thnf") CHECK(chk.skipped);
            if (chk.name == "recognition") CHECK(!chk.skipped);
        }
        CHECK(skipped >= 4);
        CHECK(rep.recognized == "1/6 * zeta3");
    }

    TEST_CASE("verify: polygon fixtures") {
        for (int n = 1; n <= 6; ++n) {
            auto c = load_case(case_dir() + "/polygon-ex32-" + std::to_string(n) + ".case");
            VerifyOptions opt;
            auto rep = verify_case(c, opt);
            CHECK(rep.pass);
        }
    }

    TEST_CASE("verify: pencil case") {
        auto c = load_case(case_dir() + "/p2-elliptic.case");
        VerifyOptions opt;
        auto rep = verify_case(c, opt);
        CHECK(rep.pass);
        CHECK(rep.fitted_operator == testcases::op("p2").str());
    }

    TEST_CASE("verify: v14 end to end at reduced settings") {
        auto c = load_case(case_dir() + "/v14.case");
        VerifyOptions opt;
        opt.terms = 150;
        opt.precision = 320;
        opt.tol_digits = 16;
        opt.thnf_digits = 18;
        auto rep = verify_case(c, opt);
        for (const auto& chk : rep.checks)
            if (!chk.skipped) {
                CAPTURE(chk.name);
                CAPTURE(chk.detail);
                CHECK(chk.pass);
            }
        CHECK(rep.pass);
        CHECK(rep.kappa_rounded == "7");
        CHECK(rep.recognized == "1/7 * zeta2");
        // the emitted JSON carries every schema key for a full pipeline run
        auto j = rep.to_json();
        for (const char* key :
             {"case", "kind", "checks", "sequence_prefix", "fitted_operator", "singular_locus",
              "normal_conifold", "local_exponents_zero", "local_exponents_infinity", "b_prefix",
              "apery_limit", "apery_limit_error", "convergence_ratio", "v_coefficients", "kappa",
              "kappa_rounded", "kappa_margin", "vhat0_re", "vhat0_im", "recognized",
              "expected_limit", "pass", "timings_ms"}) {
            CAPTURE(key);
            CHECK(j.contains(key));
        }
    }

    TEST_CASE("b3 and v10 share operator and limit") {
        auto b3 = load_case(case_dir() + "/b3.case");
        auto v10 = load_case(case_dir() + "/v10.case");
        CHECK(*b3.expected_operator == *v10.expected_operator);
        CHECK(b3.expected_limit == v10.expected_limit);
    }

    TEST_CASE("doubling the precision moves the limit only within the error bound") {
        auto c = load_case(case_dir() + "/a3.case");
        VerifyOptions lo, hi;
        lo.terms = hi.terms = 120;
        lo.precision = 256;
        hi.precision = 512;
        lo.tol_digits = hi.tol_digits = 20;
        auto r1 = verify_case(c, lo);
        auto r2 = verify_case(c, hi);
        mpfr_prec_t p = 512;
        BigFloat v1(r1.limit_value, p), v2(r2.limit_value, p);
        BigFloat e1(r1.limit_error, p);
        CHECK(abs(v1 - v2) <= e1 + pow10(-70, p));
    }

    TEST_CASE("reports are deterministic apart from timings") {
        auto c = load_case(case_dir() + "/a2.case");
        VerifyOptions opt;
        opt.terms = 80;
        opt.precision = 256;
        opt.tol_digits = 12;
        auto r1 = verify_case(c, opt);
        auto r2 = verify_case(c, opt);
        CHECK(r1.to_json(false).dump() == r2.to_json(false).dump());
        CHECK(r1.to_json(true).contains("timings_ms"));
    }
}
