#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "apery/casebook.hpp"
#include "apery/constants.hpp"
#include "apery/lattice.hpp"
#include "apery/opfit.hpp"

using namespace apery;

namespace {

CaseSpec find_case(const std::string& dir, const std::string& id) {
    for (auto& c : load_casebook(dir))
        if (c.id == id) return c;
    throw CLI::ValidationError("case", "unknown case id: " + id);
}

int run_periods(const std::string& dir, const std::string& id, long terms, bool no_prune) {
    auto c = find_case(dir, id);
    RationalSequence a;
    if (c.phi) {
        a = case_period_sequence(c, terms, !no_prune);
    } else if (c.expected_operator) {
        a = solve_homogeneous(*c.expected_operator, terms);
    } else {
        throw CLI::ValidationError("case", "case has neither phi nor operator");
    }
    for (size_t i = 0; i < a.size(); ++i) std::cout << (i ? " " : "") << a[i].get_str();
    std::cout << "\n";
    return 0;
}

int run_fit(const std::string& dir, const std::string& id, bool use_stdin, long r, long d,
            long guard) {
    RationalSequence u;
    if (use_stdin) {
        std::string tok;
        while (std::cin >> tok) u.terms.push_back(parse_rat(tok));
    } else {
        auto c = find_case(dir, id);
        long need = (d + 1) * (r + 1) + guard;
        u = c.phi ? case_period_sequence(c, need)
                  : solve_homogeneous(*c.expected_operator, need);
    }
    auto res = fit_operator(u, r, d, guard);
    if (const DiffOperator* L = fit_found(res)) {
        std::cout << L->str() << "\n";
        return 0;
    }
    if (std::holds_alternative<AmbiguousFit>(res)) {
        std::cout << "ambiguous fit; nullspace basis:\n";
        for (const auto& b : std::get<AmbiguousFit>(res).basis) std::cout << "  " << b.str() << "\n";
        return 1;
    }
    std::cout << "no operator of order " << r << ", degree " << d << " found\n";
    return 1;
}

int run_limit(const std::string& dir, const std::string& id, long terms, long bits) {
    auto c = find_case(dir, id);
    if (!c.expected_operator) throw CLI::ValidationError("case", "case has no operator");
    auto a = solve_homogeneous(*c.expected_operator, terms);
    auto b = solve_inhomogeneous(*c.expected_operator, {Rat(0), Rat(1)}, terms);
    auto lim = apery_limit(a, b, bits);
    int digits = static_cast<int>(bits * 0.30103) - 2;
    std::cout << lim.value.str_fixed(digits) << "\n";
    std::cout << "error ~ " << lim.error_estimate.str_sci(4)
              << ", convergence ratio ~ " << lim.convergence_ratio.str_sci(8) << "\n";
    return 0;
}

int run_thnf(const std::string& dir, const std::string& id, long k, int digits) {
    auto c = find_case(dir, id);
    if (!c.thnf) throw CLI::ValidationError("case", "case has no THNF method");
    ThnfValue v;
    if (*c.thnf == ThnfMethod::Quadrature2D || *c.thnf == ThnfMethod::Quadrature3D) {
        ThnfProblem p;
        p.method = *c.thnf;
        p.phi = *c.phi;
        p.drop_var = c.drop_var;
        p.region = IntegrationRegion::named(c.region_name);
        v = thnf_coefficient(p, k, digits);
        std::cout << "v_" << k << " = ";
    } else {
        if (k != 0) throw CLI::ValidationError("coeff", "closed-form cases expose V(0) only");
        v = thnf_v0_closed(*c.thnf, digits);
        std::cout << "V(0) = ";
    }
    std::cout << v.value.re.str_fixed(digits);
    if (!v.value.im.is_zero()) std::cout << " + " << v.value.im.str_fixed(digits) << " i";
    std::cout << "   (error ~ " << v.error.str_sci(3) << ")\n";
    return 0;
}

int run_recognize(const std::string& value, const std::string& basis_csv, long height) {
    std::string text = value;
    if (std::ifstream f(value); f) std::getline(f, text);
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(text.size() * 3.33) + 16;
    BigFloat x(text, prec);
    std::vector<std::string> labels;
    std::stringstream ss(basis_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) labels.push_back(tok);
    auto rec = recognize_constant(x, ConstantBasis::from_labels(labels), height);
    if (!rec) {
        std::cout << "no relation found at height " << height << "\n";
        return 1;
    }
    std::cout << rec->pretty << "\n";
    return 0;
}

int run_polytope(const std::string& dir, const std::string& id, const std::string& check) {
    auto c = find_case(dir, id);
    if (!c.phi) throw CLI::ValidationError("case", "case has no Laurent polynomial");
    auto np = newton_polytope(*c.phi);
    if (check == "reflexive") {
        bool r = is_reflexive(np);
        std::cout << (r ? "reflexive" : "not reflexive") << "\n";
        return r == c.expect_reflexive.value_or(r) ? 0 : 1;
    }
    if (check == "volume") {
        std::cout << normalized_volume(np).get_str() << "\n";
        return 0;
    }
    if (check == "tempered") {
        auto rep = is_tempered_2d(*c.phi);
        for (const auto& e : rep.edges) {
            std::cout << "edge (" << e.from[0] << "," << e.from[1] << ")-(" << e.to[0] << ","
                      << e.to[1] << "): ";
            for (size_t i = 0; i < e.poly.size(); ++i)
                std::cout << (i ? " + " : "") << e.poly[i].get_str() << (i ? "*u^" + std::to_string(i) : "");
            std::cout << "  -> " << (e.cyclotomic ? "cyclotomic" : "NOT cyclotomic") << "\n";
        }
        std::cout << (rep.tempered ? "tempered" : "not tempered") << "\n";
        return 0;
    }
    throw CLI::ValidationError("check", "expected reflexive|tempered|volume");
}

int run_verify(const std::string& dir, const std::string& id, const std::string& report_path,
               long terms, long bits, int tol_digits, int thnf_digits) {
    VerifyOptions opt;
    opt.terms = terms;
    opt.precision = bits;
    opt.tol_digits = tol_digits;
    opt.thnf_digits = thnf_digits;
    std::vector<CaseSpec> cases;
    if (id == "all") {
        cases = load_casebook(dir);
        std::sort(cases.begin(), cases.end(),
                  [](const CaseSpec& a, const CaseSpec& b) { return a.id < b.id; });
    } else {
        cases.push_back(find_case(dir, id));
    }
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    bool all_pass = true;
    std::string first_fail;
    for (const auto& c : cases) {
        auto rep = verify_case(c, opt);
        out.push_back(rep.to_json());
        std::cout << (rep.pass ? "[PASS] " : "[FAIL] ") << c.id;
        for (const auto& chk : rep.checks)
            if (!chk.skipped && !chk.pass) {
                std::cout << "  <- " << chk.name;
                if (first_fail.empty()) first_fail = c.id + "/" + chk.name;
            }
        std::cout << "\n";
        all_pass = all_pass && rep.pass;
    }
    if (!report_path.empty()) {
        std::ofstream f(report_path);
        f << out.dump(2) << "\n";
    }
    if (!all_pass) std::cout << "FAILED: " << first_fail << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Landau-Ginzburg period sequences, Picard-Fuchs operators, and Apery constants"};
    app.require_subcommand(1);
    std::string dir = "cases";
    app.add_option("--cases", dir, "case directory")->capture_default_str();

    std::string id, value, basis = "one,zeta2,zeta3,pi3_over_sqrt3,log2", check, report;
    long terms = 25, r = 3, d = 2, guard = 10, bits = 256, k = 0, height = 10000;
    int digits = 30, tol_digits = 20, thnf_digits = 24;
    bool no_prune = false, from_stdin = false;

    auto* periods = app.add_subcommand("periods", "constant-term period sequence");
    periods->add_option("case", id)->required();
    periods->add_option("--terms", terms)->capture_default_str();
    periods->add_flag("--no-prune", no_prune);

    auto* fit = app.add_subcommand("fit", "recover the Picard-Fuchs operator");
    fit->add_option("case", id);
    fit->add_flag("--stdin", from_stdin, "read the sequence from standard input");
    fit->add_option("--order", r)->capture_default_str();
    fit->add_option("--degree", d)->capture_default_str();
    fit->add_option("--guard", guard)->capture_default_str();

    auto* limit = app.add_subcommand("limit", "Apery limit of b_k/a_k");
    limit->add_option("case", id)->required();
    limit->add_option("--terms", terms)->capture_default_str();
    limit->add_option("--precision", bits)->capture_default_str();

    auto* thnf = app.add_subcommand("thnf", "THNF Taylor coefficient / V(0)");
    thnf->add_option("case", id)->required();
    thnf->add_option("--coeff", k)->capture_default_str();
    thnf->add_option("--digits", digits)->capture_default_str();

    auto* rec = app.add_subcommand("recognize", "symbolic recognition over a constant basis");
    rec->add_option("--value", value, "decimal literal or file")->required();
    rec->add_option("--basis", basis)->capture_default_str();
    rec->add_option("--height", height)->capture_default_str();

    auto* poly = app.add_subcommand("polytope", "Newton polytope checks");
    poly->add_option("case", id)->required();
    poly->add_option("--check", check)->required();

    long vterms = 400, vbits = 512;
    auto* verify = app.add_subcommand("verify", "run the full verification pipeline");
    verify->add_option("case", id, "case id or `all`")->required();
    verify->add_option("--report", report, "write a JSON report");
    verify->add_option("--terms", vterms)->capture_default_str();
    verify->add_option("--precision", vbits)->capture_default_str();
    verify->add_option("--tolerance-digits", tol_digits)->capture_default_str();
    verify->add_option("--thnf-digits", thnf_digits)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (periods->parsed()) return run_periods(dir, id, terms, no_prune);
        if (fit->parsed()) return run_fit(dir, id, from_stdin, r, d, guard);
        if (limit->parsed()) return run_limit(dir, id, terms, bits);
        if (thnf->parsed()) return run_thnf(dir, id, k, digits);
        if (rec->parsed()) return run_recognize(value, basis, height);
        if (poly->parsed()) return run_polytope(dir, id, check);
        if (verify->parsed())
            return run_verify(dir, id, report, vterms, vbits, tol_digits, thnf_digits);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
