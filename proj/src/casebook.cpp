#include "apery/casebook.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "apery/constants.hpp"
#include "apery/lattice.hpp"
#include "apery/opfit.hpp"

namespace apery {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

CaseKind kind_from(const std::string& s) {
    if (s == "fano") return CaseKind::Fano;
    if (s == "recurrence") return CaseKind::Recurrence;
    if (s == "pencil") return CaseKind::Pencil;
    if (s == "polygon") return CaseKind::Polygon;
    throw std::runtime_error("unknown case kind: " + s);
}

std::string kind_to(CaseKind k) {
    switch (k) {
        case CaseKind::Fano: return "fano";
        case CaseKind::Recurrence: return "recurrence";
        case CaseKind::Pencil: return "pencil";
        case CaseKind::Polygon: return "polygon";
    }
    return "?";
}

std::pair<Rat, std::string> parse_limit_expr(const std::string& s) {
    size_t star = s.find('*');
    if (star == std::string::npos) throw std::runtime_error("expected `q * label`: " + s);
    Rat q = parse_rat(trim(s.substr(0, star)));
    std::string label = trim(s.substr(star + 1));
    if (label.empty()) throw std::runtime_error("empty constant label in: " + s);
    return {q, label};
}

}  // namespace

RationalSequence case_period_sequence(const CaseSpec& c, long K, bool prune) {
    if (!c.phi) throw std::domain_error("case has no Laurent polynomial: " + c.id);
    long stride = c.metadata.step;
    long rawK = K * stride;
    RationalSequence raw;
    if (prune) {
        auto np = newton_polytope(*c.phi);
        raw = constant_term_sequence(*c.phi, rawK, np.full_dim ? &np : nullptr);
    } else {
        raw = constant_term_sequence(*c.phi, rawK);
    }
    if (stride == 1) return raw;
    RationalSequence out;
    for (long m = 0; m * stride <= rawK; ++m) out.terms.push_back(raw[m * stride]);
    return out;
}

CaseSpec load_case(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open case file: " + path);
    CaseSpec c;
    c.source_path = path;
    std::string section, line, op_text;
    std::vector<std::pair<std::vector<long>, Rat>> monomials;
    int lineno = 0;
    bool saw_case = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = t.substr(1, t.size() - 2);
            if (section == "case") saw_case = true;
            continue;
        }
        if (section == "case" || section == "expect" || section == "metadata") {
            size_t eq = t.find('=');
            if (eq == std::string::npos) parse_fail(path, lineno, "expected key = value");
            std::string key = trim(t.substr(0, eq)), val = trim(t.substr(eq + 1));
            try {
                if (section == "case") {
                    if (key == "id") c.id = val;
                    else if (key == "kind") c.kind = kind_from(val);
                    else if (key == "nvars") c.num_vars = std::stoi(val);
                    else parse_fail(path, lineno, "unknown [case] key: " + key);
                } else if (section == "expect") {
                    if (key == "limit") c.expected_limit = parse_limit_expr(val);
                    else if (key == "reflexive") c.expect_reflexive = (val == "true");
                    else if (key == "tempered") c.expect_tempered = (val == "Y" || val == "true");
                    else if (key == "volume") c.expect_volume = Int(val);
                    else if (key == "sequence") {
                        std::stringstream ss(val);
                        std::string tok;
                        while (std::getline(ss, tok, ',')) c.expect_sequence.push_back(parse_rat(trim(tok)));
                    } else parse_fail(path, lineno, "unknown [expect] key: " + key);
                } else {
                    if (key == "D") c.metadata.D = Int(val);
                    else if (key == "M") c.metadata.M = parse_rat(val);
                    else if (key == "r") c.metadata.r = AlgebraicNumber::parse(val);
                    else if (key == "kappa") c.metadata.kappa = AlgebraicNumber::parse(val);
                    else if (key == "step") c.metadata.step = std::stol(val);
                    else if (key == "thnf") c.thnf = thnf_method_from_string(val);
                    else if (key == "region") c.region_name = val;
                    else if (key == "drop_var") c.drop_var = std::stoi(val) - 1;  // file is 1-based
                    else parse_fail(path, lineno, "unknown [metadata] key: " + key);
                }
            } catch (const std::exception& e) {
                parse_fail(path, lineno, e.what());
            }
        } else if (section == "phi") {
            std::stringstream ss(t);
            std::string coef;
            ss >> coef;
            std::vector<long> exps;
            long e;
            while (ss >> e) exps.push_back(e);
            if (static_cast<int>(exps.size()) != c.num_vars)
                parse_fail(path, lineno, "monomial arity != nvars");
            try {
                monomials.emplace_back(exps, parse_rat(coef));
            } catch (const std::exception& ex) {
                parse_fail(path, lineno, ex.what());
            }
        } else if (section == "operator") {
            op_text += t;
        } else {
            parse_fail(path, lineno, "content outside any known section");
        }
    }
    if (!saw_case || c.id.empty()) parse_fail(path, 0, "missing [case] section or id");
    if (!monomials.empty()) {
        LaurentPolynomial phi(c.num_vars);
        for (auto& [e, q] : monomials) phi.add_term(e, q);
        if (phi.is_zero()) parse_fail(path, 0, "[phi] sums to zero");
        c.phi = phi;
    }
    if (!op_text.empty()) {
        try {
            c.expected_operator = DiffOperator::parse(op_text);
        } catch (const std::exception& e) {
            parse_fail(path, 0, std::string("bad [operator]: ") + e.what());
        }
    }

    // on-load invariants
    if (c.expected_operator && c.phi && c.kind != CaseKind::Polygon) {
        auto a = case_period_sequence(c, 25);
        auto g = apply_to_series(*c.expected_operator, a);
        for (size_t m = 0; m < g.size(); ++m)
            if (g[m] != 0)
                throw std::runtime_error(path + ": on-load check failed: expected operator "
                                         "does not annihilate the period sequence at index " +
                                         std::to_string(m));
    }
    if (!c.expect_sequence.empty() && c.phi) {
        auto a = case_period_sequence(c, static_cast<long>(c.expect_sequence.size()) - 1);
        for (size_t i = 0; i < c.expect_sequence.size(); ++i)
            if (a[i] != c.expect_sequence[i])
                throw std::runtime_error(path + ": on-load check failed: sequence anchor " +
                                         std::to_string(i));
    }
    return c;
}

std::vector<CaseSpec> load_casebook(const std::string& dir) {
    std::vector<std::string> paths;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".case") paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    std::vector<CaseSpec> out;
    for (const auto& p : paths) out.push_back(load_case(p));
    return out;
}

namespace {

std::string fx(const BigFloat& v, int digits) { return v.str_fixed(digits); }

std::string complex_str(const BigComplex& z, int digits) {
    return z.re.str_fixed(digits) + (z.im.sign() < 0 ? " - " : " + ") +
           abs(z.im).str_fixed(digits) + "i";
}

std::string exps_str(const ExponentSet& e) {
    if (!e.regular_singular) return "irregular";
    std::vector<std::string> parts;
    for (const auto& x : e.exact) parts.push_back(x.str());
    std::sort(parts.begin(), parts.end());
    for (const auto& z : e.numeric) parts.push_back(complex_str(z, 12));
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
    return out;
}

}  // namespace

nlohmann::ordered_json AperyReport::to_json(bool with_timings) const {
    nlohmann::ordered_json j;
    j["case"] = case_id;
    j["kind"] = kind;
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["status"] = c.skipped ? "skipped" : (c.pass ? "pass" : "fail");
        if (!c.detail.empty()) e["detail"] = c.detail;
        cs.push_back(e);
    }
    j["checks"] = cs;
    if (!sequence_prefix.empty()) j["sequence_prefix"] = sequence_prefix;
    if (!fitted_operator.empty()) j["fitted_operator"] = fitted_operator;
    if (!singular_locus.empty()) {
        j["singular_locus"] = singular_locus;
        j["normal_conifold"] = normal_conifold;
    }
    if (!exponents_zero.empty()) j["local_exponents_zero"] = exponents_zero;
    if (!exponents_infinity.empty()) j["local_exponents_infinity"] = exponents_infinity;
    if (!b_prefix.empty()) j["b_prefix"] = b_prefix;
    if (!limit_value.empty()) {
        j["apery_limit"] = limit_value;
        j["apery_limit_error"] = limit_error;
        j["convergence_ratio"] = convergence_ratio;
    }
    if (!v_coefficients.empty()) j["v_coefficients"] = v_coefficients;
    if (!kappa_numeric.empty()) {
        j["kappa"] = kappa_numeric;
        j["kappa_rounded"] = kappa_rounded;
        j["kappa_margin"] = kappa_margin;
    }
    if (!vhat0_re.empty()) {
        j["vhat0_re"] = vhat0_re;
        j["vhat0_im"] = vhat0_im;
    }
    if (!recognized.empty()) j["recognized"] = recognized;
    if (!expected_limit.empty()) j["expected_limit"] = expected_limit;
    j["pass"] = pass;
    if (with_timings) {
        nlohmann::ordered_json tm;
        for (const auto& [k, v] : timings_ms) tm[k] = v;
        j["timings_ms"] = tm;
    }
    return j;
}

AperyReport verify_case(const CaseSpec& c, const VerifyOptions& opt) {
    AperyReport rep;
    rep.case_id = c.id;
    rep.kind = kind_to(c.kind);
    mpfr_prec_t prec = opt.precision;
    BigFloat tol = pow10(-opt.tol_digits, prec);
    int out_digits = std::min<int>(60, static_cast<int>(prec * 0.3) - 5);

    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, false, detail});
        return pass;
    };
    auto skip = [&](const std::string& name, const std::string& why) {
        rep.checks.push_back({name, false, true, why});
    };
    auto timed = [&](const std::string& name, const std::function<void()>& f) {
        Timer t;
        f();
        rep.timings_ms.emplace_back(name, t.ms());
    };

    // -------------------------------------------------------------- polygon
    if (c.kind == CaseKind::Polygon) {
        timed("polytope", [&] {
            auto np = newton_polytope(*c.phi);
            bool refl = is_reflexive(np);
            add("polytope-reflexive", !c.expect_reflexive || refl == *c.expect_reflexive,
                refl ? "reflexive" : "not reflexive");
            if (c.expect_volume) {
                Int vol = normalized_volume(np);
                add("polytope-volume", vol == *c.expect_volume, vol.get_str());
            }
            if (c.expect_tempered) {
                auto tr = is_tempered_2d(*c.phi);
                std::string detail;
                for (const auto& e : tr.edges)
                    detail += std::string(e.cyclotomic ? "Y" : "N");
                add("polytope-tempered", tr.tempered == *c.expect_tempered,
                    "edge verdicts " + detail);
            }
        });
        rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                               [](const CheckResult& r) { return r.skipped || r.pass; });
        return rep;
    }

    // ------------------------------------------------- stage 1: period sequence
    RationalSequence a_seed;
    long seedK = std::max<long>(40, static_cast<long>(c.expect_sequence.size()));
    if (c.phi) {
        timed("period-sequence", [&] {
            a_seed = case_period_sequence(c, seedK);
            bool ok = a_seed[0] == 1;
            std::string det = "a_0..a_7:";
            for (size_t i = 0; i < std::min<size_t>(8, a_seed.size()); ++i) {
                det += " " + a_seed[i].get_str();
                rep.sequence_prefix.push_back(a_seed[i].get_str());
            }
            for (size_t i = 0; i < c.expect_sequence.size(); ++i)
                ok = ok && a_seed[i] == c.expect_sequence[i];
            add("period-sequence", ok, det);
        });
    } else {
        skip("period-sequence", "recurrence-only case");
    }

    // ------------------------------------------------- stage 2: operator fit
    DiffOperator L = c.expected_operator ? *c.expected_operator
                                         : DiffOperator({{Rat(0), Rat(1)}});
    bool have_L = c.expected_operator.has_value();
    timed("operator-fit", [&] {
        long r = 3, d = 2;
        if (c.kind == CaseKind::Pencil) { r = 2; d = 1; }
        if (c.expected_operator) {
            r = c.expected_operator->order();
            d = c.expected_operator->degree();
        }
        RationalSequence u = a_seed;
        if (!c.phi && have_L) u = solve_homogeneous(L, 40);
        auto res = fit_operator(u, r, d, opt.fit_guard);
        const DiffOperator* f = fit_found(res);
        if (!f) {
            add("operator-fit", false, "no operator found at the expected shape");
            return;
        }
        rep.fitted_operator = f->str();
        if (have_L) {
            add("operator-fit", *f == L, "fit " + rep.fitted_operator);
        } else {
            L = *f;
            have_L = true;
            add("operator-fit", true, "fit " + rep.fitted_operator);
        }
    });
    if (!have_L) {
        rep.pass = false;
        return rep;
    }

    // ------------------------------- stage 3: locus, conifold flag, exponents
    SingularLocus locus;
    timed("singular-locus", [&] {
        locus = singular_locus(L, prec);
        for (const auto& sp : locus.finite)
            rep.singular_locus.push_back((sp.exact ? sp.exact->str() : complex_str(sp.approx, 20)) +
                                         " (|.| = " + sp.modulus.str_fixed(12) + ")");
        bool conifold = !locus.finite.empty();
        if (locus.finite.size() >= 2) {
            const auto& top = locus.finite.back();
            const auto& next = locus.finite[locus.finite.size() - 2];
            conifold = cmp(top.modulus, next.modulus) > 0;
        }
        rep.normal_conifold = conifold;
        add("normal-conifold", conifold,
            conifold ? "unique largest-modulus finite singular point" : "modulus tie at the top");

        auto e0 = local_exponents(L, ExpPoint::zero(), prec);
        rep.exponents_zero.push_back(exps_str(e0));
        bool mum = e0.regular_singular && e0.numeric.empty();
        if (mum)
            for (const auto& x : e0.exact) mum = mum && x.is_zero();
        add("mum-at-zero", mum, "exponents at 0: " + exps_str(e0));
        auto einf = local_exponents(L, ExpPoint::infinity(), prec);
        rep.exponents_infinity.push_back(exps_str(einf));
        add("exponents-at-infinity", einf.regular_singular, exps_str(einf));
    });

    if (c.kind == CaseKind::Pencil) {
        for (const char* s : {"apery-limit", "thnf", "kappa", "central-equality", "recognition"})
            skip(s, "pencil case stops at the operator level");
        rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                               [](const CheckResult& r) { return r.skipped || r.pass; });
        return rep;
    }

    // --------------------------------------------- stage 4: sequences + limit
    AperyLimitResult lim;
    bool lim_ok = false;
    timed("apery-limit", [&] {
        auto a = solve_homogeneous(L, opt.terms);
        auto b = solve_inhomogeneous(L, {Rat(0), Rat(1)}, opt.terms);
        if (c.phi) {
            // the operator route must reproduce the constant-term route
            for (long k = 0; k < static_cast<long>(a_seed.size()); ++k)
                if (a[k] != a_seed[k]) {
                    add("apery-limit", false, "operator/constant-term sequence mismatch");
                    return;
                }
        }
        for (size_t i = 0; i < std::min<size_t>(6, b.size()); ++i)
            rep.b_prefix.push_back(b[i].get_str());
        lim = apery_limit(a, b, prec);
        rep.limit_value = fx(lim.value, out_digits);
        rep.limit_error = lim.error_estimate.str_sci(4);
        rep.convergence_ratio = lim.convergence_ratio.str_sci(10);
        lim_ok = true;
        std::string det = "b_K/a_K = " + fx(lim.value, 30) + "..., err ~ " + rep.limit_error;
        bool ok = lim.monotone_decay;
        // fitted rho against |sigma_min| / |sigma_next| when both exist
        if (locus.finite.size() >= 2) {
            BigFloat expect = locus.finite.front().modulus / locus.finite.back().modulus;
            BigFloat rel = abs(lim.convergence_ratio.round_to(prec) - expect) / expect;
            ok = ok && rel < BigFloat(Rat(1, 10), prec);
            det += ", rho within 10% of |s_min/s_max|";
        }
        add("apery-limit", ok, det);
    });
    if (!lim_ok) {
        rep.pass = false;
        return rep;
    }

    // ----------------------------------------------------- stages 5-7: THNF
    std::optional<BigComplex> vhat0;
    if (c.kind == CaseKind::Recurrence || !opt.with_thnf || !c.thnf) {
        skip("thnf", "no geometric side for this case");
        skip("kappa", "no geometric side for this case");
        skip("vhat0", "no geometric side for this case");
    } else if (*c.thnf == ThnfMethod::Quadrature2D || *c.thnf == ThnfMethod::Quadrature3D) {
        ThnfValue v0, v1;
        timed("thnf", [&] {
            ThnfProblem pr;
            pr.method = *c.thnf;
            pr.phi = *c.phi;
            pr.drop_var = c.drop_var;
            pr.region = IntegrationRegion::named(c.region_name);
            v0 = thnf_coefficient(pr, 0, opt.thnf_digits);
            int d1 = std::min(opt.thnf_digits, 16);  // v1 only feeds the kappa certificate
            v1 = thnf_coefficient(pr, 1, d1);
            rep.v_coefficients.push_back(complex_str(v0.value, out_digits));
            rep.v_coefficients.push_back(complex_str(v1.value, 16));
            add("thnf", true,
                "v0 = " + complex_str(v0.value, 20) + ", v1 = " + complex_str(v1.value, 12));
        });
        timed("kappa", [&] {
            mpfr_prec_t wp = prec;
            std::vector<BigFloat> v{v0.value.re.round_to(wp), v1.value.re.round_to(wp)};
            BigFloat unc = (v0.error.round_to(wp) + v1.error.round_to(wp)) * BigFloat(200L, wp) +
                           pow10(-std::min(opt.thnf_digits, 16) - 1, wp);
            auto kap = inhomogeneous_constant(L, v, unc);
            rep.kappa_numeric = fx(kap.value, 20);
            rep.kappa_rounded = kap.rounded ? kap.rounded->get_str() : "(none)";
            rep.kappa_margin = kap.margin.str_sci(4);
            bool ok = kap.rounded.has_value() && kap.certified;
            add("kappa", ok, "kappa = " + rep.kappa_numeric + " ~ " + rep.kappa_rounded +
                                 ", margin " + rep.kappa_margin);
            if (ok) {
                BigComplex kc(BigFloat(*kap.rounded, prec));
                auto vh = normalize_thnf({v0.value}, kc, L);
                vhat0 = vh[0];
            }
        });
    } else {
        ThnfValue v0;
        timed("thnf", [&] {
            v0 = thnf_v0_closed(*c.thnf, opt.thnf_digits);
            rep.v_coefficients.push_back(complex_str(v0.value, out_digits));
            add("thnf", true, "V(0) = " + complex_str(v0.value, 20));
        });
        timed("kappa", [&] {
            AlgebraicNumber kap;
            if (c.metadata.kappa) {
                kap = *c.metadata.kappa;
            } else if (c.metadata.D && c.metadata.r) {
                kap = AlgebraicNumber::rational(Rat(*c.metadata.D)) / *c.metadata.r;
            } else {
                add("kappa", false, "no kappa metadata for a closed-form case");
                return;
            }
            if (c.metadata.D && c.metadata.r) {
                AlgebraicNumber expect = AlgebraicNumber::rational(Rat(*c.metadata.D)) /
                                         *c.metadata.r;
                if (!(expect == kap)) {
                    add("kappa", false, "metadata kappa != D/r");
                    return;
                }
            }
            rep.kappa_numeric = kap.str();
            rep.kappa_rounded = kap.str();
            rep.kappa_margin = "exact";
            add("kappa", true, "kappa = " + kap.str() + " (metadata D/r)");
            auto vh = normalize_thnf({v0.value}, kap.embed(prec), L);
            vhat0 = vh[0];
        });
    }

    if (vhat0) {
        rep.vhat0_re = fx(vhat0->re, out_digits);
        rep.vhat0_im = vhat0->im.str_sci(4);
        BigFloat diff = abs(lim.value.round_to(prec) - vhat0->re.round_to(prec));
        BigFloat imag = abs(vhat0->im);
        bool ok = diff < tol && imag < tol;
        add("central-equality", ok,
            "|alpha - Vhat(0)| = " + diff.str_sci(4) + ", |Im| = " + imag.str_sci(4) +
                ", tol = 1e-" + std::to_string(opt.tol_digits));
    } else if (c.kind != CaseKind::Recurrence && opt.with_thnf && c.thnf) {
        add("central-equality", false, "Vhat(0) unavailable");
    } else {
        skip("central-equality", "no geometric side for this case");
    }

    // ------------------------------------------------- stage 9: recognition
    timed("recognition", [&] {
        if (!c.expected_limit) {
            skip("recognition", "no expected limit registered");
            return;
        }
        mpfr_prec_t rp = std::min<mpfr_prec_t>(prec, 256);
        try {
            auto rec = recognize_constant(lim.value.round_to(rp), ConstantBasis::standard(),
                                          10000);
            const auto& [q, label] = *c.expected_limit;
            BigFloat expect = BigFloat(q, prec) * named_constant(label, prec);
            bool numeric_ok = abs(lim.value.round_to(prec) - expect) < tol;
            rep.expected_limit = q.get_str() + " * " + label;
            if (!rec) {
                add("recognition", false, "no relation found");
                return;
            }
            rep.recognized = rec->pretty;
            // the recognized combination must evaluate to the same constant
            BigFloat recval(0L, prec);
            for (const auto& [qq, lbl] : rec->combo)
                recval = recval + BigFloat(qq, prec) * named_constant(lbl, prec);
            bool rec_ok = abs(recval - expect) < tol;
            add("recognition", numeric_ok && rec_ok,
                "recognized " + rec->pretty + ", expected " + rep.expected_limit);
        } catch (const AmbiguousRecognition& e) {
            add("recognition", false, e.what());
        }
    });

    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& r) { return r.skipped || r.pass; });
    return rep;
}

}  // namespace apery
