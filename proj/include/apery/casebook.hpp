#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "apery/diffop.hpp"
#include "apery/laurent.hpp"
#include "apery/recognize.hpp"
#include "apery/sequences.hpp"
#include "apery/thnf.hpp"

namespace apery {

enum class CaseKind { Fano, Recurrence, Pencil, Polygon };

struct CaseMetadata {
    std::optional<Int> D;                    // D_N
    std::optional<Rat> M;                    // M_N
    std::optional<AlgebraicNumber> r;        // r_N
    std::optional<AlgebraicNumber> kappa;    // D_N / r_N when supplied directly
    long step = 1;                           // period subsequence stride (pencil cases)
};

struct CaseSpec {
    std::string id;
    CaseKind kind = CaseKind::Fano;
    int num_vars = 3;
    std::optional<LaurentPolynomial> phi;
    std::optional<DiffOperator> expected_operator;
    std::optional<std::pair<Rat, std::string>> expected_limit;  // q * label
    std::optional<ThnfMethod> thnf;
    std::string region_name;
    int drop_var = -1;  // 0-based
    CaseMetadata metadata;
    std::optional<bool> expect_reflexive;
    std::optional<bool> expect_tempered;
    std::optional<Int> expect_volume;
    std::vector<Rat> expect_sequence;
    std::string source_path;
};

// Parse and run the on-load invariants (operator annihilates the case's
// period sequence through 25 terms when both are present).
CaseSpec load_case(const std::string& path);
std::vector<CaseSpec> load_casebook(const std::string& dir);

struct VerifyOptions {
    long terms = 400;
    mpfr_prec_t precision = 512;
    int thnf_digits = 24;
    int tol_digits = 20;  // |alpha - Vhat(0)| < 10^-tol_digits
    long fit_guard = 10;
    bool with_thnf = true;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

struct AperyReport {
    std::string case_id;
    std::string kind;
    std::vector<CheckResult> checks;
    std::vector<std::string> sequence_prefix;
    std::string fitted_operator;
    std::vector<std::string> singular_locus;  // "value (|.| = modulus)"
    bool normal_conifold = false;
    std::vector<std::string> exponents_zero, exponents_infinity;
    std::vector<std::string> b_prefix;
    std::string limit_value, limit_error, convergence_ratio;
    std::vector<std::string> v_coefficients;
    std::string kappa_numeric, kappa_rounded, kappa_margin;
    std::string vhat0_re, vhat0_im;
    std::string recognized, expected_limit;
    bool pass = false;
    std::vector<std::pair<std::string, double>> timings_ms;

    nlohmann::ordered_json to_json(bool with_timings = true) const;
};

AperyReport verify_case(const CaseSpec& c, const VerifyOptions& opt);

// The case's period sequence with the pencil stride applied.
RationalSequence case_period_sequence(const CaseSpec& c, long K, bool prune = true);

}  // namespace apery
