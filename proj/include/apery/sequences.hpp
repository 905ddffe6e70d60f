#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "apery/bigcomplex.hpp"
#include "apery/diffop.hpp"

namespace apery {

// P_0(m) = 0 blocks the forward recursion at index m.
struct Obstructed : std::runtime_error {
    long index;
    explicit Obstructed(long m)
        : std::runtime_error("recursion obstructed: P0(" + std::to_string(m) + ") = 0"),
          index(m) {}
};

// Unique solution with u_0 = 1 of the homogeneous recurrence of L, exact.
RationalSequence solve_homogeneous(const DiffOperator& L, long K);

// Unique solution of L(.) = g (a polynomial, coefficients low -> high) whose
// terms vanish below the lowest degree of g.
RationalSequence solve_inhomogeneous(const DiffOperator& L, const RatPoly& g, long K);

struct AperyLimitResult {
    BigFloat value;             // b_K / a_K at full precision
    long terms_used = 0;
    BigFloat error_estimate;    // geometric-tail model fitted on the increments
    BigFloat convergence_ratio; // fitted rho
    bool monotone_decay = false;
    std::optional<BigFloat> accelerated;  // single Richardson step when rho is stable
};

AperyLimitResult apery_limit(const RationalSequence& a, const RationalSequence& b,
                             mpfr_prec_t precision);

// kappa = -sum_{i=0}^{d-1} P_i(d-1-i) v_{d-1-i}, the negated t^(d-1)
// coefficient of L V, plus a continued-fraction rounding certificate.
struct KappaResult {
    BigFloat value;
    std::optional<Rat> rounded;
    BigFloat margin;   // certified gap over the numeric uncertainty
    bool certified = false;
};
KappaResult inhomogeneous_constant(const DiffOperator& L, const std::vector<BigFloat>& v,
                                   const BigFloat& uncertainty);

// V-hat = (P_0(d-1) / kappa) V termwise; kappa = 0 is the torsion case.
std::vector<BigComplex> normalize_thnf(const std::vector<BigComplex>& v, const BigComplex& kappa,
                                       const DiffOperator& L);

}  // namespace apery
