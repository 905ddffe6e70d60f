#pragma once

#include <string>
#include <vector>

#include "apery/bigfloat.hpp"

namespace apery {

// Bernoulli numbers B_0..B_n (exact); B_1 = -1/2.
const std::vector<Rat>& bernoulli_upto(size_t n);

// Hurwitz zeta(s, a) for integer s >= 2 and rational a in (0, 1], by
// Euler-Maclaurin with the tail bounded below the target precision.
BigFloat hurwitz_zeta(long s, const Rat& a, mpfr_prec_t prec);

// Riemann zeta at integer s >= 2 (Euler-Maclaurin route).
BigFloat zeta_em(long s, mpfr_prec_t prec);

// zeta(s) at any integer s <= 1 except s = 1, as an exact rational.
Rat zeta_neg(long s);

// Named constants, each computed by two independent methods that must agree
// to within 4 ulps (internal consistency failure otherwise).
//   names: "one", "pi", "zeta2", "zeta3", "L_chi3_3", "log2",
//          "sqrt(n)" for a positive integer n, "pi3_over_sqrt3"
BigFloat named_constant(const std::string& name, mpfr_prec_t prec);

}  // namespace apery
