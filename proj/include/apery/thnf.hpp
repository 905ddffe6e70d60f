#pragma once

#include <string>

#include "apery/laurent.hpp"
#include "apery/quadrature.hpp"

namespace apery {

// How a case evaluates its truncated-higher-normal-function data.
enum class ThnfMethod { Quadrature2D, Quadrature3D, ClosedForm1D, Contour };

ThnfMethod thnf_method_from_string(const std::string& s);
std::string thnf_method_to_string(ThnfMethod m);

struct ThnfProblem {
    ThnfMethod method;
    LaurentPolynomial phi{3};
    int drop_var = -1;          // Quadrature2D: variable eliminated by [.]_{x^0}
    IntegrationRegion region;   // Quadrature2D / Quadrature3D
};

struct ThnfValue {
    BigComplex value{256};
    BigFloat error{256};
};

// Taylor coefficient v_k of V(t) at 0 for the quadrature-backed cases
// (2d: full Laurent polynomial [phi^k] evaluated exactly at the nodes over
// the region with the logarithmic measure; 3d: the rational cube integrand).
ThnfValue thnf_coefficient(const ThnfProblem& p, long k, int target_digits);

// V(0) for the closed-form cases: the 1-d integral 4 int_0^1 log^2 u/(1-u^2)
// and the polylog antiderivative difference on the unit-circle arc, the
// latter cross-checked against direct contour quadrature.
ThnfValue thnf_v0_closed(ThnfMethod method, int target_digits);

}  // namespace apery
