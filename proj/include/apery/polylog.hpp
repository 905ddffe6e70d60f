#pragma once

#include "apery/bigcomplex.hpp"

namespace apery {

// Li_n(z) for n = 2 or 3 on the closed unit disc (principal branch, continuous
// from the series on the open disc). |z| > 1 is a domain error; continuation
// is out of scope.
BigComplex polylog(int n, const BigComplex& z, mpfr_prec_t prec);

// Real-argument convenience for z in [-1, 1].
BigFloat polylog_real(int n, const BigFloat& x, mpfr_prec_t prec);

}  // namespace apery
