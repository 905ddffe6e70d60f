#pragma once

#include <functional>
#include <string>
#include <vector>

#include "apery/bigcomplex.hpp"

namespace apery {

// Integrand receives the point x plus its distances to the interval ends,
// computed without cancellation so endpoint singularities stay evaluable.
using RealFn1 = std::function<BigFloat(const BigFloat& x, const BigFloat& from_lo,
                                       const BigFloat& from_hi)>;
using ComplexFn1 = std::function<BigComplex(const BigFloat& x, const BigFloat& from_lo,
                                            const BigFloat& from_hi)>;

struct QuadOptions {
    int target_digits = 30;
    int max_level = 12;
    bool strict = true;       // throw on non-convergence (else best effort)
    mpfr_prec_t prec = 0;     // 0: derived from target_digits
};

struct QuadResult {
    BigFloat value;
    BigFloat error;   // 10x the last level-agreement gap
    int levels = 0;
    bool converged = false;
};

struct QuadResultC {
    BigComplex value;
    BigFloat error;
    int levels = 0;
    bool converged = false;
};

QuadResult tanh_sinh_1d(const RealFn1& f, const BigFloat& lo, const BigFloat& hi,
                        const QuadOptions& opt);
QuadResultC tanh_sinh_1d_complex(const ComplexFn1& f, const BigFloat& lo, const BigFloat& hi,
                                 const QuadOptions& opt);

// Integration domains used by the THNF coefficients: the unit cube, and 2-d
// regions whose inner bounds are graphs over the outer axis.
struct IntegrationRegion {
    enum class Kind { Cube3D, Graph2D };
    Kind kind = Kind::Graph2D;
    std::string name;
    // Graph2D: outer variable range [outer_lo, outer_hi]; inner bounds as
    // functions of the outer variable.
    Rat outer_lo{0}, outer_hi{1};
    std::function<BigFloat(const BigFloat&)> inner_lo, inner_hi;

    static IntegrationRegion unit_cube();
    static IntegrationRegion named(const std::string& id);  // "v10-mu", "v14-mu", "unit-cube"
};

// f(outer, inner); integrates inner first.
QuadResult tanh_sinh_2d(const std::function<BigFloat(const BigFloat&, const BigFloat&)>& f,
                        const IntegrationRegion& region, const QuadOptions& opt);
// f(x1, x2, x3) over [0,1]^3.
QuadResult tanh_sinh_3d(const std::function<BigFloat(const BigFloat&, const BigFloat&,
                                                     const BigFloat&)>& f,
                        const QuadOptions& opt);

}  // namespace apery
