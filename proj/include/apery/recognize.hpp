#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "apery/bigfloat.hpp"

namespace apery {

// Ordered basis of constants for symbolic recognition. Values are recomputable
// at any precision through the generator, so verdicts can be re-verified at
// doubled precision.
struct ConstantBasis {
    std::vector<std::string> labels;
    std::function<BigFloat(const std::string&, mpfr_prec_t)> value;

    std::vector<BigFloat> values(mpfr_prec_t prec) const;
    // default: 1, zeta2, zeta3, pi^3/sqrt3, log 2
    static ConstantBasis standard();
    static ConstantBasis from_labels(const std::vector<std::string>& labels);
};

// Nonzero integer vector c with |sum c_i x_i| below the detection threshold
// and max |c_i| <= max_height, found by LLL on the scaled relation lattice.
// Returns nullopt when no vector survives verification.
std::optional<std::vector<Int>> integer_relation(const std::vector<BigFloat>& x, long max_height,
                                                 mpfr_prec_t precision);

struct Recognition {
    std::vector<std::pair<Rat, std::string>> combo;  // x = sum q_i * label_i
    std::string pretty;                              // e.g. "1/10 * zeta2"
    std::vector<Int> relation;
};

// Runs integer_relation on (x, basis values), re-verifies at doubled
// precision; an ambiguous second relation of comparable height makes the
// verdict a failure (both candidates reported in the exception message).
std::optional<Recognition> recognize_constant(const BigFloat& x, const ConstantBasis& basis,
                                              long max_height);

struct AmbiguousRecognition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace apery
