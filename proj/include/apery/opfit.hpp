#pragma once

#include <variant>
#include <vector>

#include "apery/diffop.hpp"

namespace apery {

struct NotFound {};
struct AmbiguousFit {
    std::vector<DiffOperator> basis;
};
using FitResult = std::variant<DiffOperator, NotFound, AmbiguousFit>;

// Find L = sum beta_ij t^i delta^j of order r and degree d annihilating the
// series sum u_k t^k, by exact nullspace computation over the first
// (d+1)(r+1) + guard coefficient constraints, verified against the whole
// supplied prefix. Returned operators are normalized (beta_{0,r} = 1 when
// P_0 has full degree, primitive integer coefficients otherwise).
FitResult fit_operator(const RationalSequence& u, long r, long d, long guard = 10);

inline const DiffOperator* fit_found(const FitResult& f) {
    return std::get_if<DiffOperator>(&f);
}

}  // namespace apery
