#pragma once

// Test fixtures: the five Laurent polynomials built from their factored
// forms, independently of the expanded [phi] blocks in the case files, and
// the reference Picard-Fuchs operators entered as raw beta matrices.

#include <map>
#include <string>

#include "apery/diffop.hpp"
#include "apery/laurent.hpp"

namespace apery::testcases {

inline DiffOperator op(const std::string& id) {
    auto R = [](std::vector<long> v) {
        std::vector<Rat> r;
        for (long c : v) r.emplace_back(c);
        return r;
    };
    // rows: t-degree i; cols: delta-degree j
    if (id == "a3" || id == "v12")
        return DiffOperator({R({0, 0, 0, 1}), R({-5, -27, -51, -34}), R({1, 3, 3, 1})});
    if (id == "b3" || id == "v10")
        return DiffOperator({R({0, 0, 0, 1}), R({-6, -34, -66, -44}), R({-12, -44, -48, -16})});
    if (id == "v14")
        return DiffOperator({R({0, 0, 0, 1}), R({-4, -21, -39, -26}), R({-24, -78, -81, -27})});
    if (id == "v16")
        return DiffOperator({R({0, 0, 0, 1}), R({-4, -20, -36, -24}), R({16, 48, 48, 16})});
    if (id == "v18")
        return DiffOperator({R({0, 0, 0, 1}), R({-3, -15, -27, -18}), R({-27, -81, -81, -27})});
    if (id == "a2")
        return DiffOperator({R({0, 0, 1}), R({-3, -11, -11}), R({-1, -2, -1})});
    if (id == "p2")  // delta^2 - 3t(3delta+1)(3delta+2)
        return DiffOperator({R({0, 0, 1}), R({-6, -27, -27})});
    throw std::domain_error("testcases::op: unknown id " + id);
}

inline LaurentPolynomial lin3(Rat c0, Rat c1, Rat c2, Rat c3) {
    LaurentPolynomial p(3);
    p.add_term({0, 0, 0}, c0);
    p.add_term({1, 0, 0}, c1);
    p.add_term({0, 1, 0}, c2);
    p.add_term({0, 0, 1}, c3);
    return p;
}

inline LaurentPolynomial mono3(long a, long b, long c, Rat coef = Rat(1)) {
    LaurentPolynomial p(3);
    p.add_term({a, b, c}, coef);
    return p;
}

// p / (-x1 x2 x3)
inline LaurentPolynomial div_neg_xyz(const LaurentPolynomial& p) {
    return multiply(p, mono3(-1, -1, -1, Rat(-1)));
}

inline LaurentPolynomial phi(const std::string& id) {
    using L = LaurentPolynomial;
    if (id == "v10") {
        // (1-x3)(1-x1-x3)(1-x2-x3)(1-x1-x2-x3) / (-x1x2x3)
        L a = lin3(1, 0, 0, -1), b = lin3(1, -1, 0, -1);
        L c = lin3(1, 0, -1, -1), d = lin3(1, -1, -1, -1);
        return div_neg_xyz(multiply(multiply(a, b), multiply(c, d)));
    }
    if (id == "v12") {
        // (1-x1)(1-x2)(1-x3)(1-x1-x2+x1x2-x1x2x3) / (-x1x2x3)
        L a = lin3(1, -1, 0, 0), b = lin3(1, 0, -1, 0), c = lin3(1, 0, 0, -1);
        L d = add(lin3(1, -1, -1, 0), add(mono3(1, 1, 0), mono3(1, 1, 1, Rat(-1))));
        return div_neg_xyz(multiply(multiply(a, b), multiply(c, d)));
    }
    if (id == "v14") {
        // (1-x1-x2-x3){(1-x2-x3)(1-x3)^2 - x2(1-x1-x2-x3)} / (-x1x2x3)
        L a = lin3(1, -1, -1, -1);
        L w = lin3(1, 0, 0, -1);
        L inner = add(multiply(lin3(1, 0, -1, -1), multiply(w, w)),
                      scale(multiply(mono3(0, 1, 0), a), Rat(-1)));
        return div_neg_xyz(multiply(a, inner));
    }
    if (id == "v16") {
        // (1-x1-x2-x3)(1-x1)(1-x2)(1-x3) / (-x1x2x3)
        L a = lin3(1, -1, -1, -1), b = lin3(1, -1, 0, 0);
        L c = lin3(1, 0, -1, 0), d = lin3(1, 0, 0, -1);
        return div_neg_xyz(multiply(multiply(a, b), multiply(c, d)));
    }
    if (id == "v18") {
        // (x1+x2+x3)(x1+x2+x3-x1x2-x2x3-x1x3+x1x2x3) / (-x1x2x3)
        L s = lin3(0, 1, 1, 1);
        L t = add(s, add(mono3(1, 1, 0, Rat(-1)),
                         add(mono3(0, 1, 1, Rat(-1)),
                             add(mono3(1, 0, 1, Rat(-1)), mono3(1, 1, 1)))));
        return div_neg_xyz(multiply(s, t));
    }
    throw std::domain_error("testcases::phi: unknown id " + id);
}

}  // namespace apery::testcases
