#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apery/bigcomplex.hpp"
#include "apery/laurent.hpp"
#include "apery/rational.hpp"

namespace apery {

// Quadratic algebraic number a + b sqrt(D), D a square-free integer (possibly
// negative); canonical form has D = 1 whenever b = 0.
struct AlgebraicNumber {
    Rat a{0}, b{0};
    Int D{1};

    AlgebraicNumber() = default;
    AlgebraicNumber(Rat a_, Rat b_, Int D_);
    static AlgebraicNumber rational(const Rat& q) { return AlgebraicNumber(q, 0, 1); }
    static AlgebraicNumber parse(const std::string& text);

    bool is_rational() const { return b == 0; }
    bool is_zero() const { return a == 0 && b == 0; }
    AlgebraicNumber conjugate() const { return AlgebraicNumber(a, -b, D); }
    Rat norm() const { return a * a - b * b * Rat(D); }

    // Embedding with sqrt(D) > 0 for D > 0 and sqrt(D) = i sqrt(|D|) for D < 0.
    BigComplex embed(mpfr_prec_t prec) const;
    std::string str() const;

    bool operator==(const AlgebraicNumber& o) const = default;
};

AlgebraicNumber operator+(const AlgebraicNumber& x, const AlgebraicNumber& y);
AlgebraicNumber operator-(const AlgebraicNumber& x, const AlgebraicNumber& y);
AlgebraicNumber operator*(const AlgebraicNumber& x, const AlgebraicNumber& y);
AlgebraicNumber operator/(const AlgebraicNumber& x, const AlgebraicNumber& y);

// Square-free decomposition n = s^2 * d with d square-free.
std::pair<Int, Int> square_free_part(const Int& n);

// Element of Q[t, delta_t]: beta[i][j] is the coefficient of t^i delta^j.
// P_i(T) = sum_j beta[i][j] T^j is the offset-i polynomial.
class DiffOperator {
  public:
    DiffOperator() = default;
    explicit DiffOperator(std::vector<std::vector<Rat>> beta);

    long degree() const { return static_cast<long>(beta_.size()) - 1; }  // d
    long order() const;                                                  // r
    const std::vector<std::vector<Rat>>& beta() const { return beta_; }
    const RatPoly& P(long i) const { return beta_[i]; }
    Rat P_eval(long i, const Rat& m) const { return poly_eval(beta_[i], m); }

    // Picard-Fuchs normalization: coefficient of delta^r at t = 0 is 1.
    bool pf_normalized() const;
    DiffOperator normalized() const;  // beta[0][r] = 1, or primitive integers

    std::string str() const;                       // sum of `c * t^i * D^j`
    static DiffOperator parse(const std::string&); // same flat grammar

    bool operator==(const DiffOperator& o) const = default;

  private:
    std::vector<std::vector<Rat>> beta_;  // rows: t-degree; cols: delta-degree
};

// (L1 * L2) with normal ordering: t^i P(d) t^j Q(d) = t^(i+j) P(d + j) Q(d).
DiffOperator multiply(const DiffOperator& l1, const DiffOperator& l2);

// g_m = sum_{i <= min(m,d)} P_i(m-i) u_{m-i}: coefficients of L applied to
// sum u_k t^k, valid through index len(u)-1.
RationalSequence apply_to_series(const DiffOperator& L, const RationalSequence& u);

// Recurrence view: offset polynomials m -> P_i(m - i).
struct RecurrenceScheme {
    std::vector<RatPoly> offset_polys;  // index i: polynomial in m
    RationalSequence apply(const RationalSequence& u) const;
};
RecurrenceScheme to_recurrence(const DiffOperator& L);

// The quantum recursion matrix: offset polynomials P_i(T) T(T-1)...(T-(d-i)+1).
// It annihilates the regularized sequence u_k / k! whenever L annihilates u.
DiffOperator regularized_recurrence(const DiffOperator& L);

// u_k/k! (forward) and k! u_k (inverse).
enum class FlDirection { Forward, Inverse };
RationalSequence regularize_sequence(const RationalSequence& u, FlDirection dir);

// Normal-ordered element of the Weyl algebra, sum c * s^a * ds^b.
struct WeylOp {
    std::map<std::pair<long, long>, Rat> terms;  // (a, b) -> c
    std::string str() const;
    // Coefficients of W applied to sum u_k s^k (indices that pull on u beyond
    // the supplied prefix are dropped from the returned prefix).
    RationalSequence apply_to_series(const RationalSequence& u) const;
};

// dform of L: L = sum c_{a,b} t^a d^b.
WeylOp to_dform(const DiffOperator& L);
// Fourier-Laplace substitution d -> -s, t -> ds applied to a normal-ordered
// operator, renormal-ordered; the result lives in (s, ds).
WeylOp fl_transform_weyl(const WeylOp& w);
WeylOp fl_transform_operator(const DiffOperator& L);

// Singular points
struct SingularPoint {
    std::optional<AlgebraicNumber> exact;
    BigComplex approx{64};
    BigFloat modulus{64};
};
struct SingularLocus {
    std::vector<SingularPoint> finite;  // nonzero finite singular points
    bool at_zero = true, at_infinity = true;
};
SingularLocus singular_locus(const DiffOperator& L, mpfr_prec_t prec = 128);

// Local exponents
struct ExponentSet {
    bool regular_singular = true;            // false: irregular, no exponents
    std::vector<AlgebraicNumber> exact;      // exactly determined roots
    std::vector<BigComplex> numeric;         // remaining roots, numeric only
};
struct ExpPoint {
    enum class Kind { Zero, Infinity, Finite } kind = Kind::Zero;
    AlgebraicNumber sigma;  // for Finite
    static ExpPoint zero() { return {}; }
    static ExpPoint infinity() { return {Kind::Infinity, {}}; }
    static ExpPoint finite(AlgebraicNumber s) { return {Kind::Finite, std::move(s)}; }
};
ExponentSet local_exponents(const DiffOperator& L, const ExpPoint& at, mpfr_prec_t prec = 192);

}  // namespace apery
