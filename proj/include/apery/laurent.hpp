#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "apery/bigfloat.hpp"
#include "apery/lattice.hpp"
#include "apery/rational.hpp"

namespace apery {

struct RationalSequence;

// Sparse Laurent polynomial in up to 3 variables with exact rational
// coefficients. Exponent vectors are packed into 64-bit keys (21 bits per
// variable, biased) so products accumulate through a flat hash map.
class LaurentPolynomial {
  public:
    static constexpr long kExpBound = (1L << 20) - 1;

    explicit LaurentPolynomial(int num_vars = 1);

    int num_vars() const { return nvars_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // Terms sorted by packed key; coefficients never zero.
    const std::vector<std::pair<uint64_t, Rat>>& terms() const { return terms_; }

    void add_term(const std::vector<long>& exps, const Rat& c);
    Rat coefficient(const std::vector<long>& exps) const;
    Rat constant_term() const;

    static uint64_t pack(std::span<const long> exps);
    static void unpack(uint64_t key, int nvars, long* exps);
    std::vector<std::vector<long>> support() const;

    bool has_integer_coefficients() const;
    bool operator==(const LaurentPolynomial& o) const = default;

    std::string str(const std::vector<std::string>& names = {}) const;

    // Evaluate at positive points (negative exponents allowed).
    BigFloat eval(std::span<const BigFloat> x) const;

  private:
    int nvars_;
    std::vector<std::pair<uint64_t, Rat>> terms_;
    friend LaurentPolynomial multiply(const LaurentPolynomial&, const LaurentPolynomial&);
    friend LaurentPolynomial add(const LaurentPolynomial&, const LaurentPolynomial&);
    friend RationalSequence constant_term_sequence(const LaurentPolynomial&, long,
                                                   const LatticePolytope*);
};

LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g);
LaurentPolynomial add(const LaurentPolynomial& f, const LaurentPolynomial& g);
LaurentPolynomial scale(const LaurentPolynomial& f, const Rat& c);

struct RationalSequence {
    std::vector<Rat> terms;  // indexed from 0
    size_t size() const { return terms.size(); }
    Rat& operator[](size_t i) { return terms[i]; }
    const Rat& operator[](size_t i) const { return terms[i]; }
};

// a_k = [phi^k]_0 for k = 0..K by iterated multiplication. When prune is
// given (it must be newton_polytope(phi)) monomials m of phi^j with
// -m outside (K-j)*Delta are dropped; they cannot reach the constant term of
// any phi^k with k <= K.
RationalSequence constant_term_sequence(const LaurentPolynomial& phi, long K,
                                        const LatticePolytope* prune = nullptr);

// Sub-polynomial of phi^k whose exponent in var_index is zero, as a Laurent
// polynomial in the remaining variables.
LaurentPolynomial partial_constant_term(const LaurentPolynomial& phi, long k, int var_index);

// Binomial transform: the period sequence of phi + c in terms of that of phi.
RationalSequence binomial_shift(const RationalSequence& a, const Rat& c);

}  // namespace apery
