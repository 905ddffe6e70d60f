#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apery/rational.hpp"

namespace apery {

using LatticePoint = std::vector<long>;  // length = ambient dimension

struct Facet {
    std::vector<long> normal;  // primitive
    long offset;               // facet = { x : <normal, x> >= -offset }
};

// Convex lattice polytope with both vertex and facet descriptions. For
// degenerate (non-full-dimensional) input only the vertex list is kept.
struct LatticePolytope {
    int dim = 0;  // ambient dimension
    std::vector<LatticePoint> vertices;
    std::vector<Facet> facets;
    bool full_dim = false;
};

// Polar dual; vertices can be rational, so it is carried separately and only
// converts to a LatticePolytope when every vertex is integral.
struct PolarDual {
    int dim = 0;
    std::vector<std::vector<Rat>> vertices;
    bool is_lattice = false;
    LatticePolytope as_lattice() const;  // throws when !is_lattice
};

// Exact convex hull of integer points, dimensions 1..3.
LatticePolytope hull_of(int dim, const std::vector<LatticePoint>& pts);

PolarDual polar_dual(const LatticePolytope& p);
bool is_reflexive(const LatticePolytope& p);
// n! * euclidean volume, exact.
Int normalized_volume(const LatticePolytope& p);

bool contains(const LatticePolytope& p, const LatticePoint& x);
std::vector<LatticePoint> lattice_points_in(const LatticePolytope& p);
std::vector<LatticePoint> interior_lattice_points(const LatticePolytope& p);

// One edge of a 2-d Newton polygon with the restricted polynomial written in
// the primitive edge parameter.
struct EdgeReport {
    LatticePoint from, to;
    std::vector<Rat> poly;  // coefficients, low -> high along the edge
    bool cyclotomic = false;
};

struct TemperedReport {
    bool tempered = false;
    std::vector<EdgeReport> edges;
};

// All roots of p (integer coefficients after clearing content/monomial) are
// roots of unity, decided by exact division by cyclotomic polynomials.
bool is_cyclotomic_product(const std::vector<Rat>& poly);

class LaurentPolynomial;  // laurent.hpp
LatticePolytope newton_polytope(const LaurentPolynomial& phi);
TemperedReport is_tempered_2d(const LaurentPolynomial& phi);

}  // namespace apery
