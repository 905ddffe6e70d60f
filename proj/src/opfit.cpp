#include "apery/opfit.hpp"

#include <stdexcept>

namespace apery {

namespace {

// Fraction-free (Bareiss) echelon form; returns rank and records pivot columns.
long bareiss_rank(std::vector<std::vector<Int>>& m, std::vector<long>& pivot_cols) {
    long rows = static_cast<long>(m.size());
    long cols = rows ? static_cast<long>(m[0].size()) : 0;
    Int denom = 1;
    long rank = 0;
    for (long c = 0; c < cols && rank < rows; ++c) {
        long piv = -1;
        for (long i = rank; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (long i = rank + 1; i < rows; ++i) {
            for (long j = c + 1; j < cols; ++j) {
                Int t = m[rank][c] * m[i][j] - m[i][c] * m[rank][j];
                m[i][j] = t / denom;  // Bareiss: division is exact
            }
            m[i][c] = 0;
        }
        denom = m[rank][c];
        pivot_cols.push_back(c);
        ++rank;
    }
    return rank;
}

}  // namespace

FitResult fit_operator(const RationalSequence& u, long r, long d, long guard) {
    if (r < 1 || d < 0 || guard < 0) throw std::domain_error("fit_operator: bad shape");
    long unknowns = (d + 1) * (r + 1);
    long rows = unknowns + guard;
    if (static_cast<long>(u.size()) < rows)
        throw std::domain_error("fit_operator: need at least (d+1)(r+1)+guard terms");
    if (u[0] == 0) throw std::domain_error("fit_operator: u_0 must be nonzero");

    // constraint m: sum_{i,j} beta_ij (m-i)^j u_{m-i} = 0
    std::vector<std::vector<Int>> mat(rows, std::vector<Int>(unknowns, Int(0)));
    for (long m = 0; m < rows; ++m) {
        std::vector<Rat> row(unknowns, Rat(0));
        Int den = 1;
        for (long i = 0; i <= d; ++i) {
            if (m - i < 0) continue;
            Rat base = u[m - i];
            Rat pw(1);
            for (long j = 0; j <= r; ++j) {
                row[i * (r + 1) + j] = base * pw;
                pw *= Rat(m - i);
            }
        }
        for (const auto& c : row) den = lcm(den, Int(c.get_den()));
        for (long j = 0; j < unknowns; ++j) mat[m][j] = Int(Rat(row[j] * den).get_num());
    }

    std::vector<long> pivots;
    auto echelon = mat;
    long rank = bareiss_rank(echelon, pivots);
    long nullity = unknowns - rank;
    if (nullity == 0) return NotFound{};

    // Back-substitute one nullspace vector per free column, exactly.
    std::vector<bool> is_pivot(unknowns, false);
    for (long c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> null_basis;
    for (long fc = 0; fc < unknowns; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rat> v(unknowns, Rat(0));
        v[fc] = 1;
        for (long i = rank - 1; i >= 0; --i) {
            long pc = pivots[i];
            Rat s(0);
            for (long j = pc + 1; j < unknowns; ++j)
                if (echelon[i][j] != 0) s += Rat(echelon[i][j]) * v[j];
            v[pc] = -s / Rat(echelon[i][pc]);
        }
        null_basis.push_back(std::move(v));
    }

    auto to_op = [&](const std::vector<Rat>& v) {
        std::vector<std::vector<Rat>> beta(d + 1, std::vector<Rat>(r + 1, Rat(0)));
        for (long i = 0; i <= d; ++i)
            for (long j = 0; j <= r; ++j) beta[i][j] = v[i * (r + 1) + j];
        return DiffOperator(beta).normalized();
    };

    if (nullity > 1) {
        AmbiguousFit amb;
        for (const auto& v : null_basis) amb.basis.push_back(to_op(v));
        return amb;
    }

    DiffOperator L = to_op(null_basis[0]);
    // verification over the full supplied prefix
    auto g = apply_to_series(L, u);
    for (const auto& c : g.terms)
        if (c != 0) return NotFound{};
    return L;
}

}  // namespace apery
