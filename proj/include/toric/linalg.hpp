#ifndef TORIC_LINALG_HPP
#define TORIC_LINALG_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "toric/arith.hpp"
#include "toric/lattice.hpp"

namespace toric {

struct EchelonForm {
    std::vector<RatVector> rows; // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form over Q.
inline EchelonForm rational_rref(std::vector<RatVector> rows) {
    EchelonForm out;
    if (rows.empty()) return out;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Rational inv = Rational(1) / rows[r][c];
        for (std::size_t j = c; j < cols; ++j) rows[r][j] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

/// Unique solution x of A·x = b, or nullopt when inconsistent or
/// underdetermined.
inline std::optional<RatVector> solve_unique(const std::vector<RatVector>& a, const RatVector& b) {
    if (a.empty()) return std::nullopt;
    const std::size_t cols = a.front().size();
    std::vector<RatVector> aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        RatVector row = a[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    EchelonForm e = rational_rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
    if (e.pivots.size() != cols) return std::nullopt;
    RatVector x(cols);
    for (std::size_t i = 0; i < cols; ++i) x[i] = e.rows[i][cols];
    return x;
}

/// Basis of the rational nullspace of an integer matrix, each vector scaled
/// to a primitive integer vector.
///
/// Elimination is fraction-free (Bareiss) so intermediate entries stay
/// bounded by minors of the input. The returned basis is the reduced echelon
/// basis of the nullspace (one vector per free column, unit at that column in
/// the rational form), so it depends only on the nullspace itself.
inline std::vector<IntVector> integer_nullspace(const IntMatrix& input) {
    IntMatrix m = input;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
            m(i, c) = 0;
        }
        prev = m(r, c);
        pivots.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<IntVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVector x(cols, Rational(0));
        x[free] = 1;
        for (std::size_t k = pivots.size(); k-- > 0;) {
            const std::size_t pc = pivots[k];
            Rational acc = 0;
            for (std::size_t j = pc + 1; j < cols; ++j) {
                if (x[j] != 0 && m(k, j) != 0) acc += Rational(m(k, j)) * x[j];
            }
            x[pc] = -acc / Rational(m(k, pc));
        }
        basis.push_back(clear_denominators(x));
    }

    // Canonical form: RREF of the basis, then primitive rows with positive
    // leading entry.
    std::vector<RatVector> as_rat;
    for (const auto& v : basis) {
        RatVector q;
        for (const auto& z : v) q.emplace_back(z);
        as_rat.push_back(std::move(q));
    }
    EchelonForm e = rational_rref(std::move(as_rat));
    std::vector<IntVector> out;
    for (const auto& row : e.rows) out.push_back(clear_denominators(row));
    return out;
}

} // namespace toric

#endif // TORIC_LINALG_HPP
