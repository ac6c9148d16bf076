#ifndef TORIC_LATTICE_HPP
#define TORIC_LATTICE_HPP

// Exact integer linear algebra over exponent matrices: the lift with a row
// of ones, rank, saturated integer kernels and bounded kernel enumeration.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "toric/arith.hpp"
#include "toric/error.hpp"

namespace toric {

using Exponent = std::vector<std::int64_t>;

/// Ordered list of distinct integer vectors m_0..m_l in Z^n. Column i of the
/// associated matrix is m_i.
class ExponentSet {
public:
    ExponentSet() = default;

    ExponentSet(std::size_t n, std::vector<Exponent> vectors) : n_(n), vectors_(std::move(vectors)) {
        if (n_ == 0) throw Error(ErrorKind::InvalidInput, "ambient dimension must be positive");
        if (vectors_.empty()) throw Error(ErrorKind::InvalidInput, "exponent set is empty");
        std::set<Exponent> seen;
        for (std::size_t i = 0; i < vectors_.size(); ++i) {
            if (vectors_[i].size() != n_)
                throw Error(ErrorKind::InvalidInput, "exponent " + std::to_string(i) + " has " +
                                                         std::to_string(vectors_[i].size()) + " entries, expected " +
                                                         std::to_string(n_));
            if (!seen.insert(vectors_[i]).second)
                throw Error(ErrorKind::InvalidInput, "exponent " + std::to_string(i) + " is repeated");
        }
    }

    /// Convenience for one-dimensional sets such as {0, 2, 3}.
    static ExponentSet univariate(std::initializer_list<std::int64_t> values) {
        std::vector<Exponent> v;
        for (auto x : values) v.push_back({x});
        return ExponentSet(1, std::move(v));
    }

    std::size_t dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return vectors_.size(); }
    const Exponent& operator[](std::size_t i) const { return vectors_[i]; }
    const std::vector<Exponent>& vectors() const noexcept { return vectors_; }

    auto begin() const noexcept { return vectors_.begin(); }
    auto end() const noexcept { return vectors_.end(); }

    friend bool operator==(const ExponentSet&, const ExponentSet&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Exponent> vectors_;
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

    static IntMatrix from_rows(const std::vector<IntVector>& rows) {
        if (rows.empty()) return {};
        IntMatrix m(rows.size(), rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_) throw Error(ErrorKind::LengthMismatch, "ragged matrix rows");
            for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
        }
        return m;
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(std::size_t r) const {
        return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }

    IntVector column(std::size_t c) const {
        IntVector out;
        out.reserve(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
        return out;
    }

    IntMatrix transposed() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

using LatticeVector = IntVector;
/// (1+n) x (1+l) matrix whose first row is all ones.
using LiftedMatrix = IntMatrix;

inline IntVector mat_vec(const IntMatrix& m, const IntVector& u) {
    if (u.size() != m.cols())
        throw Error(ErrorKind::LengthMismatch,
                    "vector of length " + std::to_string(u.size()) + " against " + std::to_string(m.cols()) + " columns");
    IntVector out(m.rows(), Integer(0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * u[c];
    return out;
}

inline bool is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

/// Column matrix of A with a row of ones on top.
inline LiftedMatrix lift(const ExponentSet& a) {
    LiftedMatrix m(a.dim() + 1, a.size());
    for (std::size_t c = 0; c < a.size(); ++c) {
        m(0, c) = 1;
        for (std::size_t r = 0; r < a.dim(); ++r) m(r + 1, c) = a[c][r];
    }
    return m;
}

/// Rank over Q by Bareiss fraction-free elimination.
inline std::size_t rank(const IntMatrix& input) {
    IntMatrix m = input;
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(r, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            for (std::size_t j = c + 1; j < m.cols(); ++j) m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
            m(i, c) = 0;
        }
        prev = m(r, c);
        ++r;
    }
    return r;
}

namespace detail {

// floor division for mpz (boost's operator/ truncates toward zero)
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

/// Row-style Hermite normal form of the lattice spanned by the rows; zero
/// rows are dropped. Pivots are positive and entries above a pivot lie in
/// [0, pivot).
inline std::vector<IntVector> hermite_rows(std::vector<IntVector> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        for (;;) {
            // smallest nonzero |entry| in column c among rows r..
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                if (best == rows.size() || boost::multiprecision::abs(rows[i][c]) < boost::multiprecision::abs(rows[best][c]))
                    best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Integer q = floor_div(rows[i][c], rows[r][c]);
                for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r >= rows.size() || rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (auto& x : rows[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(rows[i][c], rows[r][c]);
            if (q != 0)
                for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

inline void normalize_sign(IntVector& v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        return;
    }
}

} // namespace detail

/// Z-basis of ker(M) ∩ Z^cols.
///
/// Integer column operations reduce M to a column echelon form M·U = [H | 0]
/// with U unimodular; the trailing columns of U span the integer kernel. The
/// basis is then put in Hermite normal form, which depends only on the
/// lattice, and sorted lexicographically with positive leading entries.
inline std::vector<LatticeVector> integer_kernel_basis(const IntMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    // Work on columns: col[j] holds (M column j ; U column j).
    std::vector<IntVector> col(cols, IntVector(rows + cols, Integer(0)));
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t r = 0; r < rows; ++r) col[j][r] = m(r, j);
        col[j][rows + j] = 1;
    }
    std::size_t p = 0;
    for (std::size_t r = 0; r < rows && p < cols; ++r) {
        for (;;) {
            std::size_t best = cols;
            for (std::size_t j = p; j < cols; ++j) {
                if (col[j][r] == 0) continue;
                if (best == cols || boost::multiprecision::abs(col[j][r]) < boost::multiprecision::abs(col[best][r])) best = j;
            }
            if (best == cols) break;
            std::swap(col[p], col[best]);
            bool done = true;
            for (std::size_t j = p + 1; j < cols; ++j) {
                if (col[j][r] == 0) continue;
                Integer q = detail::floor_div(col[j][r], col[p][r]);
                for (std::size_t i = 0; i < rows + cols; ++i) col[j][i] -= q * col[p][i];
                if (col[j][r] != 0) done = false;
            }
            if (done) break;
        }
        if (col[p][r] != 0) ++p;
    }
    std::vector<IntVector> basis;
    for (std::size_t j = p; j < cols; ++j) basis.emplace_back(col[j].begin() + static_cast<std::ptrdiff_t>(rows), col[j].end());
    basis = detail::hermite_rows(std::move(basis));
    for (auto& v : basis) detail::normalize_sign(v);
    std::sort(basis.begin(), basis.end());
    return basis;
}

inline constexpr std::uint64_t default_enumeration_cell_limit = 100'000'000;

/// All nonzero u with M·u = 0 and max|u_i| <= bound, one per ± pair (the
/// one whose first nonzero entry is positive), in lexicographic order.
inline std::vector<LatticeVector> enumerate_kernel_vectors(const IntMatrix& m, std::int64_t bound,
                                                           std::uint64_t cell_limit = default_enumeration_cell_limit) {
    if (bound < 1) throw Error(ErrorKind::InvalidInput, "kernel enumeration bound must be >= 1");
    const std::size_t cols = m.cols();
    const std::size_t rows = m.rows();
    Integer cells = boost::multiprecision::pow(Integer(2 * bound + 1), static_cast<unsigned>(cols));
    if (cells > cell_limit)
        throw Error(ErrorKind::EnumerationLimit, "search box has " + cells.str() + " cells, limit is " +
                                                     std::to_string(cell_limit));
    std::vector<LatticeVector> out;
    if (cols == 0) return out;

    std::vector<std::int64_t> entries(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) entries[r * cols + c] = to_int64(m(r, c));

    std::vector<std::int64_t> u(cols, -bound);
    std::vector<std::int64_t> image(rows, 0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) image[r] += entries[r * cols + c] * u[c];

    for (;;) {
        bool in_kernel = std::all_of(image.begin(), image.end(), [](std::int64_t x) { return x == 0; });
        if (in_kernel) {
            auto lead = std::find_if(u.begin(), u.end(), [](std::int64_t x) { return x != 0; });
            if (lead != u.end() && *lead > 0) out.emplace_back(u.begin(), u.end());
        }
        // odometer step, last coordinate fastest
        std::size_t c = cols;
        while (c > 0) {
            --c;
            if (u[c] < bound) {
                ++u[c];
                for (std::size_t r = 0; r < rows; ++r) image[r] += entries[r * cols + c];
                break;
            }
            for (std::size_t r = 0; r < rows; ++r) image[r] -= entries[r * cols + c] * 2 * bound;
            u[c] = -bound;
            if (c == 0) return out;
        }
    }
}

/// u = u⁺ − u⁻ with both parts nonnegative and disjointly supported.
inline std::pair<LatticeVector, LatticeVector> pos_neg_split(const LatticeVector& u) {
    LatticeVector plus(u.size(), Integer(0));
    LatticeVector minus(u.size(), Integer(0));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] > 0)
            plus[i] = u[i];
        else if (u[i] < 0)
            minus[i] = -u[i];
    }
    return {std::move(plus), std::move(minus)};
}

} // namespace toric

#endif // TORIC_LATTICE_HPP
