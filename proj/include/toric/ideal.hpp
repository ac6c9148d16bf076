#ifndef TORIC_IDEAL_HPP
#define TORIC_IDEAL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "toric/arith.hpp"
#include "toric/error.hpp"
#include "toric/lattice.hpp"

namespace toric {

/// x^plus − x^minus over variables x_0..x_l indexed like the exponent set.
struct Binomial {
    IntVector plus;
    IntVector minus;

    Integer degree() const {
        Integer d = 0;
        for (const auto& e : plus) d += e;
        return d;
    }

    IntVector difference() const {
        IntVector u(plus.size());
        for (std::size_t i = 0; i < plus.size(); ++i) u[i] = plus[i] - minus[i];
        return u;
    }

    friend bool operator==(const Binomial&, const Binomial&) = default;
};

/// Split u into u⁺ − u⁻ and put the lexicographically larger exponent
/// vector first.
inline Binomial canonical_binomial(const LatticeVector& u) {
    auto [plus, minus] = pos_neg_split(u);
    if (plus < minus) std::swap(plus, minus);
    return Binomial{std::move(plus), std::move(minus)};
}

/// Total degree ascending, then leading monomial descending.
inline void sort_binomials(std::vector<Binomial>& bs) {
    std::sort(bs.begin(), bs.end(), [](const Binomial& x, const Binomial& y) {
        Integer dx = x.degree(), dy = y.degree();
        if (dx != dy) return dx < dy;
        if (x.plus != y.plus) return x.plus > y.plus;
        return x.minus > y.minus;
    });
}

/// Largest coordinate range of A; the default enumeration bound.
inline std::int64_t default_kernel_bound(const ExponentSet& a) {
    std::int64_t spread = 1;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        auto [lo, hi] = std::minmax_element(a.begin(), a.end(),
                                            [i](const Exponent& x, const Exponent& y) { return x[i] < y[i]; });
        spread = std::max(spread, (*hi)[i] - (*lo)[i]);
    }
    return spread;
}

/// One binomial per kernel vector of the lifted matrix inside the box
/// max|u_i| <= bound.
inline std::vector<Binomial> binomials_from_kernel(const ExponentSet& a, std::int64_t bound,
                                                   std::uint64_t cell_limit = default_enumeration_cell_limit) {
    std::vector<Binomial> out;
    for (const auto& u : enumerate_kernel_vectors(lift(a), bound, cell_limit)) out.push_back(canonical_binomial(u));
    sort_binomials(out);
    return out;
}

/// x_a·x_b − x_c·x_d for every coincidence a + b = c + d of midpoints.
inline std::vector<Binomial> quadratic_binomials(const ExponentSet& a) {
    std::map<Exponent, std::vector<std::pair<std::size_t, std::size_t>>> by_sum;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i; j < a.size(); ++j) {
            Exponent s(a.dim());
            for (std::size_t r = 0; r < a.dim(); ++r) s[r] = a[i][r] + a[j][r];
            by_sum[s].emplace_back(i, j);
        }
    }
    std::vector<Binomial> out;
    for (const auto& [sum, pairs] : by_sum) {
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            for (std::size_t q = p + 1; q < pairs.size(); ++q) {
                LatticeVector u(a.size(), Integer(0));
                u[pairs[p].first] += 1;
                u[pairs[p].second] += 1;
                u[pairs[q].first] -= 1;
                u[pairs[q].second] -= 1;
                out.push_back(canonical_binomial(u));
            }
        }
    }
    sort_binomials(out);
    return out;
}

/// True iff A⁺u = A⁺v, i.e. x^u − x^v lies in the toric ideal.
inline bool is_toric_binomial(const ExponentSet& a, const IntVector& u, const IntVector& v) {
    if (u.size() != a.size() || v.size() != a.size())
        throw Error(ErrorKind::LengthMismatch, "exponent vectors must have " + std::to_string(a.size()) + " entries");
    LiftedMatrix m = lift(a);
    return mat_vec(m, u) == mat_vec(m, v);
}

/// Exact value of the binomial at φ_A(t).
inline Rational residual_at(const Binomial& b, const ExponentSet& a, const RatVector& t) {
    if (t.size() != a.dim())
        throw Error(ErrorKind::LengthMismatch, "torus point has " + std::to_string(t.size()) + " coordinates, expected " +
                                                   std::to_string(a.dim()));
    if (b.plus.size() != a.size() || b.minus.size() != a.size())
        throw Error(ErrorKind::LengthMismatch, "binomial length differs from the exponent set size");
    for (const auto& c : t)
        if (c == 0) throw Error(ErrorKind::ZeroCoordinate, "torus point has a zero coordinate");
    Rational lhs = 1, rhs = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational x = 1;
        for (std::size_t r = 0; r < a.dim(); ++r) x *= ipow(t[r], a[i][r]);
        if (b.plus[i] != 0) lhs *= ipow(x, to_int64(b.plus[i]));
        if (b.minus[i] != 0) rhs *= ipow(x, to_int64(b.minus[i]));
    }
    return lhs - rhs;
}

inline std::string format_monomial(const IntVector& e, const std::vector<std::string>& labels = {}) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += i < labels.size() ? labels[i] : "x" + std::to_string(i);
        if (e[i] != 1) out += "^" + e[i].str();
    }
    return out.empty() ? "1" : out;
}

/// "x0*x2^2 - x1^3", or with labels "a*b - c*g".
inline std::string format_binomial(const Binomial& b, const std::vector<std::string>& labels = {}) {
    return format_monomial(b.plus, labels) + " - " + format_monomial(b.minus, labels);
}

} // namespace toric

#endif // TORIC_IDEAL_HPP
