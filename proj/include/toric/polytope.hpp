#ifndef TORIC_POLYTOPE_HPP
#define TORIC_POLYTOPE_HPP

// Exact convex geometry of conv(A) for lattice dimension 1..3: hull,
// lattice points, volume, normalized volume, and vertex decompositions of
// non-vertex lattice points.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "toric/arith.hpp"
#include "toric/error.hpp"
#include "toric/lattice.hpp"
#include "toric/linalg.hpp"

namespace toric {

/// Half-space <normal, x> <= offset with a primitive integer normal.
struct Facet {
    Exponent normal;
    std::int64_t offset = 0;

    Integer slack(const Exponent& x) const {
        Integer s = offset;
        for (std::size_t i = 0; i < normal.size(); ++i) s -= Integer(normal[i]) * x[i];
        return s;
    }

    double slack(const std::vector<double>& x) const {
        double s = static_cast<double>(offset);
        for (std::size_t i = 0; i < normal.size(); ++i) s -= static_cast<double>(normal[i]) * x[i];
        return s;
    }

    friend bool operator==(const Facet&, const Facet&) = default;
};

struct LatticePolytope {
    std::size_t n = 0;
    /// n = 1: {min, max}; n = 2: counterclockwise from the lexicographic
    /// minimum; n = 3: lexicographic.
    std::vector<Exponent> vertices;
    std::vector<Facet> facets;

    bool contains(const Exponent& x) const {
        return std::all_of(facets.begin(), facets.end(), [&](const Facet& f) { return f.slack(x) >= 0; });
    }

    bool is_vertex(const Exponent& x) const { return std::find(vertices.begin(), vertices.end(), x) != vertices.end(); }
};

namespace detail {

inline std::vector<Integer> diff(const Exponent& a, const Exponent& b) {
    std::vector<Integer> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = Integer(a[i]) - Integer(b[i]);
    return d;
}

// (b - a) x (c - a), z-component for planar input
inline Integer cross2(const Exponent& a, const Exponent& b, const Exponent& c) {
    return (Integer(b[0]) - a[0]) * (Integer(c[1]) - a[1]) - (Integer(b[1]) - a[1]) * (Integer(c[0]) - a[0]);
}

inline std::vector<Integer> cross3(const std::vector<Integer>& u, const std::vector<Integer>& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline Integer dot(const std::vector<Integer>& u, const std::vector<Integer>& v) {
    Integer s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline Integer det3(const std::vector<Integer>& a, const std::vector<Integer>& b, const std::vector<Integer>& c) {
    return dot(a, cross3(b, c));
}

inline Exponent narrow(const IntVector& v) {
    Exponent out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_int64(x));
    return out;
}

inline std::size_t affine_rank(const ExponentSet& a) {
    if (a.size() < 2) return 0;
    IntMatrix d(a.dim(), a.size() - 1);
    for (std::size_t j = 1; j < a.size(); ++j)
        for (std::size_t r = 0; r < a.dim(); ++r) d(r, j - 1) = Integer(a[j][r]) - a[0][r];
    return rank(d);
}

inline Facet make_facet(IntVector normal, const Exponent& on) {
    normal = make_primitive(std::move(normal));
    Facet f;
    f.normal = narrow(normal);
    Integer off = 0;
    for (std::size_t i = 0; i < on.size(); ++i) off += normal[i] * on[i];
    f.offset = to_int64(off);
    return f;
}

inline LatticePolytope hull_1d(const ExponentSet& a) {
    auto [lo, hi] = std::minmax_element(a.begin(), a.end());
    LatticePolytope p;
    p.n = 1;
    p.vertices = {*lo, *hi};
    p.facets = {Facet{{-1}, -(*lo)[0]}, Facet{{1}, (*hi)[0]}};
    return p;
}

// Andrew's monotone chain; collinear points are not vertices.
inline LatticePolytope hull_2d(const ExponentSet& a) {
    std::vector<Exponent> pts = a.vectors();
    std::sort(pts.begin(), pts.end());
    std::vector<Exponent> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    LatticePolytope p;
    p.n = 2;
    p.vertices = h;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const Exponent& from = h[i];
        const Exponent& to = h[(i + 1) % h.size()];
        // outward normal of a counterclockwise edge
        IntVector normal{Integer(to[1]) - from[1], Integer(from[0]) - to[0]};
        p.facets.push_back(make_facet(std::move(normal), from));
    }
    return p;
}

// Facet planes by exhaustive triple search; desk-scale inputs only.
inline LatticePolytope hull_3d(const ExponentSet& a) {
    const auto& pts = a.vectors();
    std::map<Exponent, Facet> planes;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                auto nrm = cross3(diff(pts[j], pts[i]), diff(pts[k], pts[i]));
                if (is_zero(nrm)) continue;
                bool any_pos = false, any_neg = false;
                for (const auto& q : pts) {
                    Integer s = dot(nrm, diff(q, pts[i]));
                    if (s > 0) any_pos = true;
                    if (s < 0) any_neg = true;
                    if (any_pos && any_neg) break;
                }
                if (any_pos && any_neg) continue;
                if (any_pos)
                    for (auto& x : nrm) x = -x;
                Facet f = make_facet(std::move(nrm), pts[i]);
                planes.emplace(f.normal, f);
            }
        }
    }
    LatticePolytope p;
    p.n = 3;
    for (const auto& [key, f] : planes) p.facets.push_back(f);
    for (const auto& q : pts) {
        std::vector<IntVector> rows;
        for (const auto& f : p.facets)
            if (f.slack(q) == 0) rows.push_back({f.normal[0], f.normal[1], f.normal[2]});
        if (rows.size() >= 3 && rank(IntMatrix::from_rows(rows)) == 3) p.vertices.push_back(q);
    }
    std::sort(p.vertices.begin(), p.vertices.end());
    return p;
}

} // namespace detail

/// Convex hull of a full-dimensional exponent set (1 <= n <= 3).
inline LatticePolytope convex_hull(const ExponentSet& a) {
    if (a.dim() < 1 || a.dim() > 3)
        throw Error(ErrorKind::InvalidInput, "convex hull supports dimensions 1..3, got " + std::to_string(a.dim()));
    if (detail::affine_rank(a) < a.dim())
        throw Error(ErrorKind::DimensionDeficient,
                    "affine span of the exponent set has dimension " + std::to_string(detail::affine_rank(a)) +
                        " < " + std::to_string(a.dim()));
    switch (a.dim()) {
    case 1: return detail::hull_1d(a);
    case 2: return detail::hull_2d(a);
    default: return detail::hull_3d(a);
    }
}

/// Every integer point of P, in lexicographic order.
inline ExponentSet lattice_points(const LatticePolytope& p) {
    Exponent lo = p.vertices.front(), hi = p.vertices.front();
    for (const auto& v : p.vertices) {
        for (std::size_t i = 0; i < p.n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    std::vector<Exponent> out;
    Exponent x = lo;
    for (;;) {
        if (p.contains(x)) out.push_back(x);
        std::size_t i = p.n;
        while (i > 0) {
            --i;
            if (x[i] < hi[i]) {
                ++x[i];
                break;
            }
            x[i] = lo[i];
            if (i == 0) return ExponentSet(p.n, std::move(out));
        }
    }
}

/// Euclidean volume (length, area, volume) of a full-dimensional polytope.
inline Rational volume(const LatticePolytope& p) {
    const auto& v = p.vertices;
    if (p.n == 1) return Rational(Integer(v[1][0]) - v[0][0]);
    if (p.n == 2) {
        Integer twice = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto& a = v[i];
            const auto& b = v[(i + 1) % v.size()];
            twice += Integer(a[0]) * b[1] - Integer(b[0]) * a[1];
        }
        return Rational(twice, 2);
    }
    // Cone from the first vertex over every facet, each facet fanned into
    // triangles.
    const Exponent& apex = v.front();
    Integer six_vol = 0;
    for (const auto& f : p.facets) {
        std::vector<Exponent> on;
        for (const auto& q : v)
            if (f.slack(q) == 0) on.push_back(q);
        if (on.size() < 3 || f.slack(apex) == 0) continue;
        IntVector nrm{f.normal[0], f.normal[1], f.normal[2]};
        const Exponent base = on.front();
        std::sort(on.begin() + 1, on.end(), [&](const Exponent& x, const Exponent& y) {
            return detail::det3(nrm, detail::diff(x, base), detail::diff(y, base)) > 0;
        });
        for (std::size_t i = 1; i + 1 < on.size(); ++i) {
            Integer d = detail::det3(detail::diff(base, apex), detail::diff(on[i], apex), detail::diff(on[i + 1], apex));
            six_vol += boost::multiprecision::abs(d);
        }
    }
    return Rational(six_vol, 6);
}

/// Coordinates of A in a Z-basis of the saturated lattice (aff span of A) ∩ Z^n,
/// translated so that A[0] is the origin.
inline ExponentSet restrict_to_affine_span(const ExponentSet& a) {
    const std::size_t n = a.dim();
    const std::size_t dim = detail::affine_rank(a);
    if (dim == n) return a;
    if (dim == 0) return ExponentSet(1, {{0}});
    // normals to the span, then the integer lattice they cut out
    IntMatrix diffs_t(a.size() - 1, n);
    for (std::size_t j = 1; j < a.size(); ++j)
        for (std::size_t r = 0; r < n; ++r) diffs_t(j - 1, r) = Integer(a[j][r]) - a[0][r];
    auto normals = integer_kernel_basis(diffs_t);
    auto basis = integer_kernel_basis(IntMatrix::from_rows(normals));

    std::vector<RatVector> system(n, RatVector(basis.size()));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < basis.size(); ++c) system[r][c] = Rational(basis[c][r]);

    std::vector<Exponent> coords;
    for (const auto& m : a) {
        RatVector rhs(n);
        for (std::size_t r = 0; r < n; ++r) rhs[r] = Rational(Integer(m[r]) - a[0][r]);
        auto y = solve_unique(system, rhs);
        if (!y) throw Error(ErrorKind::InvalidInput, "point outside computed affine span");
        Exponent e;
        for (const auto& q : *y) e.push_back(to_int64(numerator_of(q)));
        coords.push_back(std::move(e));
    }
    return ExponentSet(dim, std::move(coords));
}

/// n!·Vol(conv A), computed in the lattice of the affine span of A.
inline Integer implicit_degree(const ExponentSet& a) {
    ExponentSet s = restrict_to_affine_span(a);
    if (s.size() == 1) return 1;
    LatticePolytope p = convex_hull(s);
    Rational v = volume(p);
    Integer fact = 1;
    for (std::size_t i = 2; i <= s.dim(); ++i) fact *= static_cast<unsigned>(i);
    Rational d = v * fact;
    if (denominator_of(d) != 1) throw Error(ErrorKind::InvalidInput, "normalized volume is not an integer");
    return numerator_of(d);
}

/// d_m·m = Σ d_v·v with d_m = Σ d_v; coefficients follow P.vertices and are
/// zero off the support.
struct VertexDecomposition {
    Integer multiplier;
    std::vector<Integer> coefficients;
};

/// Smallest-support positive combination of vertices equal to m, ties broken
/// by the smallest multiplier, then by vertex order.
inline VertexDecomposition vertex_decomposition(const Exponent& m, const LatticePolytope& p) {
    if (m.size() != p.n) throw Error(ErrorKind::LengthMismatch, "point dimension differs from polytope dimension");
    if (!p.contains(m)) throw Error(ErrorKind::NotInterior, "point lies outside the polytope");
    if (p.is_vertex(m)) throw Error(ErrorKind::NotInterior, "point is a vertex");

    const std::size_t nv = p.vertices.size();
    for (std::size_t size = 2; size <= std::min(p.n + 1, nv); ++size) {
        std::optional<VertexDecomposition> best;
        std::vector<std::size_t> idx(size);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            // Σ λ_j v_j = m, Σ λ_j = 1
            std::vector<RatVector> sys(p.n + 1, RatVector(size));
            RatVector rhs(p.n + 1);
            for (std::size_t j = 0; j < size; ++j) {
                sys[0][j] = 1;
                for (std::size_t r = 0; r < p.n; ++r) sys[r + 1][j] = p.vertices[idx[j]][r];
            }
            rhs[0] = 1;
            for (std::size_t r = 0; r < p.n; ++r) rhs[r + 1] = m[r];
            auto lambda = solve_unique(sys, rhs);
            if (lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rational& q) { return q > 0; })) {
                Integer den = 1;
                for (const auto& q : *lambda) den = boost::multiprecision::lcm(den, denominator_of(q));
                if (!best || den < best->multiplier) {
                    VertexDecomposition d{den, std::vector<Integer>(nv, Integer(0))};
                    for (std::size_t j = 0; j < size; ++j)
                        d.coefficients[idx[j]] = numerator_of((*lambda)[j] * den);
                    best = std::move(d);
                }
            }
            // next combination
            std::size_t i = size;
            while (i > 0 && idx[i - 1] == nv - size + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (best) return *best;
    }
    throw Error(ErrorKind::NotInterior, "no positive vertex combination found");
}

} // namespace toric

#endif // TORIC_POLYTOPE_HPP
