#ifndef TORIC_PATCH_HPP
#define TORIC_PATCH_HPP

// Monomial parametrizations φ_A and their composition with linear
// projections given by control vectors p_i (weights times lifted control
// points). Every evaluator is templated on the scalar: Rational for exact
// verification paths, double for sampling.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "toric/arith.hpp"
#include "toric/error.hpp"
#include "toric/lattice.hpp"

namespace toric {

template <typename T>
struct ProjectivePoint {
    std::vector<T> coords;

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](const T& x) { return x == T(0); });
    }

    /// Divide by the first nonzero coordinate.
    ProjectivePoint normalized() const {
        ProjectivePoint out = *this;
        auto lead = std::find_if(coords.begin(), coords.end(), [](const T& x) { return x != T(0); });
        if (lead == coords.end()) return out;
        T s = *lead;
        for (auto& x : out.coords) x /= s;
        return out;
    }

    /// Equality up to a nonzero scalar (all 2x2 minors vanish). Exact for
    /// Rational coordinates.
    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
        if (a.coords.size() != b.coords.size()) return false;
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        for (std::size_t i = 0; i < a.coords.size(); ++i)
            for (std::size_t j = i + 1; j < a.coords.size(); ++j)
                if (a.coords[i] * b.coords[j] != a.coords[j] * b.coords[i]) return false;
        return true;
    }
};

/// Columns p_0..p_l of a linear map Q^{1+l} -> Q^{1+k}.
class ControlScheme {
public:
    ControlScheme() = default;

    explicit ControlScheme(std::vector<RatVector> points) : points_(std::move(points)) {
        if (points_.empty()) throw Error(ErrorKind::InvalidInput, "control scheme has no vectors");
        const std::size_t len = points_.front().size();
        if (len == 0) throw Error(ErrorKind::InvalidInput, "control vectors must be nonempty");
        bool any_nonzero = false;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (points_[i].size() != len)
                throw Error(ErrorKind::InvalidInput, "control vector " + std::to_string(i) + " has length " +
                                                         std::to_string(points_[i].size()) + ", expected " +
                                                         std::to_string(len));
            for (const auto& x : points_[i]) any_nonzero = any_nonzero || x != 0;
        }
        if (!any_nonzero) throw Error(ErrorKind::InvalidInput, "all control vectors are zero");
        refresh_doubles();
    }

    /// p_i = w_i·(1, b_i) from positive weights and affine control points.
    static ControlScheme from_weighted(const RatVector& weights, const std::vector<RatVector>& affine_points) {
        if (weights.size() != affine_points.size())
            throw Error(ErrorKind::LengthMismatch, "weights and control points differ in count");
        std::vector<RatVector> pts;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] <= 0)
                throw Error(ErrorKind::InvalidInput, "weight " + std::to_string(i) + " must be positive");
            RatVector p{weights[i]};
            for (const auto& b : affine_points[i]) p.push_back(weights[i] * b);
            pts.push_back(std::move(p));
        }
        return ControlScheme(std::move(pts));
    }

    /// p_i = e_i, leaving points of P^l unchanged.
    static ControlScheme identity(std::size_t size) {
        std::vector<RatVector> pts(size, RatVector(size, Rational(0)));
        for (std::size_t i = 0; i < size; ++i) pts[i][i] = 1;
        return ControlScheme(std::move(pts));
    }

    /// Keeps the coordinates listed in `kept` (in that order), dropping the rest.
    static ControlScheme forgetting(std::size_t size, const std::vector<std::size_t>& kept) {
        std::vector<RatVector> pts(size, RatVector(kept.size(), Rational(0)));
        for (std::size_t j = 0; j < kept.size(); ++j) pts.at(kept[j])[j] = 1;
        return ControlScheme(std::move(pts));
    }

    std::size_t size() const noexcept { return points_.size(); }
    /// k, the dimension of the target projective space.
    std::size_t target_dim() const noexcept { return points_.front().size() - 1; }
    const std::vector<RatVector>& points() const noexcept { return points_; }

    template <typename T>
    const std::vector<std::vector<T>>& columns() const {
        if constexpr (is_exact_v<T>)
            return points_;
        else
            return doubles_;
    }

private:
    void refresh_doubles() {
        doubles_.clear();
        for (const auto& p : points_) {
            std::vector<double> d;
            for (const auto& x : p) d.push_back(to_double(x));
            doubles_.push_back(std::move(d));
        }
    }

    std::vector<RatVector> points_;
    std::vector<std::vector<double>> doubles_;
};

/// (t^m_0, ..., t^m_l); negative exponents are exact inverses.
template <typename T>
ProjectivePoint<T> monomial_param(const ExponentSet& a, std::span<const T> t) {
    if (t.size() != a.dim())
        throw Error(ErrorKind::LengthMismatch, "parameter has " + std::to_string(t.size()) + " coordinates, expected " +
                                                   std::to_string(a.dim()));
    for (const auto& c : t)
        if (c == T(0)) throw Error(ErrorKind::ZeroCoordinate, "torus parameter has a zero coordinate");
    ProjectivePoint<T> x;
    x.coords.reserve(a.size());
    for (const auto& m : a) {
        T v(1);
        for (std::size_t r = 0; r < a.dim(); ++r) v *= ipow(t[r], m[r]);
        x.coords.push_back(std::move(v));
    }
    return x;
}

template <typename T>
ProjectivePoint<T> monomial_param(const ExponentSet& a, const std::vector<T>& t) {
    return monomial_param(a, std::span<const T>(t));
}

/// Σ x_i p_i as a vector (no basepoint check).
template <typename T>
std::vector<T> project_vector(const std::vector<T>& x, const ControlScheme& scheme) {
    if (x.size() != scheme.size())
        throw Error(ErrorKind::LengthMismatch, "point has " + std::to_string(x.size()) + " coordinates, scheme has " +
                                                   std::to_string(scheme.size()) + " vectors");
    const auto& cols = scheme.columns<T>();
    std::vector<T> out(scheme.target_dim() + 1, T(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == T(0)) continue;
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += x[i] * cols[i][j];
    }
    return out;
}

template <typename T>
ProjectivePoint<T> project(const ProjectivePoint<T>& x, const ControlScheme& scheme) {
    ProjectivePoint<T> z{project_vector(x.coords, scheme)};
    if (z.is_zero()) throw Error(ErrorKind::BasepointHit, "point lies on the center of projection");
    return z;
}

/// Projected point in homogeneous coordinates [z_0, ..., z_k].
template <typename T>
ProjectivePoint<T> patch_point(const ExponentSet& a, const ControlScheme& scheme, std::span<const T> t) {
    if (scheme.size() != a.size())
        throw Error(ErrorKind::LengthMismatch, "scheme has " + std::to_string(scheme.size()) + " vectors for " +
                                                   std::to_string(a.size()) + " exponents");
    return project(monomial_param(a, t), scheme);
}

/// (z_1/z_0, ..., z_k/z_0) in the principal affine chart.
template <typename T>
std::vector<T> patch_eval(const ExponentSet& a, const ControlScheme& scheme, std::span<const T> t) {
    ProjectivePoint<T> z = patch_point(a, scheme, t);
    if (z.coords[0] == T(0)) throw Error(ErrorKind::AtInfinity, "projected point lies on z0 = 0");
    std::vector<T> out;
    out.reserve(z.coords.size() - 1);
    for (std::size_t j = 1; j < z.coords.size(); ++j) out.push_back(z.coords[j] / z.coords[0]);
    return out;
}

template <typename T>
std::vector<T> patch_eval(const ExponentSet& a, const ControlScheme& scheme, const std::vector<T>& t) {
    return patch_eval(a, scheme, std::span<const T>(t));
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q, coefficients low to high.

using RatPoly = std::vector<Rational>;

namespace poly {

inline void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly remainder(RatPoly a, const RatPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    return a;
}

inline RatPoly monic(RatPoly p) {
    trim(p);
    if (p.empty()) return p;
    Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

/// Monic gcd; gcd(0, 0) = 0.
inline RatPoly gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a));
}

} // namespace poly

/// Common factor of the 1+k binary forms of a projected curve.
///
/// Form j is F_j(s, t) = Σ_i p_i[j] s^(D − e_i) t^(e_i) with e_i = m_i − min m
/// and D = max m − min m. Its gcd is s^s_power · g(t) with g monic.
struct BasepointReport {
    std::size_t form_degree = 0;
    std::size_t s_power = 0;
    RatPoly t_factor;
    std::size_t gcd_degree = 0;
    std::size_t reduced_degree = 0;
    bool has_basepoints = false;
};

inline BasepointReport curve_basepoints(const ExponentSet& a, const ControlScheme& scheme) {
    if (a.dim() != 1) throw Error(ErrorKind::InvalidInput, "basepoint gcd applies to curves (n = 1)");
    if (scheme.size() != a.size()) throw Error(ErrorKind::LengthMismatch, "scheme size differs from exponent count");
    std::int64_t lo = a[0][0], hi = a[0][0];
    for (const auto& m : a) {
        lo = std::min(lo, m[0]);
        hi = std::max(hi, m[0]);
    }
    BasepointReport rep;
    rep.form_degree = static_cast<std::size_t>(hi - lo);
    bool first = true;
    std::size_t s_power = 0;
    RatPoly g;
    for (std::size_t j = 0; j <= scheme.target_dim(); ++j) {
        RatPoly f(rep.form_degree + 1, Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i) f[static_cast<std::size_t>(a[i][0] - lo)] += scheme.points()[i][j];
        poly::trim(f);
        if (f.empty()) continue;
        std::size_t sp = rep.form_degree - (f.size() - 1);
        if (first) {
            s_power = sp;
            g = poly::monic(f);
            first = false;
        } else {
            s_power = std::min(s_power, sp);
            g = poly::gcd(g, f);
        }
    }
    rep.s_power = s_power;
    rep.t_factor = g;
    rep.gcd_degree = s_power + (g.empty() ? 0 : g.size() - 1);
    rep.reduced_degree = rep.form_degree - rep.gcd_degree;
    rep.has_basepoints = rep.gcd_degree > 0;
    return rep;
}

} // namespace toric

#endif // TORIC_PATCH_HPP
