#ifndef TORIC_MOMENT_HPP
#define TORIC_MOMENT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "toric/arith.hpp"
#include "toric/error.hpp"
#include "toric/lattice.hpp"
#include "toric/patch.hpp"
#include "toric/polytope.hpp"

namespace toric {

namespace detail {

template <typename T>
T magnitude(const T& x) {
    return x < T(0) ? T(-x) : x;
}

// Σ c_m·m / Σ c_m for nonnegative c.
template <typename T>
std::vector<T> weighted_average(const ExponentSet& a, const std::vector<T>& c) {
    T total(0);
    std::vector<T> acc(a.dim(), T(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (c[i] == T(0)) continue;
        total += c[i];
        for (std::size_t r = 0; r < a.dim(); ++r) acc[r] += c[i] * T(a[i][r]);
    }
    if (total == T(0)) throw Error(ErrorKind::InvalidInput, "point has all coordinates zero");
    for (auto& x : acc) x /= total;
    return acc;
}

} // namespace detail

/// μ_A(x) = Σ |x_m|²·m / Σ |x_m|².
template <typename T>
std::vector<T> moment_map(const ExponentSet& a, const ProjectivePoint<T>& x) {
    if (x.coords.size() != a.size()) throw Error(ErrorKind::LengthMismatch, "point length differs from |A|");
    std::vector<T> c;
    c.reserve(a.size());
    for (const auto& v : x.coords) c.push_back(v * v);
    return detail::weighted_average(a, c);
}

/// α_A(x) = Σ |x_m|·m / Σ |x_m|.
template <typename T>
std::vector<T> algebraic_moment(const ExponentSet& a, const ProjectivePoint<T>& x) {
    if (x.coords.size() != a.size()) throw Error(ErrorKind::LengthMismatch, "point length differs from |A|");
    std::vector<T> c;
    c.reserve(a.size());
    for (const auto& v : x.coords) c.push_back(detail::magnitude(v));
    return detail::weighted_average(a, c);
}

/// [Σ x_i, Σ x_i·m_i]: the projection whose control vectors are the columns
/// of the lifted matrix. Agrees with [1, α_A(x)] on nonnegative points.
template <typename T>
ProjectivePoint<T> lifted_projection(const ExponentSet& a, const ProjectivePoint<T>& x) {
    if (x.coords.size() != a.size()) throw Error(ErrorKind::LengthMismatch, "point length differs from |A|");
    ProjectivePoint<T> z;
    z.coords.assign(a.dim() + 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        z.coords[0] += x.coords[i];
        for (std::size_t r = 0; r < a.dim(); ++r) z.coords[r + 1] += x.coords[i] * T(a[i][r]);
    }
    if (z.is_zero()) throw Error(ErrorKind::BasepointHit, "lifted projection of the point is zero");
    return z;
}

struct MomentQuery {
    ExponentSet exponents;
    /// Positive weight per exponent; empty means all ones.
    std::vector<double> weights;
    std::vector<double> target;
    double tol = 1e-12;
    int max_iter = 100;
};

struct BasisValues {
    /// f_m(u), indexed like the exponent set; nonnegative and summing to 1.
    std::vector<double> values;
    /// Torus parameter t = exp(θ) with α_w(t) = u.
    std::vector<double> parameter;
    double residual = 0.0;
    int iterations = 0;
};

namespace detail {

struct LogPartition {
    std::vector<double> f;     // normalized w_m t^m
    Eigen::VectorXd gradient;  // α_w
    Eigen::MatrixXd hessian;   // covariance of A under f
};

inline std::vector<double> log_weights(const ExponentSet& a, const std::vector<double>& weights) {
    std::vector<double> lw(a.size(), 0.0);
    if (weights.empty()) return lw;
    if (weights.size() != a.size()) throw Error(ErrorKind::LengthMismatch, "one weight per exponent is required");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(weights[i] > 0.0)) throw Error(ErrorKind::InvalidInput, "weights must be positive");
        lw[i] = std::log(weights[i]);
    }
    return lw;
}

// Values, gradient and Hessian of log Σ w_m exp(<m, θ>), with the usual
// max-shift so large |θ| does not overflow.
inline LogPartition evaluate_log_partition(const ExponentSet& a, const std::vector<double>& lw,
                                           const Eigen::VectorXd& theta) {
    const std::size_t n = a.dim();
    std::vector<double> s(a.size());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        double v = lw[i];
        for (std::size_t r = 0; r < n; ++r) v += static_cast<double>(a[i][r]) * theta[static_cast<Eigen::Index>(r)];
        s[i] = v;
        top = std::max(top, v);
    }
    LogPartition lp;
    lp.f.resize(a.size());
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        lp.f[i] = std::exp(s[i] - top);
        total += lp.f[i];
    }
    for (auto& v : lp.f) v /= total;
    const auto nn = static_cast<Eigen::Index>(n);
    lp.gradient = Eigen::VectorXd::Zero(nn);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(nn, nn);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Eigen::VectorXd m(nn);
        for (std::size_t r = 0; r < n; ++r) m[static_cast<Eigen::Index>(r)] = static_cast<double>(a[i][r]);
        lp.gradient += lp.f[i] * m;
        second += lp.f[i] * m * m.transpose();
    }
    lp.hessian = second - lp.gradient * lp.gradient.transpose();
    return lp;
}

} // namespace detail

/// α_w(t) = Σ w_m t^m·m / Σ w_m t^m for t in the positive orthant.
inline std::vector<double> weighted_moment(const ExponentSet& a, const std::vector<double>& weights,
                                           const std::vector<double>& t) {
    if (t.size() != a.dim()) throw Error(ErrorKind::LengthMismatch, "parameter dimension differs from n");
    Eigen::VectorXd theta(static_cast<Eigen::Index>(t.size()));
    for (std::size_t r = 0; r < t.size(); ++r) {
        if (!(t[r] > 0.0)) throw Error(ErrorKind::InvalidInput, "parameter must lie in the positive orthant");
        theta[static_cast<Eigen::Index>(r)] = std::log(t[r]);
    }
    auto lp = detail::evaluate_log_partition(a, detail::log_weights(a, weights), theta);
    return std::vector<double>(lp.gradient.data(), lp.gradient.data() + lp.gradient.size());
}

/// Inverts α_w on the interior of conv(A).
///
/// α_w is the gradient of the strictly convex g(θ) = log Σ w_m e^<m,θ>, so
/// solving α_w(e^θ) = u is Newton's method on g(θ) − <u,θ> started at θ = 0.
/// The Newton direction always decreases |∇g − u|², so the step is halved
/// until that residual drops.
inline BasisValues moment_inverse(const MomentQuery& q) {
    const ExponentSet& a = q.exponents;
    const std::size_t n = a.dim();
    if (q.target.size() != n) throw Error(ErrorKind::LengthMismatch, "target dimension differs from n");
    if (!(q.tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
    if (q.max_iter < 1) throw Error(ErrorKind::InvalidInput, "max_iter must be positive");

    LatticePolytope hull = convex_hull(a);
    for (const auto& f : hull.facets) {
        double norm = 0.0;
        for (auto c : f.normal) norm += static_cast<double>(c) * static_cast<double>(c);
        double dist = f.slack(q.target) / std::sqrt(norm);
        if (dist < -q.tol) throw Error(ErrorKind::OutsidePolytope, "target violates a facet inequality");
        if (dist <= q.tol) throw Error(ErrorKind::OnBoundary, "target lies on the boundary of the polytope");
    }

    const auto lw = detail::log_weights(a, q.weights);
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::VectorXd u(nn);
    for (std::size_t r = 0; r < n; ++r) u[static_cast<Eigen::Index>(r)] = q.target[r];

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(nn);
    auto lp = detail::evaluate_log_partition(a, lw, theta);
    Eigen::VectorXd r = lp.gradient - u;
    int iter = 0;
    while (r.lpNorm<Eigen::Infinity>() > q.tol) {
        if (iter >= q.max_iter) {
            std::ostringstream msg;
            msg << "no convergence after " << q.max_iter << " iterations, residual " << r.lpNorm<Eigen::Infinity>();
            throw Error(ErrorKind::NoConvergence, msg.str());
        }
        ++iter;
        Eigen::VectorXd step = lp.hessian.ldlt().solve(-r);
        double lambda = 1.0;
        bool accepted = false;
        for (int halvings = 0; halvings < 60; ++halvings, lambda *= 0.5) {
            Eigen::VectorXd trial = theta + lambda * step;
            auto next = detail::evaluate_log_partition(a, lw, trial);
            Eigen::VectorXd rn = next.gradient - u;
            if (rn.squaredNorm() < r.squaredNorm()) {
                theta = trial;
                lp = std::move(next);
                r = rn;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            std::ostringstream msg;
            msg << "line search stalled at residual " << r.lpNorm<Eigen::Infinity>();
            throw Error(ErrorKind::NoConvergence, msg.str());
        }
    }

    // One more full step; kept only if it helps.
    if (iter > 0 || r.squaredNorm() > 0.0) {
        Eigen::VectorXd trial = theta + lp.hessian.ldlt().solve(-r);
        auto next = detail::evaluate_log_partition(a, lw, trial);
        Eigen::VectorXd rn = next.gradient - u;
        if (rn.allFinite() && rn.squaredNorm() < r.squaredNorm()) {
            theta = trial;
            lp = std::move(next);
            r = rn;
        }
    }

    BasisValues out;
    out.values = lp.f;
    out.parameter.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.parameter[k] = std::exp(theta[static_cast<Eigen::Index>(k)]);
    out.residual = r.lpNorm<Eigen::Infinity>();
    out.iterations = iter;
    return out;
}

/// max_r |Σ_m f_m(u)·m_r − u_r| for the basis functions obtained by inversion.
inline double linear_precision_residual(const ExponentSet& a, const std::vector<double>& weights,
                                        const std::vector<double>& u, double tol = 1e-12) {
    MomentQuery q{a, weights, u, tol, 100};
    BasisValues b = moment_inverse(q);
    double worst = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += b.values[i] * static_cast<double>(a[i][r]);
        worst = std::max(worst, std::abs(s - u[r]));
    }
    return worst;
}

} // namespace toric

#endif // TORIC_MOMENT_HPP
