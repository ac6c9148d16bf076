#ifndef TORIC_REALMESH_HPP
#define TORIC_REALMESH_HPP

// Sampling of real toric patches (orthant pieces, the nonnegative part via
// moment inversion, affine charts) into triangle meshes, plus OBJ/CSV I/O.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <exception>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "toric/arith.hpp"
#include "toric/error.hpp"
#include "toric/lattice.hpp"
#include "toric/moment.hpp"
#include "toric/patch.hpp"
#include "toric/polytope.hpp"

namespace toric {

/// Orthant label ε ∈ {±1}^n.
class SignVector {
public:
    SignVector() = default;
    explicit SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
        for (int s : signs_)
            if (s != 1 && s != -1) throw Error(ErrorKind::InvalidInput, "sign vector entries must be +1 or -1");
    }

    static SignVector identity(std::size_t n) { return SignVector(std::vector<int>(n, 1)); }

    /// All 2^n orthants, identity first.
    static std::vector<SignVector> all(std::size_t n) {
        std::vector<SignVector> out;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::vector<int> s(n);
            for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1u ? -1 : 1;
            out.emplace_back(std::move(s));
        }
        return out;
    }

    std::size_t size() const noexcept { return signs_.size(); }
    int operator[](std::size_t i) const { return signs_[i]; }
    const std::vector<int>& signs() const noexcept { return signs_; }

private:
    std::vector<int> signs_;
};

struct VertexTag {
    std::vector<int> eps;
    std::vector<double> params;
};

struct Mesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<std::size_t, 3>> faces;
    std::vector<VertexTag> tags;
    /// Grid nodes omitted (at infinity, basepoints, or boundary of Δ).
    std::size_t dropped = 0;

    void append(const Mesh& other) {
        const std::size_t base = vertices.size();
        vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
        tags.insert(tags.end(), other.tags.begin(), other.tags.end());
        for (auto f : other.faces) faces.push_back({f[0] + base, f[1] + base, f[2] + base});
        dropped += other.dropped;
    }
};

struct SamplingOptions {
    double lo = 1e-2;
    double hi = 1e2;
    std::size_t threads = 1;
};

/// grid values lo·(hi/lo)^(i/(grid−1)), i = 0..grid−1.
inline std::vector<double> log_grid(std::size_t grid, double lo, double hi) {
    std::vector<double> out(grid);
    if (grid == 1) {
        out[0] = std::sqrt(lo * hi);
        return out;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < grid; ++i)
        out[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(grid - 1));
    return out;
}

namespace detail {

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += threads) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline std::array<double, 3> pad3(const std::vector<double>& p) {
    if (p.size() > 3) throw Error(ErrorKind::InvalidInput, "meshes hold points of dimension at most 3");
    std::array<double, 3> out{0.0, 0.0, 0.0};
    std::copy(p.begin(), p.end(), out.begin());
    return out;
}

inline double triangle_area(const std::array<double, 3>& a, const std::array<double, 3>& b,
                            const std::array<double, 3>& c) {
    std::array<double, 3> u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    std::array<double, 3> v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    double x = u[1] * v[2] - u[2] * v[1], y = u[2] * v[0] - u[0] * v[2], z = u[0] * v[1] - u[1] * v[0];
    return 0.5 * std::sqrt(x * x + y * y + z * z);
}

struct GridNode {
    std::optional<std::array<double, 3>> point;
    VertexTag tag;
};

// Node (i, j) lives at i*cols + j; a curve has rows == 1.
inline Mesh assemble(const std::vector<GridNode>& nodes, std::size_t rows, std::size_t cols) {
    Mesh mesh;
    std::vector<std::size_t> index(nodes.size(), 0);
    std::vector<bool> valid(nodes.size(), false);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!nodes[i].point) {
            ++mesh.dropped;
            continue;
        }
        valid[i] = true;
        index[i] = mesh.vertices.size();
        mesh.vertices.push_back(*nodes[i].point);
        mesh.tags.push_back(nodes[i].tag);
    }
    auto emit = [&](std::size_t a, std::size_t b, std::size_t c) {
        if (!valid[a] || !valid[b] || !valid[c]) return;
        if (triangle_area(*nodes[a].point, *nodes[b].point, *nodes[c].point) <= 1e-14) return;
        mesh.faces.push_back({index[a], index[b], index[c]});
    };
    for (std::size_t i = 0; i + 1 < rows; ++i) {
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            std::size_t n00 = i * cols + j, n01 = n00 + 1, n10 = n00 + cols, n11 = n10 + 1;
            emit(n00, n10, n11);
            emit(n00, n11, n01);
        }
    }
    return mesh;
}

} // namespace detail

/// Image of a log-uniform grid in the orthant ε·R^n_> (n = 1 or 2).
inline Mesh orthant_sample(const ExponentSet& a, const ControlScheme& scheme, const SignVector& eps, std::size_t grid,
                           const SamplingOptions& opt = {}) {
    const std::size_t n = a.dim();
    if (n != 1 && n != 2) throw Error(ErrorKind::InvalidInput, "orthant sampling supports n = 1 or 2");
    if (eps.size() != n) throw Error(ErrorKind::LengthMismatch, "sign vector length differs from n");
    if (grid < 2) throw Error(ErrorKind::InvalidInput, "grid resolution must be at least 2");
    if (scheme.size() != a.size()) throw Error(ErrorKind::LengthMismatch, "scheme size differs from exponent count");
    if (scheme.target_dim() > 3) throw Error(ErrorKind::InvalidInput, "meshes need a target of dimension <= 3");

    const auto axis = log_grid(grid, opt.lo, opt.hi);
    const std::size_t rows = n == 2 ? grid : 1;
    std::vector<detail::GridNode> nodes(rows * grid);
    detail::parallel_for(nodes.size(), opt.threads, [&](std::size_t idx) {
        std::vector<double> t;
        if (n == 2)
            t = {eps[0] * axis[idx / grid], eps[1] * axis[idx % grid]};
        else
            t = {eps[0] * axis[idx]};
        nodes[idx].tag = VertexTag{eps.signs(), t};
        try {
            auto p = patch_eval(a, scheme, t);
            bool finite = std::all_of(p.begin(), p.end(), [](double x) { return std::isfinite(x); });
            if (finite) nodes[idx].point = detail::pad3(p);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::AtInfinity && e.kind() != ErrorKind::BasepointHit) throw;
        }
    });
    return detail::assemble(nodes, rows, grid);
}

/// The nonnegative part parametrized by Δ itself: every interior node u of a
/// grid over the bounding box of Δ is sent through α_w^{-1} and then the
/// patch. grid = 1 gives the single node at the weighted barycenter.
inline Mesh nonneg_patch_via_moment(const ExponentSet& a, const ControlScheme& scheme, std::size_t grid,
                                    const std::vector<double>& weights = {}, const SamplingOptions& opt = {},
                                    double tol = 1e-12) {
    const std::size_t n = a.dim();
    if (n != 1 && n != 2) throw Error(ErrorKind::InvalidInput, "moment patches support n = 1 or 2");
    if (grid < 1) throw Error(ErrorKind::InvalidInput, "grid resolution must be positive");
    if (scheme.size() != a.size()) throw Error(ErrorKind::LengthMismatch, "scheme size differs from exponent count");
    if (scheme.target_dim() > 3) throw Error(ErrorKind::InvalidInput, "meshes need a target of dimension <= 3");

    LatticePolytope hull = convex_hull(a);
    std::vector<double> lo(n), hi(n);
    for (std::size_t r = 0; r < n; ++r) {
        lo[r] = hi[r] = static_cast<double>(hull.vertices.front()[r]);
        for (const auto& v : hull.vertices) {
            lo[r] = std::min(lo[r], static_cast<double>(v[r]));
            hi[r] = std::max(hi[r], static_cast<double>(v[r]));
        }
    }
    auto node_coord = [&](std::size_t r, std::size_t i) {
        return lo[r] + (hi[r] - lo[r]) * static_cast<double>(i + 1) / static_cast<double>(grid + 1);
    };

    const std::size_t rows = n == 2 ? grid : 1;
    std::vector<detail::GridNode> nodes(rows * grid);
    detail::parallel_for(nodes.size(), opt.threads, [&](std::size_t idx) {
        std::vector<double> u;
        if (grid == 1) {
            std::vector<double> ones(n, 1.0);
            u = weighted_moment(a, weights, ones);
        } else if (n == 2) {
            u = {node_coord(0, idx / grid), node_coord(1, idx % grid)};
        } else {
            u = {node_coord(0, idx)};
        }
        try {
            BasisValues b = moment_inverse(MomentQuery{a, weights, u, tol, 100});
            nodes[idx].tag = VertexTag{std::vector<int>(n, 1), b.parameter};
            auto p = patch_eval(a, scheme, b.parameter);
            nodes[idx].point = detail::pad3(p);
        } catch (const Error& e) {
            switch (e.kind()) {
            case ErrorKind::OnBoundary:
            case ErrorKind::OutsidePolytope:
            case ErrorKind::AtInfinity:
            case ErrorKind::BasepointHit:
            case ErrorKind::NoConvergence:
                break;
            default:
                throw;
            }
        }
    });
    return detail::assemble(nodes, rows, grid);
}

/// Points (t^m_1, ..., t^m_l) of an affine chart for every parameter tuple in
/// axis^n. The generators are supplied by the caller.
template <typename T>
std::vector<std::vector<T>> chart_sample(const std::vector<Exponent>& generators, const std::vector<T>& axis) {
    if (generators.empty()) throw Error(ErrorKind::InvalidInput, "chart needs at least one generator");
    const std::size_t n = generators.front().size();
    for (const auto& g : generators)
        if (g.size() != n) throw Error(ErrorKind::InvalidInput, "chart generators differ in dimension");
    for (const auto& v : axis)
        if (v == T(0)) throw Error(ErrorKind::ZeroCoordinate, "chart parameter must be nonzero");
    std::vector<std::vector<T>> out;
    std::vector<std::size_t> idx(n, 0);
    if (axis.empty()) return out;
    for (;;) {
        std::vector<T> point;
        for (const auto& g : generators) {
            T v(1);
            for (std::size_t r = 0; r < n; ++r) v *= ipow(axis[idx[r]], g[r]);
            point.push_back(std::move(v));
        }
        out.push_back(std::move(point));
        std::size_t r = n;
        while (r > 0) {
            --r;
            if (++idx[r] < axis.size()) break;
            idx[r] = 0;
            if (r == 0) return out;
        }
    }
}

/// Nonzero rationals 1/2, −1/2, 1, −1, 3/2, ... (count values).
inline RatVector rational_axis(std::size_t count) {
    RatVector out;
    for (std::size_t i = 0; i < count; ++i) {
        Rational v(Integer(i / 2 + 1), Integer(2));
        out.push_back(i % 2 == 0 ? v : Rational(-v));
    }
    return out;
}

/// Shortest decimal that reads back to the same double (at most 17
/// significant digits).
inline std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw Error(ErrorKind::Io, "cannot format floating-point value");
    return std::string(buf, end);
}

/// Wavefront OBJ: `v x y z` lines, then 1-based `f i j k` lines.
inline void export_obj(const Mesh& mesh, std::ostream& out) {
    for (const auto& v : mesh.vertices)
        out << "v " << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2]) << '\n';
    for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    if (!out) throw Error(ErrorKind::Io, "failed writing OBJ stream");
}

inline void export_obj(const Mesh& mesh, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    export_obj(mesh, file);
}

/// Reads `v` and triangular `f` records (f entries may carry /vt/vn suffixes
/// and negative indices); everything else is ignored.
inline Mesh parse_obj(std::istream& in) {
    Mesh mesh;
    std::string line;
    std::size_t lineno = 0;
    auto parse_double = [&](const std::string& tok) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw Error(ErrorKind::Io, "line " + std::to_string(lineno) + ": bad number '" + tok + "'");
        return v;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            std::array<double, 3> v{};
            for (auto& c : v) {
                std::string tok;
                if (!(ss >> tok)) throw Error(ErrorKind::Io, "line " + std::to_string(lineno) + ": short vertex");
                c = parse_double(tok);
            }
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<std::size_t> idx;
            std::string tok;
            while (ss >> tok) {
                long long i = std::stoll(tok.substr(0, tok.find('/')));
                if (i < 0) i += static_cast<long long>(mesh.vertices.size()) + 1;
                if (i < 1 || static_cast<std::size_t>(i) > mesh.vertices.size())
                    throw Error(ErrorKind::Io, "line " + std::to_string(lineno) + ": face index out of range");
                idx.push_back(static_cast<std::size_t>(i - 1));
            }
            for (std::size_t j = 1; j + 1 < idx.size(); ++j) mesh.faces.push_back({idx[0], idx[j], idx[j + 1]});
        }
    }
    return mesh;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

/// Point dump with header `x,y,z,eps,s,t` (RFC 4180, CRLF records).
inline void export_csv(const Mesh& mesh, std::ostream& out) {
    out << "x,y,z,eps,s,t\r\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const auto& v = mesh.vertices[i];
        std::string eps, s, t;
        if (i < mesh.tags.size()) {
            const auto& tag = mesh.tags[i];
            for (std::size_t j = 0; j < tag.eps.size(); ++j) eps += (j ? "," : "") + std::to_string(tag.eps[j]);
            if (!tag.params.empty()) s = format_double(tag.params[0]);
            if (tag.params.size() > 1) t = format_double(tag.params[1]);
        }
        out << format_double(v[0]) << ',' << format_double(v[1]) << ',' << format_double(v[2]) << ','
            << detail::csv_field(eps) << ',' << s << ',' << t << "\r\n";
    }
    if (!out) throw Error(ErrorKind::Io, "failed writing CSV stream");
}

} // namespace toric

#endif // TORIC_REALMESH_HPP
