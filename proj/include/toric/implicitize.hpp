#ifndef TORIC_IMPLICITIZE_HPP
#define TORIC_IMPLICITIZE_HPP

// Implicit equations of projected toric patches by exact interpolation:
// evaluate every degree-d monomial of P^k at rational sample points of the
// parametrization and take the rational nullspace of that matrix.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toric/arith.hpp"
#include "toric/error.hpp"
#include "toric/lattice.hpp"
#include "toric/linalg.hpp"
#include "toric/patch.hpp"
#include "toric/polytope.hpp"

namespace toric {

using MonomialExponent = std::vector<unsigned>;

/// All monomials of degree d in `vars` variables, lexicographically
/// descending (z0^d first).
inline std::vector<MonomialExponent> homogeneous_monomials(std::size_t vars, unsigned d) {
    std::vector<MonomialExponent> out;
    MonomialExponent e(vars, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == vars) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (unsigned k = left + 1; k-- > 0;) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
    };
    if (vars == 0) return out;
    rec(rec, 0, d);
    return out;
}

inline std::size_t binomial_coefficient(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Degree-d form in k+1 homogeneous variables; coefficients follow
/// homogeneous_monomials(k+1, d). Primitive, first nonzero coefficient
/// positive.
struct ImplicitForm {
    std::size_t k = 0;
    unsigned d = 0;
    IntVector coeffs;

    std::vector<MonomialExponent> monomials() const { return homogeneous_monomials(k + 1, d); }

    std::size_t term_count() const {
        return static_cast<std::size_t>(std::count_if(coeffs.begin(), coeffs.end(), [](const Integer& c) { return c != 0; }));
    }

    Integer coefficient(const MonomialExponent& e) const {
        auto mons = monomials();
        auto it = std::find(mons.begin(), mons.end(), e);
        if (it == mons.end()) throw Error(ErrorKind::InvalidInput, "monomial has the wrong degree or arity");
        return coeffs[static_cast<std::size_t>(it - mons.begin())];
    }

    template <typename T>
    T evaluate(const std::vector<T>& z) const {
        if (z.size() != k + 1) throw Error(ErrorKind::LengthMismatch, "point dimension differs from the form");
        std::vector<std::vector<T>> powers(k + 1);
        for (std::size_t j = 0; j <= k; ++j) {
            powers[j].push_back(T(1));
            for (unsigned e = 1; e <= d; ++e) powers[j].push_back(powers[j].back() * z[j]);
        }
        auto mons = monomials();
        T acc(0);
        for (std::size_t i = 0; i < mons.size(); ++i) {
            if (coeffs[i] == 0) continue;
            T term;
            if constexpr (is_exact_v<T>)
                term = Rational(coeffs[i]);
            else
                term = coeffs[i].template convert_to<double>();
            for (std::size_t j = 0; j <= k; ++j) term *= powers[j][mons[i][j]];
            acc += term;
        }
        return acc;
    }

    friend bool operator==(const ImplicitForm&, const ImplicitForm&) = default;
};

inline std::string format_form(const ImplicitForm& f, const std::vector<std::string>& names = {}) {
    auto mons = f.monomials();
    std::string out;
    for (std::size_t i = 0; i < mons.size(); ++i) {
        const Integer& c = f.coeffs[i];
        if (c == 0) continue;
        Integer mag = boost::multiprecision::abs(c);
        out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        std::string mono;
        for (std::size_t j = 0; j < mons[i].size(); ++j) {
            if (mons[i][j] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += j < names.size() ? names[j] : "z" + std::to_string(j);
            if (mons[i][j] > 1) mono += "^" + std::to_string(mons[i][j]);
        }
        if (mono.empty())
            out += mag.str();
        else if (mag == 1)
            out += mono;
        else
            out += mag.str() + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

/// i-th value of 3/2, 5/3, 7/4, 9/5, ...
inline Rational sample_value(std::size_t i) {
    return Rational(Integer(2 * i + 3), Integer(i + 2));
}

/// Torus parameters number first..first+count-1 of a fixed enumeration of
/// index tuples by increasing index sum; coordinate c reads sample_value at
/// its index plus c.
inline std::vector<RatVector> sample_parameters(std::size_t n, std::size_t count, std::size_t first = 0) {
    std::vector<RatVector> out;
    out.reserve(count);
    std::size_t seen = 0;
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t total = 0; out.size() < count; ++total) {
        // compositions of `total` into n parts, lexicographically descending
        auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
            if (out.size() >= count) return;
            if (i + 1 == n) {
                idx[i] = left;
                if (seen++ >= first) {
                    RatVector t;
                    for (std::size_t c = 0; c < n; ++c) t.push_back(sample_value(idx[c] + c));
                    out.push_back(std::move(t));
                }
                return;
            }
            for (std::size_t k = left + 1; k-- > 0;) {
                idx[i] = k;
                self(self, i + 1, left - k);
            }
        };
        rec(rec, 0, total);
    }
    return out;
}

/// Exact projected points of the parametrization, skipping basepoints.
class SampleStream {
public:
    SampleStream(ExponentSet a, ControlScheme scheme, std::size_t first = 0)
        : a_(std::move(a)), scheme_(std::move(scheme)), next_(first) {}

    std::vector<ProjectivePoint<Rational>> take(std::size_t count) {
        std::vector<ProjectivePoint<Rational>> out;
        std::size_t misses = 0;
        while (out.size() < count) {
            auto t = sample_parameters(a_.dim(), 1, next_++).front();
            try {
                out.push_back(patch_point(a_, scheme_, std::span<const Rational>(t)));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::BasepointHit) throw;
                if (++misses > 10 * count + 100)
                    throw Error(ErrorKind::BasepointHit, "parametrization vanishes on the sample sequence");
            }
        }
        return out;
    }

    std::size_t position() const noexcept { return next_; }

private:
    ExponentSet a_;
    ControlScheme scheme_;
    std::size_t next_;
};

struct ImplicitizeOptions {
    std::size_t extra_rows = 10;
    /// Fresh samples each candidate form must vanish on before it is returned.
    std::size_t check_samples = 20;
    std::size_t first_sample = 0;
};

namespace detail {

inline IntVector monomial_row(const ProjectivePoint<Rational>& z, const std::vector<MonomialExponent>& mons, unsigned d) {
    IntVector iz = clear_denominators(z.coords);
    std::vector<std::vector<Integer>> powers(iz.size());
    for (std::size_t j = 0; j < iz.size(); ++j) {
        powers[j].push_back(Integer(1));
        for (unsigned e = 1; e <= d; ++e) powers[j].push_back(powers[j].back() * iz[j]);
    }
    IntVector row;
    row.reserve(mons.size());
    for (const auto& m : mons) {
        Integer v = 1;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[j] != 0) v *= powers[j][m[j]];
        row.push_back(std::move(v));
    }
    return row;
}

} // namespace detail

/// Basis of the degree-d forms vanishing on the image of the parametrization.
/// An empty result means no such form exists in degree d.
inline std::vector<ImplicitForm> implicitize(const ExponentSet& a, const ControlScheme& scheme, unsigned d,
                                             const ImplicitizeOptions& opt = {}) {
    if (d < 1) throw Error(ErrorKind::InvalidInput, "degree must be at least 1");
    if (scheme.size() != a.size()) throw Error(ErrorKind::LengthMismatch, "scheme size differs from exponent count");
    const std::size_t k = scheme.target_dim();
    const auto mons = homogeneous_monomials(k + 1, d);
    SampleStream stream(a, scheme, opt.first_sample);

    std::vector<IntVector> rows;
    for (const auto& z : stream.take(mons.size() + opt.extra_rows)) rows.push_back(detail::monomial_row(z, mons, d));

    for (;;) {
        std::vector<ImplicitForm> forms;
        for (auto& v : integer_nullspace(IntMatrix::from_rows(rows))) forms.push_back(ImplicitForm{k, d, std::move(v)});
        if (forms.empty() || opt.check_samples == 0) return forms;
        auto fresh = stream.take(opt.check_samples);
        bool all_vanish = true;
        for (const auto& f : forms)
            for (const auto& z : fresh)
                if (f.evaluate(z.coords) != 0) all_vanish = false;
        if (all_vanish) return forms;
        for (const auto& z : fresh) rows.push_back(detail::monomial_row(z, mons, d));
    }
}

struct DegreeSearchResult {
    std::optional<unsigned> degree;
    std::vector<ImplicitForm> forms;
    /// n!·Vol(conv A), the degree of the toric variety itself.
    Integer toric_degree;
    /// Found degree strictly below the toric degree.
    bool degree_drop = false;
};

/// Smallest d <= d_max carrying a nonzero form. d_max = 0 selects the
/// toric degree.
inline DegreeSearchResult degree_search(const ExponentSet& a, const ControlScheme& scheme, unsigned d_max = 0,
                                        const ImplicitizeOptions& opt = {}) {
    DegreeSearchResult res;
    res.toric_degree = implicit_degree(a);
    if (d_max == 0) d_max = static_cast<unsigned>(to_int64(res.toric_degree));
    for (unsigned d = 1; d <= d_max; ++d) {
        auto forms = implicitize(a, scheme, d, opt);
        if (!forms.empty()) {
            res.degree = d;
            res.forms = std::move(forms);
            res.degree_drop = Integer(d) < res.toric_degree;
            return res;
        }
    }
    return res;
}

/// Largest |F(z)| over exact points.
inline Rational residual_max(const ImplicitForm& f, const std::vector<ProjectivePoint<Rational>>& points) {
    Rational worst = 0;
    for (const auto& p : points) {
        Rational v = f.evaluate(p.coords);
        if (v < 0) v = -v;
        if (v > worst) worst = v;
    }
    return worst;
}

/// Largest |F(z/|z|_inf)| over float points; scaling each point to unit max
/// norm makes the bound independent of the homogeneous representative.
inline double residual_max(const ImplicitForm& f, const std::vector<ProjectivePoint<double>>& points) {
    double worst = 0.0;
    for (const auto& p : points) {
        double scale = 0.0;
        for (double x : p.coords) scale = std::max(scale, std::abs(x));
        if (scale == 0.0) continue;
        std::vector<double> z;
        for (double x : p.coords) z.push_back(x / scale);
        worst = std::max(worst, std::abs(f.evaluate(z)));
    }
    return worst;
}

/// Affine points (x_1..x_k) lifted to [1, x_1, ..., x_k].
inline std::vector<ProjectivePoint<double>> homogenize(const std::vector<std::vector<double>>& affine) {
    std::vector<ProjectivePoint<double>> out;
    out.reserve(affine.size());
    for (const auto& p : affine) {
        ProjectivePoint<double> z;
        z.coords.push_back(1.0);
        z.coords.insert(z.coords.end(), p.begin(), p.end());
        out.push_back(std::move(z));
    }
    return out;
}

} // namespace toric

#endif // TORIC_IMPLICITIZE_HPP
