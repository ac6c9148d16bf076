#ifndef TORIC_VERIFY_HPP
#define TORIC_VERIFY_HPP

// Reference checks over the shipped model files.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "toric/arith.hpp"
#include "toric/ideal.hpp"
#include "toric/implicitize.hpp"
#include "toric/model.hpp"
#include "toric/moment.hpp"
#include "toric/polytope.hpp"

namespace toric {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace reference {

/// Term list of a form: monomial exponents with coefficients.
using Terms = std::map<MonomialExponent, Integer>;

/// Quadratic relations of the hexagon as unordered pairs of label words.
inline std::vector<std::pair<std::string, std::string>> hexagon_quadrics() {
    return {{"ab", "cg"}, {"ac", "bd"}, {"ad", "ce"}, {"ae", "df"}, {"af", "eg"}, {"ag", "bf"},
            {"aa", "be"}, {"aa", "dg"}, {"aa", "cf"}, {"be", "cf"}, {"be", "dg"}, {"cf", "dg"}};
}

/// z0·z2² − z1³ in P² for A = {0, 2, 3}.
inline std::string cusp_binomial() { return "x0*x2^2 - x1^3"; }

/// y²(x − 1) + 2xy + x² + x³ homogenized in [z0, x, y].
inline Terms cubic_curve() {
    return {{{0, 1, 2}, 1}, {{1, 0, 2}, -1}, {{1, 1, 1}, 2}, {{1, 2, 0}, 1}, {{0, 3, 0}, 1}};
}

/// (x² − y²)² − 2x²w² − 2y²w² − 16z²w² + w⁴ in [w, x, y, z].
inline Terms pillow_quartic() {
    return {{{0, 4, 0, 0}, 1},  {{0, 2, 2, 0}, -2}, {{0, 0, 4, 0}, 1},  {{2, 2, 0, 0}, -2},
            {{2, 0, 2, 0}, -2}, {{2, 0, 0, 2}, -16}, {{4, 0, 0, 0}, 1}};
}

/// The hexagonal patch sextic in [w, x, y, z]; symmetric in x, y, z, so each
/// entry stands for every permutation of its (x, y, z) exponents.
inline Terms hexagon_sextic() {
    const std::vector<std::pair<std::array<unsigned, 4>, long>> orbits = {
        {{6, 0, 0, 0}, 112}, {{5, 1, 0, 0}, -240}, {{4, 1, 1, 0}, 296},  {{4, 2, 0, 0}, 216},
        {{3, 3, 0, 0}, -92}, {{3, 2, 1, 0}, -124}, {{3, 1, 1, 1}, -568}, {{2, 4, 0, 0}, 4},
        {{2, 3, 1, 0}, 70},  {{2, 2, 2, 0}, -125}, {{2, 2, 1, 1}, 272},  {{1, 4, 1, 0}, -2},
        {{1, 3, 1, 1}, -141}, {{1, 3, 2, 0}, 35},  {{1, 2, 2, 1}, -7},   {{0, 4, 1, 1}, 5},
        {{0, 3, 2, 1}, 19},  {{0, 2, 2, 2}, -50},  {{0, 3, 3, 0}, -13},  {{0, 4, 2, 0}, -2}};
    Terms out;
    for (const auto& [e, c] : orbits) {
        std::array<unsigned, 3> xyz{e[1], e[2], e[3]};
        std::sort(xyz.begin(), xyz.end());
        do {
            out[{e[0], xyz[0], xyz[1], xyz[2]}] = c;
        } while (std::next_permutation(xyz.begin(), xyz.end()));
    }
    return out;
}

} // namespace reference

/// True when `f` equals λ·expected for some nonzero rational λ.
inline bool proportional_to(const ImplicitForm& f, const reference::Terms& expected) {
    auto mons = f.monomials();
    std::optional<Rational> scale;
    for (std::size_t i = 0; i < mons.size(); ++i) {
        auto it = expected.find(mons[i]);
        Integer want = it == expected.end() ? Integer(0) : it->second;
        if (want == 0 || f.coeffs[i] == 0) {
            if (want != 0 || f.coeffs[i] != 0) return false;
            continue;
        }
        Rational ratio(f.coeffs[i], want);
        if (!scale)
            scale = ratio;
        else if (*scale != ratio)
            return false;
    }
    for (const auto& [m, c] : expected)
        if (std::find(mons.begin(), mons.end(), m) == mons.end()) return false;
    return scale.has_value();
}

namespace detail {

inline std::string label_word(const IntVector& e, const std::vector<std::string>& labels) {
    std::string w;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (Integer k = 0; k < e[i]; ++k) w += labels.at(i);
    std::sort(w.begin(), w.end());
    return w;
}

inline CheckResult timed(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    CheckResult r;
    r.name = name;
    auto start = std::chrono::steady_clock::now();
    try {
        std::tie(r.pass, r.detail) = body();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline std::pair<bool, std::string> implicit_check(const ModelFile& m, unsigned d, const reference::Terms& expected) {
    auto forms = implicitize(m.exponents, m.scheme(), d);
    if (forms.size() != 1) return {false, "nullspace dimension " + std::to_string(forms.size())};
    bool ok = proportional_to(forms[0], expected);
    return {ok, std::to_string(forms[0].term_count()) + " terms" + (ok ? "" : ", not proportional to reference")};
}

// Interior grid over the bounding box of conv(A), nodes strictly inside.
inline std::vector<std::vector<double>> interior_grid(const ExponentSet& a, std::size_t per_axis) {
    LatticePolytope p = convex_hull(a);
    std::vector<double> lo(a.dim()), hi(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r) {
        lo[r] = hi[r] = static_cast<double>(p.vertices.front()[r]);
        for (const auto& v : p.vertices) {
            lo[r] = std::min(lo[r], static_cast<double>(v[r]));
            hi[r] = std::max(hi[r], static_cast<double>(v[r]));
        }
    }
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> idx(a.dim(), 0);
    for (;;) {
        std::vector<double> u(a.dim());
        for (std::size_t r = 0; r < a.dim(); ++r)
            u[r] = lo[r] + (hi[r] - lo[r]) * static_cast<double>(idx[r] + 1) / static_cast<double>(per_axis + 1);
        bool inside = true;
        for (const auto& f : p.facets)
            if (f.slack(u) <= 1e-9) inside = false;
        if (inside) out.push_back(std::move(u));
        std::size_t r = a.dim();
        while (r > 0) {
            --r;
            if (++idx[r] < per_axis) break;
            idx[r] = 0;
            if (r == 0) return out;
        }
    }
}

inline std::pair<bool, std::string> precision_check(const ModelFile& m) {
    const auto& a = m.exponents;
    auto w = m.weights_as_double();
    double worst = 0.0, trip = 0.0, sum_err = 0.0;
    auto grid = interior_grid(a, 11);
    for (const auto& u : grid) {
        BasisValues b = moment_inverse(MomentQuery{a, w, u, 1e-12, 100});
        double total = 0.0;
        for (double f : b.values) total += f;
        sum_err = std::max(sum_err, std::abs(total - 1.0));
        auto back = weighted_moment(a, w, b.parameter);
        for (std::size_t r = 0; r < a.dim(); ++r) {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) s += b.values[i] * static_cast<double>(a[i][r]);
            worst = std::max(worst, std::abs(s - u[r]));
            trip = std::max(trip, std::abs(back[r] - u[r]));
        }
    }
    bool ok = !grid.empty() && worst <= 1e-10 && trip <= 1e-12 && sum_err <= 1e-14;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu nodes, precision %.3g, round trip %.3g, partition of unity %.3g", grid.size(),
                  worst, trip, sum_err);
    return {ok, buf};
}

} // namespace detail

/// Runs the reference checks against the model files found in `dir`.
inline std::vector<CheckResult> verify_fixtures(const std::filesystem::path& dir) {
    auto load = [&](const char* file) { return load_model((dir / file).string()); };
    std::vector<CheckResult> out;

    out.push_back(detail::timed("hexagon quadrics", [&] {
        ModelFile m = load("hexagon.json");
        auto bs = quadratic_binomials(m.exponents);
        std::set<std::pair<std::string, std::string>> got, want;
        for (const auto& b : bs) {
            auto p = detail::label_word(b.plus, m.labels), q = detail::label_word(b.minus, m.labels);
            got.insert(std::minmax(p, q));
        }
        for (const auto& [p, q] : reference::hexagon_quadrics()) want.insert(std::minmax(p, q));
        return std::pair{bs.size() == 12 && got == want, std::to_string(bs.size()) + " binomials"};
    }));

    out.push_back(detail::timed("cusp binomial", [&] {
        ModelFile m = load("cusp.json");
        auto bs = binomials_from_kernel(m.exponents, 3);
        std::string text = bs.size() == 1 ? format_binomial(bs[0]) : std::to_string(bs.size()) + " binomials";
        return std::pair{text == reference::cusp_binomial(), text};
    }));

    out.push_back(detail::timed("implicit degrees", [&] {
        const std::vector<std::pair<const char*, long>> cases = {
            {"hexagon.json", 6}, {"segment4.json", 4}, {"crosspoly.json", 4}, {"triangle3.json", 9}};
        bool ok = true;
        std::string detail;
        for (const auto& [file, want] : cases) {
            Integer got = implicit_degree(load(file).exponents);
            ok = ok && got == want;
            detail += (detail.empty() ? "" : ", ") + std::string(file) + "=" + got.str();
        }
        return std::pair{ok, detail};
    }));

    out.push_back(detail::timed("cubic curve", [&] {
        return detail::implicit_check(load("rnc3.json"), 3, reference::cubic_curve());
    }));
    out.push_back(detail::timed("double pillow", [&] {
        return detail::implicit_check(load("pillow.json"), 4, reference::pillow_quartic());
    }));
    out.push_back(detail::timed("hexagon sextic", [&] {
        return detail::implicit_check(load("hexsurf.json"), 6, reference::hexagon_sextic());
    }));

    out.push_back(detail::timed("linear precision hexagon", [&] { return detail::precision_check(load("hexagon.json")); }));
    out.push_back(detail::timed("linear precision triangle", [&] { return detail::precision_check(load("simplex2.json")); }));
    return out;
}

} // namespace toric

#endif // TORIC_VERIFY_HPP
