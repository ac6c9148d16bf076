// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "toric/toric.hpp"

using namespace toric;

namespace {

constexpr double kOneSecond = 1.0;
constexpr double kFiveSeconds = 5.0;
constexpr double kSixtySeconds = 60.0;
constexpr double kPrecisionTol = 1e-10;
constexpr double kRoundTripTol = 1e-12;
constexpr double kPartitionTol = 1e-14;
constexpr double kContainmentTol = 1e-12;
constexpr double kDoubleCoverTol = 1e-12;

struct Outcome {
    bool pass;
    std::string detail;
};

ModelFile load(const char* file) { return load_model(std::string(TORIC_FIXTURE_DIR) + "/" + file); }

int failures = 0;

void criterion(int id, const char* name, double limit, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit > 0 && secs >= limit) {
        o.pass = false;
        o.detail += "; exceeded " + std::to_string(limit) + " s";
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

double facet_distance(const Facet& f, const std::vector<double>& x) {
    double norm = 0.0;
    for (auto c : f.normal) norm += static_cast<double>(c) * static_cast<double>(c);
    return f.slack(x) / std::sqrt(norm);
}

Outcome implicit_criterion(const char* file, unsigned d, const reference::Terms& want, std::size_t expect_terms) {
    ModelFile m = load(file);
    auto forms = implicitize(m.exponents, m.scheme(), d);
    if (forms.size() != 1) return {false, "nullspace dimension " + std::to_string(forms.size())};
    const ImplicitForm& f = forms[0];
    bool prop = proportional_to(f, want);
    SampleStream fresh(m.exponents, m.scheme(), 100000);
    Rational res = residual_max(f, fresh.take(100));
    bool terms_ok = expect_terms == 0 || f.term_count() == expect_terms;
    std::string detail = "dim 1, " + std::to_string(f.term_count()) + " terms, " +
                         (prop ? "proportional" : "NOT proportional") + ", residual on 100 fresh samples " +
                         to_string(res);
    return {prop && res == 0 && terms_ok, detail};
}

std::vector<std::vector<double>> grid_11(const ExponentSet& a) {
    LatticePolytope p = convex_hull(a);
    double lo[2], hi[2];
    for (int r = 0; r < 2; ++r) {
        lo[r] = hi[r] = static_cast<double>(p.vertices[0][r]);
        for (const auto& v : p.vertices) {
            lo[r] = std::min(lo[r], static_cast<double>(v[r]));
            hi[r] = std::max(hi[r], static_cast<double>(v[r]));
        }
    }
    std::vector<std::vector<double>> out;
    for (int i = 1; i <= 11; ++i)
        for (int j = 1; j <= 11; ++j) {
            std::vector<double> u{lo[0] + (hi[0] - lo[0]) * i / 12.0, lo[1] + (hi[1] - lo[1]) * j / 12.0};
            bool inside = true;
            for (const auto& f : p.facets) inside = inside && facet_distance(f, u) > 1e-9;
            if (inside) out.push_back(u);
        }
    return out;
}

} // namespace

int main() {
    criterion(1, "hexagon ideal", kOneSecond, [] {
        ModelFile m = load("hexagon.json");
        auto bs = quadratic_binomials(m.exponents);
        std::set<std::pair<std::string, std::string>> got, want;
        for (const auto& b : bs) got.insert(std::minmax(detail::label_word(b.plus, m.labels), detail::label_word(b.minus, m.labels)));
        for (const auto& [p, q] : reference::hexagon_quadrics()) want.insert(std::minmax(p, q));
        return Outcome{bs.size() == 12 && got == want, std::to_string(bs.size()) + " binomials" +
                                                            (got == want ? ", all match" : ", mismatch")};
    });

    criterion(2, "cuspidal cubic", 0, [] {
        auto bs = binomials_from_kernel(load("cusp.json").exponents, 3);
        std::string text = bs.size() == 1 ? format_binomial(bs[0]) : std::to_string(bs.size()) + " binomials";
        return Outcome{text == "x0*x2^2 - x1^3", text};
    });

    criterion(3, "degrees", kOneSecond, [] {
        const std::vector<std::pair<const char*, long>> cases{
            {"hexagon.json", 6}, {"segment4.json", 4}, {"crosspoly.json", 4}, {"triangle3.json", 9}};
        bool ok = true;
        std::string detail;
        for (const auto& [file, want] : cases) {
            Integer got = implicit_degree(load(file).exponents);
            ok = ok && got == want;
            detail += (detail.empty() ? "" : ", ") + std::string(file) + " " + got.str();
        }
        // Shoelace over the corners of the side-3 triangle: 2! * 9/2.
        const long xs[] = {0, 3, 0}, ys[] = {0, 0, 3};
        long twice_area = 0;
        for (int i = 0; i < 3; ++i) twice_area += xs[i] * ys[(i + 1) % 3] - xs[(i + 1) % 3] * ys[i];
        ok = ok && twice_area == 9;
        return Outcome{ok, detail};
    });

    criterion(4, "cubic curve implicitization", kFiveSeconds,
              [] { return implicit_criterion("rnc3.json", 3, reference::cubic_curve(), 0); });

    criterion(5, "double pillow", kFiveSeconds,
              [] { return implicit_criterion("pillow.json", 4, reference::pillow_quartic(), 0); });

    criterion(6, "hexagon sextic", kSixtySeconds, [] {
        Outcome o = implicit_criterion("hexsurf.json", 6, reference::hexagon_sextic(), 72);
        ModelFile m = load("hexsurf.json");
        ImplicitForm f = implicitize(m.exponents, m.scheme(), 6).front();
        const std::vector<std::pair<MonomialExponent, long>> spots{{{6, 0, 0, 0}, 112}, {{5, 1, 0, 0}, -240},
                                                                   {{5, 0, 1, 0}, -240}, {{5, 0, 0, 1}, -240},
                                                                   {{4, 1, 1, 0}, 296}, {{4, 2, 0, 0}, 216},
                                                                   {{3, 1, 1, 1}, -568}, {{0, 2, 2, 2}, -50}};
        Rational scale = Rational(f.coefficient(spots[0].first), Integer(spots[0].second));
        bool spots_ok = scale != 0;
        for (const auto& [e, c] : spots) spots_ok = spots_ok && Rational(f.coefficient(e)) == scale * c;
        o.pass = o.pass && spots_ok;
        o.detail += ", spot coefficients " + std::string(spots_ok ? "match" : "differ") + " at scale " + to_string(scale);
        return o;
    });

    criterion(7, "linear precision", kFiveSeconds, [] {
        double worst = 0.0, trip = 0.0, sum_err = 0.0;
        std::size_t nodes = 0;
        for (const char* file : {"hexagon.json", "simplex2.json"}) {
            ExponentSet a = load(file).exponents;
            for (const auto& u : grid_11(a)) {
                BasisValues b = moment_inverse(MomentQuery{a, {}, u, 1e-12, 100});
                double total = 0.0;
                for (double f : b.values) total += f;
                sum_err = std::max(sum_err, std::abs(total - 1.0));
                auto back = weighted_moment(a, {}, b.parameter);
                for (std::size_t r = 0; r < 2; ++r) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < a.size(); ++i) s += b.values[i] * static_cast<double>(a[i][r]);
                    worst = std::max(worst, std::abs(s - u[r]));
                    trip = std::max(trip, std::abs(back[r] - u[r]));
                }
                ++nodes;
            }
        }
        bool ok = nodes > 0 && worst <= kPrecisionTol && trip <= kRoundTripTol && sum_err <= kPartitionTol;
        return Outcome{ok, std::to_string(nodes) + " nodes, precision " + fmt("%.3g", worst) + ", round trip " +
                               fmt("%.3g", trip) + ", sum " + fmt("%.3g", sum_err)};
    });

    criterion(8, "moment image containment", 0, [] {
        double worst = std::numeric_limits<double>::infinity();
        for (const char* file : {"hexagon.json", "simplex2.json"}) {
            ExponentSet a = load(file).exponents;
            LatticePolytope p = convex_hull(a);
            std::mt19937_64 rng(20240611);
            std::uniform_real_distribution<double> logt(-8.0, 8.0);
            for (int s = 0; s < 1000; ++s) {
                std::vector<double> t{std::exp(logt(rng)) * (s % 2 ? -1 : 1), std::exp(logt(rng)) * (s % 3 ? 1 : -1)};
                auto x = monomial_param<double>(a, t);
                for (const auto& img : {moment_map(a, x), algebraic_moment(a, x)})
                    for (const auto& f : p.facets) worst = std::min(worst, facet_distance(f, img));
            }
        }
        return Outcome{worst >= -kContainmentTol, "2000 samples, 4000 images, min facet slack " + fmt("%.3g", worst)};
    });

    criterion(9, "chart identities", 0, [] {
        ModelFile m = load("pillow.json");
        auto axis = rational_axis(20);
        std::size_t cone_bad = 0, cyl_bad = 0, total = 0;
        for (const auto& c : m.charts) {
            auto pts = chart_sample<Rational>(c.generators, axis);
            total += pts.size();
            for (const auto& p : pts) {
                if (c.name == "cone" && p[0] * p[1] - p[2] * p[2] != 0) ++cone_bad;
                if (c.name == "cylinder" && p[0] * p[1] - 1 != 0) ++cyl_bad;
            }
        }
        bool ok = m.charts.size() == 2 && total == 800 && cone_bad == 0 && cyl_bad == 0;
        return Outcome{ok, std::to_string(total) + " exact samples, " + std::to_string(cone_bad + cyl_bad) + " violations"};
    });

    criterion(10, "parabola double cover", 0, [] {
        ModelFile m = load("parabola.json");
        Mesh plus = orthant_sample(m.exponents, m.scheme(), SignVector({1}), 200);
        Mesh minus = orthant_sample(m.exponents, m.scheme(), SignVector({-1}), 200);
        auto gap = [](const Mesh& a, const Mesh& b) {
            double worst = 0.0;
            for (const auto& v : a.vertices) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& w : b.vertices) best = std::min(best, std::abs(v[0] - w[0]) + std::abs(v[1] - w[1]));
                worst = std::max(worst, best);
            }
            return worst;
        };
        double g = std::max(gap(plus, minus), gap(minus, plus));
        bool ok = !plus.vertices.empty() && plus.vertices.size() == minus.vertices.size() && g <= kDoubleCoverTol;
        return Outcome{ok, std::to_string(plus.vertices.size()) + " points per orthant, set distance " + fmt("%.3g", g)};
    });

    criterion(11, "property suites", 0, [] {
        std::mt19937 rng(11);
        std::size_t kernels = 0, splits = 0, binoms = 0;
        bool ok = true;
        std::uniform_int_distribution<int> entry(-5, 5);
        for (int trial = 0; trial < 300; ++trial) {
            std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 7;
            IntMatrix mat(rows, cols);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) mat(r, c) = entry(rng);
            auto basis = integer_kernel_basis(mat);
            ok = ok && basis.size() + rank(mat) == cols;
            for (const auto& u : basis) {
                ok = ok && is_zero(mat_vec(mat, u));
                auto [p, q] = pos_neg_split(u);
                for (std::size_t i = 0; i < u.size(); ++i) ok = ok && p[i] - q[i] == u[i] && p[i] * q[i] == 0;
                ++kernels;
                ++splits;
            }
        }
        std::uniform_int_distribution<int> num(1, 9), den(1, 7);
        for (const auto& [file, bound] : std::vector<std::pair<const char*, long>>{
                 {"hexagon.json", 2}, {"cusp.json", 3}, {"segment4.json", 2}, {"crosspoly.json", 2}, {"rnc3.json", 2}}) {
            ExponentSet a = load(file).exponents;
            auto bs = binomials_from_kernel(a, bound);
            ok = ok && !bs.empty();
            for (int s = 0; s < 25; ++s) {
                RatVector t;
                for (std::size_t r = 0; r < a.dim(); ++r) t.emplace_back(num(rng) * (s % 2 ? -1 : 1), den(rng));
                for (const auto& b : bs) {
                    ok = ok && residual_at(b, a, t) == 0;
                    ++binoms;
                }
            }
        }
        ModelFile pillow = load("pillow.json");
        Mesh mesh;
        for (const auto& eps : SignVector::all(2)) mesh.append(orthant_sample(pillow.exponents, pillow.scheme(), eps, 30));
        std::stringstream buf;
        export_obj(mesh, buf);
        Mesh back = parse_obj(buf);
        bool obj_ok = back.vertices.size() == mesh.vertices.size() && back.faces == mesh.faces &&
                      std::memcmp(back.vertices.data(), mesh.vertices.data(),
                                  mesh.vertices.size() * sizeof(mesh.vertices[0])) == 0;
        ok = ok && obj_ok;
        return Outcome{ok, std::to_string(kernels) + " kernel vectors, " + std::to_string(splits) + " splits, " +
                               std::to_string(binoms) + " binomial evaluations, OBJ " +
                               std::to_string(mesh.vertices.size()) + " vertices " + (obj_ok ? "bit-exact" : "differ")};
    });

    std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
