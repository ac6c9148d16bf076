#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "toric/moment.hpp"

using namespace toric;

namespace {

ExponentSet hexagon() { return ExponentSet(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}); }
ExponentSet triangle2() { return ExponentSet(2, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {0, 2}}); }
ExponentSet conic() { return ExponentSet::univariate({0, 1, 2}); }

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorKind::InvalidInput;
}

double min_slack(const LatticePolytope& p, const std::vector<double>& x) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& f : p.facets) {
        double norm = 0.0;
        for (auto c : f.normal) norm += static_cast<double>(c) * static_cast<double>(c);
        lo = std::min(lo, f.slack(x) / std::sqrt(norm));
    }
    return lo;
}

} // namespace

TEST(MomentMap, Examples) {
    ExponentSet hex = hexagon();
    auto ones = monomial_param<Rational>(hex, {Rational(1), Rational(1)});
    EXPECT_EQ(moment_map(hex, ones), (std::vector<Rational>{0, 0}));
    EXPECT_EQ(algebraic_moment(hex, ones), (std::vector<Rational>{0, 0}));

    auto seg = ExponentSet::univariate({0, 1});
    EXPECT_EQ(moment_map(seg, ProjectivePoint<Rational>{{1, 1}}), std::vector<Rational>{Rational(1, 2)});

    // x = [1,2,4]: (0*1 + 1*4 + 2*16) / (1 + 4 + 16) = 36/21.
    auto x = monomial_param<Rational>(conic(), {Rational(2)});
    EXPECT_EQ(x.coords, (std::vector<Rational>{1, 2, 4}));
    EXPECT_EQ(moment_map(conic(), x), std::vector<Rational>{Rational(12, 7)});
    EXPECT_EQ(algebraic_moment(conic(), x), std::vector<Rational>{Rational(10, 7)});
}

TEST(AlgebraicMoment, SegmentClosedForm) {
    auto seg = ExponentSet::univariate({0, 1});
    for (int k = 1; k <= 20; ++k) {
        Rational t(k, 7);
        auto got = algebraic_moment(seg, monomial_param<Rational>(seg, {t}));
        EXPECT_EQ(got[0], t / (1 + t));
    }
}

TEST(MomentMap, SignsDoNotMatter) {
    ExponentSet hex = hexagon();
    ProjectivePoint<Rational> x{{1, -2, 3, Rational(-1, 2), 5, 1, -1}};
    ProjectivePoint<Rational> y = x;
    for (auto& c : y.coords) c = abs(c);
    EXPECT_EQ(moment_map(hex, x), moment_map(hex, y));
    EXPECT_EQ(algebraic_moment(hex, x), algebraic_moment(hex, y));
    EXPECT_THROW(moment_map(hex, ProjectivePoint<Rational>{std::vector<Rational>(7, Rational(0))}), Error);
}

TEST(LiftedProjection, Examples) {
    ExponentSet hex = hexagon();
    auto z = lifted_projection(hex, ProjectivePoint<Rational>{std::vector<Rational>(7, Rational(1))});
    EXPECT_EQ(z.coords, (std::vector<Rational>{7, 0, 0}));

    auto seg = ExponentSet::univariate({0, 1});
    auto w = lifted_projection(seg, ProjectivePoint<Rational>{{1, -1}});
    EXPECT_EQ(w.coords, (std::vector<Rational>{0, -1}));
    EXPECT_EQ(kind_of([&] { lifted_projection(ExponentSet::univariate({0, 2}), ProjectivePoint<Rational>{{2, 0, 1}}); }),
              ErrorKind::LengthMismatch);
    EXPECT_EQ(kind_of([&] {
                  lifted_projection(ExponentSet(1, {{-1}, {0}, {1}}), ProjectivePoint<Rational>{{1, -2, 1}});
              }),
              ErrorKind::BasepointHit);
}

TEST(LiftedProjectionProperty, AgreesWithAlgebraicMomentOnNonnegativePart) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(0, 12), den(1, 9);
    for (const auto& a : {hexagon(), triangle2(), conic(), ExponentSet(3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                                                          {0, -1, 0}, {0, 0, 1}, {0, 0, -1}})}) {
        for (int trial = 0; trial < 50; ++trial) {
            ProjectivePoint<Rational> x;
            for (std::size_t i = 0; i < a.size(); ++i) x.coords.emplace_back(num(rng), den(rng));
            if (x.is_zero()) continue;
            auto z = lifted_projection(a, x).normalized();
            auto alpha = algebraic_moment(a, x);
            ASSERT_EQ(z.coords.front(), 1);
            EXPECT_EQ(std::vector<Rational>(z.coords.begin() + 1, z.coords.end()), alpha);
        }
    }
}

TEST(MomentImage, ContainedInPolytope) {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> logt(-6.0, 6.0);
    std::uniform_int_distribution<int> sign(0, 1);
    for (const auto& a : {hexagon(), triangle2()}) {
        LatticePolytope p = convex_hull(a);
        for (int s = 0; s < 1000; ++s) {
            std::vector<double> t{std::exp(logt(rng)) * (sign(rng) ? 1 : -1), std::exp(logt(rng)) * (sign(rng) ? 1 : -1)};
            auto x = monomial_param<double>(a, t);
            EXPECT_GE(min_slack(p, moment_map(a, x)), -1e-12);
            EXPECT_GE(min_slack(p, algebraic_moment(a, x)), -1e-12);
        }
    }
}

TEST(MomentMonotone, UnivariateStrictlyIncreasing) {
    for (std::int64_t top = 1; top <= 5; ++top) {
        std::vector<Exponent> pts;
        for (std::int64_t k = 0; k <= top; ++k) pts.push_back({k});
        ExponentSet a(1, pts);
        double prev = -1.0;
        for (int k = -40; k <= 40; ++k) {
            double t = std::pow(10.0, k / 20.0);
            double v = weighted_moment(a, {}, {t})[0];
            EXPECT_GT(v, prev);
            EXPECT_GT(v, 0.0);
            EXPECT_LT(v, static_cast<double>(top));
            prev = v;
        }
    }
}

TEST(MomentInverse, SymmetryCenters) {
    auto b = moment_inverse({conic(), {}, {1.0}});
    EXPECT_NEAR(b.parameter[0], 1.0, 1e-12);
    for (double f : b.values) EXPECT_NEAR(f, 1.0 / 3.0, 1e-14);

    auto h = moment_inverse({hexagon(), {}, {0.0, 0.0}});
    EXPECT_NEAR(h.parameter[0], 1.0, 1e-12);
    EXPECT_NEAR(h.parameter[1], 1.0, 1e-12);
    for (double f : h.values) EXPECT_NEAR(f, 1.0 / 7.0, 1e-14);
    EXPECT_EQ(h.iterations, 0);
}

TEST(MomentInverse, ConicAtOneHalf) {
    // (t + 2t^2) / (1 + t + t^2) = 1/2 reduces to 3t^2 + t - 1 = 0.
    auto b = moment_inverse({conic(), {}, {0.5}});
    EXPECT_NEAR(b.parameter[0], (-1.0 + std::sqrt(13.0)) / 6.0, 1e-12);
    EXPECT_LE(b.residual, 1e-12);
}

TEST(MomentInverse, WeightedBernsteinClosedForm) {
    // Weights (1,2,1) give alpha(t) = 2t/(1+t) and f equal to the quadratic
    // Bernstein basis at u/2.
    for (int k = 1; k < 40; ++k) {
        double u = k / 20.0;
        auto b = moment_inverse({conic(), {1.0, 2.0, 1.0}, {u}});
        EXPECT_NEAR(b.parameter[0], u / (2.0 - u), 1e-10 * (1.0 + u / (2.0 - u)));
        double s = u / 2.0;
        EXPECT_NEAR(b.values[0], (1 - s) * (1 - s), 1e-12);
        EXPECT_NEAR(b.values[1], 2 * s * (1 - s), 1e-12);
        EXPECT_NEAR(b.values[2], s * s, 1e-12);
    }
}

TEST(MomentInverse, Errors) {
    EXPECT_EQ(kind_of([] { moment_inverse({conic(), {}, {0.0}}); }), ErrorKind::OnBoundary);
    EXPECT_EQ(kind_of([] { moment_inverse({conic(), {}, {2.0}}); }), ErrorKind::OnBoundary);
    EXPECT_EQ(kind_of([] { moment_inverse({conic(), {}, {3.0}}); }), ErrorKind::OutsidePolytope);
    EXPECT_EQ(kind_of([] { moment_inverse({hexagon(), {}, {1.0, -0.5}}); }), ErrorKind::OutsidePolytope);
    EXPECT_EQ(kind_of([] { moment_inverse({hexagon(), {}, {0.5, 1.0 - 1e-14}}); }), ErrorKind::OnBoundary);
    EXPECT_EQ(kind_of([] { moment_inverse({conic(), {}, {1.999}, 1e-12, 1}); }), ErrorKind::NoConvergence);
    EXPECT_EQ(kind_of([] { moment_inverse({conic(), {1.0, -1.0, 1.0}, {1.0}}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { moment_inverse({conic(), {1.0, 1.0}, {1.0}}); }), ErrorKind::LengthMismatch);
    EXPECT_EQ(kind_of([] { moment_inverse({conic(), {}, {1.0, 1.0}}); }), ErrorKind::LengthMismatch);
    EXPECT_EQ(kind_of([] { moment_inverse({conic(), {}, {1.0}, 0.0}); }), ErrorKind::InvalidInput);
}

TEST(MomentInverseProperty, RoundTripAndPartitionOfUnity) {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> logt(-2.5, 2.5), wd(0.2, 5.0);
    std::vector<ExponentSet> sets{hexagon(), triangle2(), conic(), ExponentSet::univariate({0, 1, 2, 3, 4}),
                                  ExponentSet(3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}),
                                  ExponentSet(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}})};
    for (const auto& a : sets) {
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<double> w(a.size());
            for (auto& x : w) x = trial % 2 ? wd(rng) : 1.0;
            std::vector<double> t(a.dim());
            for (auto& x : t) x = std::exp(logt(rng));
            auto u = weighted_moment(a, w, t);
            auto b = moment_inverse({a, w, u});
            EXPECT_LE(b.residual, 1e-12);
            auto back = weighted_moment(a, w, b.parameter);
            for (std::size_t r = 0; r < u.size(); ++r) EXPECT_NEAR(back[r], u[r], 1e-12);
            for (std::size_t r = 0; r < t.size(); ++r) EXPECT_NEAR(std::log(b.parameter[r]), std::log(t[r]), 1e-8);
            double sum = 0.0;
            for (double f : b.values) {
                EXPECT_GE(f, 0.0);
                sum += f;
            }
            EXPECT_NEAR(sum, 1.0, 1e-14);
        }
    }
}

TEST(LinearPrecision, HexagonGrid) {
    ExponentSet hex = hexagon();
    LatticePolytope p = convex_hull(hex);
    double worst = 0.0;
    int used = 0;
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
            std::vector<double> u{-1.0 + 2.0 * (i + 1) / 12.0, -1.0 + 2.0 * (j + 1) / 12.0};
            if (min_slack(p, u) <= 1e-9) continue;
            worst = std::max(worst, linear_precision_residual(hex, {}, u));
            ++used;
        }
    EXPECT_GT(used, 80);
    EXPECT_LE(worst, 1e-11);
}

TEST(LinearPrecision, AffineFunctionOnHexagon) {
    ExponentSet hex = hexagon();
    auto lambda = [](double x, double y) { return 3 * x - 2 * y + 5; };
    std::vector<double> u{0.25, 0.125};
    auto b = moment_inverse({hex, {}, u});
    double combo = 0.0;
    for (std::size_t i = 0; i < hex.size(); ++i)
        combo += lambda(static_cast<double>(hex[i][0]), static_cast<double>(hex[i][1])) * b.values[i];
    EXPECT_NEAR(combo, lambda(u[0], u[1]), 1e-11);
}

TEST(LinearPrecision, WeightedRoundTrip) {
    auto a = triangle2();
    std::vector<double> w{1, 2, 1, 2, 2, 1};
    for (double x : {0.1, 0.5, 1.2})
        for (double y : {0.2, 0.6}) {
            if (x + y >= 2.0) continue;
            EXPECT_LE(linear_precision_residual(a, w, {x, y}), 1e-11);
        }
}
