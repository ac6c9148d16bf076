#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "toric/ideal.hpp"

using namespace toric;

namespace {

const std::vector<std::string> hex_labels{"a", "b", "c", "d", "e", "f", "g"};

ExponentSet hexagon() { return ExponentSet(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}); }

IntVector unit_sum(std::size_t size, std::initializer_list<std::size_t> idx) {
    IntVector v(size, Integer(0));
    for (auto i : idx) v[i] += 1;
    return v;
}

std::vector<RatVector> torus_points(std::size_t n, std::size_t count) {
    std::vector<RatVector> out;
    std::mt19937 rng(static_cast<unsigned>(n * 1000 + count));
    std::uniform_int_distribution<int> num(1, 9), den(1, 7), sign(0, 1);
    while (out.size() < count) {
        RatVector t;
        for (std::size_t r = 0; r < n; ++r) t.push_back(Rational(num(rng), den(rng)) * (sign(rng) ? 1 : -1));
        out.push_back(std::move(t));
    }
    return out;
}

ExponentSet random_set(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<Exponent> pts;
    std::size_t count = 2 + rng() % 5;
    while (pts.size() < count) {
        Exponent e(n);
        for (auto& x : e) x = d(rng);
        if (std::find(pts.begin(), pts.end(), e) == pts.end()) pts.push_back(e);
    }
    return ExponentSet(n, pts);
}

} // namespace

TEST(BinomialsFromKernel, Cusp) {
    auto bs = binomials_from_kernel(ExponentSet::univariate({0, 2, 3}), 3);
    ASSERT_EQ(bs.size(), 1u);
    EXPECT_EQ(format_binomial(bs[0]), "x0*x2^2 - x1^3");
}

TEST(BinomialsFromKernel, LineIsEmpty) {
    for (long b = 1; b <= 4; ++b) EXPECT_TRUE(binomials_from_kernel(ExponentSet::univariate({0, 1}), b).empty());
}

TEST(BinomialsFromKernel, Conic) {
    auto a = ExponentSet::univariate({0, 1, 2});
    EXPECT_TRUE(binomials_from_kernel(a, 1).empty());
    auto bs = binomials_from_kernel(a, 2);
    ASSERT_EQ(bs.size(), 1u);
    EXPECT_EQ(format_binomial(bs[0]), "x0*x2 - x1^2");
}

TEST(BinomialsFromKernel, TwistedCubicSortedByDegree) {
    auto bs = binomials_from_kernel(ExponentSet::univariate({0, 1, 2, 3}), 2);
    std::vector<std::string> got;
    for (const auto& b : bs) got.push_back(format_binomial(b));
    // The box [-2,2]^4 holds four kernel vectors up to sign, including the
    // non-primitive 2*(1,-1,-1,1).
    std::vector<std::string> want{"x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2", "x0^2*x3^2 - x1^2*x2^2"};
    EXPECT_EQ(got, want);
    std::size_t count = 0;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d)
                    if (a + b + c + d == 0 && b + 2 * c + 3 * d == 0 && (a || b || c || d)) ++count;
    EXPECT_EQ(count, 2 * bs.size());
    for (std::size_t i = 1; i < bs.size(); ++i) EXPECT_LE(bs[i - 1].degree(), bs[i].degree());
}

TEST(QuadraticBinomials, Hexagon) {
    auto bs = quadratic_binomials(hexagon());
    std::vector<std::string> got;
    for (const auto& b : bs) got.push_back(format_binomial(b, hex_labels));
    std::vector<std::string> want{"a^2 - b*e", "a^2 - c*f", "a^2 - d*g", "a*b - c*g", "a*c - b*d", "a*d - c*e",
                                  "a*e - d*f", "a*f - e*g", "a*g - b*f", "b*e - c*f", "b*e - d*g", "c*f - d*g"};
    EXPECT_EQ(got, want);
}

TEST(QuadraticBinomials, SmallCases) {
    EXPECT_TRUE(quadratic_binomials(ExponentSet::univariate({0, 1})).empty());
    auto bs = quadratic_binomials(ExponentSet::univariate({0, 1, 2}));
    ASSERT_EQ(bs.size(), 1u);
    EXPECT_EQ(format_binomial(bs[0]), "x0*x2 - x1^2");
}

TEST(QuadraticBinomialsProperty, ContainedInKernelBinomials) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        ExponentSet a = random_set(rng, 1 + rng() % 2);
        auto quad = quadratic_binomials(a);
        auto all = binomials_from_kernel(a, 2);
        for (const auto& q : quad) EXPECT_NE(std::find(all.begin(), all.end(), q), all.end());
        // and the quadratic members of the enumeration are exactly these
        std::size_t quadratic_in_all = static_cast<std::size_t>(
            std::count_if(all.begin(), all.end(), [](const Binomial& b) { return b.degree() == 2; }));
        EXPECT_EQ(quadratic_in_all, quad.size());
    }
}

TEST(QuadraticBinomialsProperty, IndependentOfInputOrder) {
    std::mt19937 rng(23);
    ExponentSet hex = hexagon();
    auto canonical = [](const ExponentSet& a) {
        std::set<std::pair<std::multiset<Exponent>, std::multiset<Exponent>>> out;
        for (const auto& b : quadratic_binomials(a)) {
            std::multiset<Exponent> p, q;
            for (std::size_t i = 0; i < a.size(); ++i) {
                for (Integer k = 0; k < b.plus[i]; ++k) p.insert(a[i]);
                for (Integer k = 0; k < b.minus[i]; ++k) q.insert(a[i]);
            }
            out.insert(std::minmax(p, q));
        }
        return out;
    };
    auto base = canonical(hex);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Exponent> v(hex.begin(), hex.end());
        std::shuffle(v.begin(), v.end(), rng);
        EXPECT_EQ(canonical(ExponentSet(2, v)), base);
    }
}

TEST(IsToricBinomial, Examples) {
    ExponentSet hex = hexagon();
    EXPECT_TRUE(is_toric_binomial(hex, unit_sum(7, {0, 1}), unit_sum(7, {2, 6})));
    EXPECT_TRUE(is_toric_binomial(hex, unit_sum(7, {3, 5}), unit_sum(7, {3, 5})));
    auto conic = ExponentSet::univariate({0, 1, 2});
    EXPECT_FALSE(is_toric_binomial(conic, unit_sum(3, {0, 2}), unit_sum(3, {0, 0})));
    EXPECT_THROW(is_toric_binomial(conic, unit_sum(2, {0}), unit_sum(3, {0})), Error);
}

TEST(ResidualAt, Examples) {
    auto cusp = ExponentSet::univariate({0, 2, 3});
    Binomial b = binomials_from_kernel(cusp, 3).front();
    EXPECT_EQ(residual_at(b, cusp, {Rational(2)}), 0);

    ExponentSet hex = hexagon();
    Binomial ab_cg{unit_sum(7, {0, 1}), unit_sum(7, {2, 6})};
    EXPECT_EQ(residual_at(ab_cg, hex, {Rational(2), Rational(3)}), 0);

    auto conic = ExponentSet::univariate({0, 1, 2});
    Binomial bad{unit_sum(3, {0, 2}), unit_sum(3, {1, 1, 1})};
    EXPECT_EQ(residual_at(bad, conic, {Rational(2)}), -4);
}

TEST(ResidualAt, Errors) {
    auto conic = ExponentSet::univariate({0, 1, 2});
    Binomial b{unit_sum(3, {0, 2}), unit_sum(3, {1, 1})};
    try {
        residual_at(b, conic, {Rational(0)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroCoordinate);
    }
    EXPECT_THROW(residual_at(b, conic, {Rational(1), Rational(2)}), Error);
}

TEST(BinomialProperty, HomogeneousToricAndVanishing) {
    const std::vector<std::pair<ExponentSet, long>> fixtures = {
        {hexagon(), 2},
        {ExponentSet::univariate({0, 2, 3}), 3},
        {ExponentSet::univariate({0, 1, 2, 3}), 3},
        {ExponentSet(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0, 0}}), 2},
        {ExponentSet(2, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {0, 2}}), 1},
    };
    for (const auto& [a, bound] : fixtures) {
        auto bs = binomials_from_kernel(a, bound);
        ASSERT_FALSE(bs.empty());
        auto pts = torus_points(a.dim(), 25);
        for (const auto& b : bs) {
            EXPECT_EQ(b.degree(), std::accumulate(b.minus.begin(), b.minus.end(), Integer(0)));
            for (std::size_t i = 0; i < b.plus.size(); ++i) EXPECT_EQ(b.plus[i] * b.minus[i], 0);
            EXPECT_TRUE(is_toric_binomial(a, b.plus, b.minus));
            EXPECT_TRUE(b.plus > b.minus);
            for (const auto& t : pts) EXPECT_EQ(residual_at(b, a, t), 0);
        }
    }
}

TEST(DefaultBound, CoordinateSpread) {
    EXPECT_EQ(default_kernel_bound(hexagon()), 2);
    EXPECT_EQ(default_kernel_bound(ExponentSet::univariate({0, 2, 3})), 3);
    EXPECT_EQ(default_kernel_bound(ExponentSet(1, {{4}})), 1);
}

TEST(Format, Labels) {
    Binomial b{unit_sum(3, {0, 0, 2}), unit_sum(3, {1, 1, 1})};
    EXPECT_EQ(format_binomial(b), "x0^2*x2 - x1^3");
    EXPECT_EQ(format_binomial(b, {"u", "v", "w"}), "u^2*w - v^3");
    EXPECT_EQ(format_monomial(IntVector(2, Integer(0))), "1");
}
