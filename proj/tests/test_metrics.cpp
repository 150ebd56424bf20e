#include "swimmer/metrics.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

namespace swimmer {
namespace {

ElongationField field(int n, double length, const std::function<double(double)>& g)
{
    const UniformGrid grid(n, length);
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    for (int j = 1; j <= n; ++j) v[static_cast<std::size_t>(j - 1)] = g(grid.node(j));
    v.back() = 0.0;
    return ElongationField(grid, v);
}

ElongationField random_field(std::mt19937_64& rng, int n)
{
    std::normal_distribution<double> g;
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = g(rng);
    return ElongationField(UniformGrid(n, 4e-4), v);
}

TEST(Norms, ConstantFieldWithZeroEnd)
{
    const auto f = field(10, 4e-4, [](double) { return 1.0; });
    EXPECT_NEAR(l2_norm(f), 0.01932183566158592, 1e-16);
    EXPECT_NEAR(h1_seminorm(f), std::sqrt(1.0 / 4e-5), 1e-9);
}

TEST(Norms, HatAtHead)
{
    std::vector<double> v(11, 0.0);
    v[0] = 1.0;
    const ElongationField f(UniformGrid(10, 4e-4), v);
    EXPECT_NEAR(l2_norm(f), std::sqrt(4e-5 / 3.0), 1e-16);
}

TEST(Norms, LinearRamp)
{
    const double c = 2.5;
    const auto f = field(16, 4e-4, [&](double y) { return c * (1.0 - y / 4e-4); });
    EXPECT_NEAR(h1_seminorm(f), c / std::sqrt(4e-4), 1e-10);
    // exact for linear data: c^2 Lambda / 3
    EXPECT_NEAR(l2_norm(f), c * std::sqrt(4e-4 / 3.0), 1e-14);
}

TEST(Norms, MatchSimpsonOnRandomFields)
{
    std::mt19937_64 rng(21);
    for (int k = 0; k < 20; ++k) {
        const auto f = random_field(rng, 7);
        const auto g = random_field(rng, 7);
        auto prod = [&](double y) {
            return oracle::piecewise_linear(f.values, 4e-4, y) * oracle::piecewise_linear(g.values, 4e-4, y);
        };
        // Simpson is exact on each cell when the cell boundaries are nodes of the rule
        EXPECT_NEAR(l2_inner(f, g), oracle::simpson(prod, 0.0, 4e-4, 7 * 20), 1e-15);
    }
}

TEST(Norms, GridMismatchThrows)
{
    const auto a = ElongationField::zero(UniformGrid(4, 1.0));
    const auto b = ElongationField::zero(UniformGrid(5, 1.0));
    EXPECT_THROW(l2_inner(a, b), std::invalid_argument);
    EXPECT_THROW(h1_inner(a, b), std::invalid_argument);
    EXPECT_THROW(discrete_inner_products(a, b), std::invalid_argument);
}

TEST(InnerProducts, LumpingDefectIdentity)
{
    // (u,v)_h - (u,v) = (h/2) u_1 v_1 + (h^2/6) (u', v')
    std::mt19937_64 rng(4);
    for (int n : {1, 3, 10, 100}) {
        const auto u = random_field(rng, n);
        const auto v = random_field(rng, n);
        const auto ip = discrete_inner_products(u, v);
        const double h = u.grid.h();
        const double expected = 0.5 * h * u.values[0] * v.values[0] + h * h / 6.0 * h1_inner(u, v);
        EXPECT_NEAR(ip.delta_h, expected, 1e-12 * (std::abs(ip.paren_h) + std::abs(expected)));
        EXPECT_NEAR(ip.paren_h - ip.angle_h, 0.5 * h * u.values[0] * v.values[0], 1e-18);
    }
}

TEST(InnerProducts, DefectIsNonNegativeOnTheDiagonal)
{
    std::mt19937_64 rng(8);
    for (int k = 0; k < 100; ++k) {
        const auto u = random_field(rng, 12);
        EXPECT_GE(discrete_inner_products(u, u).delta_h, 0.0);
    }
}

TEST(NormEquivalence, RandomFields)
{
    std::mt19937_64 rng(17);
    for (int n : {1, 3, 10, 100}) {
        for (int k = 0; k < 200; ++k) {
            const auto v = random_field(rng, n);
            const auto r = norm_equivalence_check(v);
            EXPECT_TRUE(r.lhs_ok);
            EXPECT_TRUE(r.rhs_ok);
        }
    }
}

TEST(NormEquivalence, ExtremeFields)
{
    // an alternating field makes (v,v) as small as possible relative to (v,v)_h
    std::vector<double> v(101, 0.0);
    for (std::size_t j = 0; j < 100; ++j) v[j] = (j % 2 ? -1.0 : 1.0);
    const ElongationField alt(UniformGrid(100, 4e-4), v);
    const auto r = norm_equivalence_check(alt);
    EXPECT_TRUE(r.lhs_ok && r.rhs_ok);
    const auto ip = discrete_inner_products(alt, alt);
    EXPECT_LT(l2_inner(alt, alt) / ip.paren_h, 0.34);
    EXPECT_TRUE(norm_equivalence_check(ElongationField::zero(UniformGrid(5, 1.0))).lhs_ok);
}

TEST(Interpolation, EndIsZeroAndNodesMatch)
{
    SwimmerParams p;
    const auto m = build_continuous_mode(p, Forcing(0.7, 1.0, 3e-5));
    const UniformGrid g(40, p.Lambda);
    const auto f = interpolate(m, g, 0.7);
    EXPECT_EQ(f.values.back(), 0.0);
    EXPECT_DOUBLE_EQ(f.values[10], eval_continuous(m, g.node(11), 0.7));
    const auto e = error_vs_analytic(f, m, 0.7);
    EXPECT_EQ(e.l2_error, 0.0);
    EXPECT_EQ(e.h1_error, 0.0);
    EXPECT_EQ(e.n, 40);
}

std::vector<ErrorRecord> synthetic(double p, double c, std::vector<int> ns)
{
    std::vector<ErrorRecord> out;
    for (int n : ns) {
        const double h = 4e-4 / n;
        out.push_back({n, h, c * std::pow(h, p), 3.0 * c * std::pow(h, p / 2.0)});
    }
    return out;
}

TEST(FitRate, RecoversExactPowerLaw)
{
    const auto recs = synthetic(2.0, 5.0, {25, 50, 100, 200});
    const auto r = fit_rate(recs, ErrorNorm::L2);
    EXPECT_NEAR(r.slope, 2.0, 1e-12);
    EXPECT_NEAR(r.intercept, std::log(5.0), 1e-9);
    EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
    EXPECT_EQ(r.points, 4);
    EXPECT_NEAR(fit_rate(recs, ErrorNorm::H1).slope, 1.0, 1e-12);
}

TEST(FitRate, InvariantUnderErrorScaling)
{
    auto a = synthetic(1.3, 1.0, {10, 20, 40, 80});
    auto b = synthetic(1.3, 1e-9, {10, 20, 40, 80});
    EXPECT_NEAR(fit_rate(a, ErrorNorm::L2).slope, fit_rate(b, ErrorNorm::L2).slope, 1e-12);
}

TEST(FitRate, RejectsBadInput)
{
    EXPECT_THROW(fit_rate(synthetic(1.0, 1.0, {10, 20}), ErrorNorm::L2), std::invalid_argument);
    EXPECT_THROW(fit_rate(synthetic(1.0, 1.0, {10, 10, 20}), ErrorNorm::L2), std::invalid_argument);
    auto zero = synthetic(1.0, 0.0, {10, 20, 40});
    EXPECT_THROW(fit_rate(zero, ErrorNorm::L2), DegenerateFitError);
    auto one_zero = synthetic(1.0, 1.0, {10, 20, 40});
    one_zero[1].l2_error = 0.0;
    EXPECT_THROW(fit_rate(one_zero, ErrorNorm::L2), DegenerateFitError);
    auto nan = synthetic(1.0, 1.0, {10, 20, 40});
    nan[0].l2_error = NAN;
    EXPECT_THROW(fit_rate(nan, ErrorNorm::L2), std::invalid_argument);
}

TEST(FitRate, ReportDropsCoarsestOnlyWhenFitIsPoor)
{
    auto clean = synthetic(1.0, 1.0, {25, 50, 100, 200});
    EXPECT_FALSE(fit_rate_report(clean, ErrorNorm::L2).without_coarsest.has_value());

    auto kinked = synthetic(2.0, 1.0, {25, 50, 100, 200, 400});
    kinked[0].l2_error *= 400.0;
    const auto r = fit_rate_report(kinked, ErrorNorm::L2);
    ASSERT_TRUE(r.without_coarsest.has_value());
    EXPECT_NEAR(r.best().slope, 2.0, 1e-12);
    EXPECT_EQ(r.best().points, 4);
}

}  // namespace
}  // namespace swimmer
