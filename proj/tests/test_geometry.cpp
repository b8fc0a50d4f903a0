#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "projlog/geometry.hpp"
#include "projlog/verify/oracles.hpp"

using namespace projlog;

namespace {

cvec vec(std::initializer_list<complex> xs)
{
    cvec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (complex x : xs)
        v[i++] = x;
    return v;
}

} // namespace

TEST(WedgeNorm, BasisVectors)
{
    EXPECT_DOUBLE_EQ(wedge_norm_sq(vec({1, 0}), vec({0, 1})), 1.0);
}

TEST(WedgeNorm, ProportionalVectorsVanish)
{
    const cvec a = vec({{1, 2}, {-0.5, 3}, {0.25, 0}});
    EXPECT_EQ(wedge_norm_sq(a, a), 0.0);
    EXPECT_NEAR(wedge_norm_sq(a, complex(0.3, -1.7) * a), 0.0, 1e-24);
}

TEST(WedgeNorm, AgreesWithGramFormInC3)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const cvec a = random_gaussian_cvec(3, rng), b = random_gaussian_cvec(3, rng);
        const double lhs = wedge_norm_sq(a, b);
        EXPECT_NEAR(lhs, oracle::gram_wedge_sq(a, b), 1e-12 * a.squaredNorm() * b.squaredNorm());
        EXPECT_GE(lhs, 0.0);
    }
}

TEST(WedgeNorm, RejectsBadDimensions)
{
    EXPECT_THROW(wedge_norm_sq(vec({1, 0}), vec({1, 0, 0})), dimension_error);
    EXPECT_THROW(wedge_norm_sq(cvec(0), cvec(0)), dimension_error);
}

TEST(Lagrange, AffineIdentity)
{
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 4; ++n)
        for (int i = 0; i < 500; ++i) {
            const cvec z = random_gaussian_cvec(n, rng), w = random_gaussian_cvec(n, rng);
            const double denom = (1 + z.squaredNorm()) * (1 + w.squaredNorm());
            const double wedge = n > 1 ? wedge_norm_sq(z, w) : 0.0;
            const double lhs = ((z - w).squaredNorm() + wedge) / denom;
            const double rhs = 1.0 - std::norm(1.0 + hermitian_dot(z, w)) / denom;
            EXPECT_NEAR(lhs, rhs, 1e-12);
        }
}

TEST(ProjectivePoint, NormalizesAndRejectsZero)
{
    const ProjectivePoint p(vec({3, 4}));
    EXPECT_NEAR(p.homog().norm(), 1.0, 1e-15);
    EXPECT_EQ(p.dim(), 1);
    EXPECT_THROW(ProjectivePoint(vec({0, 0})), construction_error);
    EXPECT_TRUE(projective_equal(p, ProjectivePoint(complex(0, 2) * vec({3, 4}))));
}

TEST(SineDistance, IdenticalPoints)
{
    const ProjectivePoint p(vec({1, {0, 2}, -1}));
    const auto sd = projective_sine_distance(p, p);
    EXPECT_EQ(sd.sine, 0.0);
    EXPECT_EQ(sd.dist, 0.0);
}

TEST(SineDistance, OrthogonalPoints)
{
    const auto sd = projective_sine_distance(ProjectivePoint(vec({1, 1})), ProjectivePoint(vec({1, -1})));
    EXPECT_NEAR(sd.sine, 1.0, 1e-15);
    EXPECT_NEAR(sd.dist, std::numbers::pi / std::numbers::sqrt2, 1e-12);
}

TEST(SineDistance, HalfAngleExample)
{
    const auto sd = projective_sine_distance(ProjectivePoint(vec({1, 0})), ProjectivePoint(vec({1, 1})));
    EXPECT_NEAR(sd.sine, 1.0 / std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(sd.dist, std::numbers::pi * std::numbers::sqrt2 / 4.0, 1e-12);
}

TEST(SineDistance, SymmetricAndTriangleInequality)
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 2000; ++i) {
        const int n = 1 + i % 3;
        const auto p = random_projective_point(n, rng);
        const auto q = random_projective_point(n, rng);
        const auto r = random_projective_point(n, rng);
        const double pq = projective_sine_distance(p, q).dist;
        EXPECT_DOUBLE_EQ(pq, projective_sine_distance(q, p).dist);
        EXPECT_LE(pq, projective_sine_distance(p, r).dist + projective_sine_distance(r, q).dist + 1e-9);
        EXPECT_LE(pq, std::numbers::pi / std::numbers::sqrt2 + 1e-15);
    }
}

TEST(Charts, ForwardExamples)
{
    const ProjectivePoint p(vec({1, 2, 3}));
    const AffinePoint a0 = chart_transform(p, ChartIndex(0));
    EXPECT_NEAR(std::abs(a0.z[0] - complex(2)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(a0.z[1] - complex(3)), 0.0, 1e-14);
    const AffinePoint a1 = chart_transform(p, ChartIndex(1));
    EXPECT_NEAR(std::abs(a1.z[0] - complex(0.5)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(a1.z[1] - complex(1.5)), 0.0, 1e-14);
}

TEST(Charts, RoundTripAndTransition)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const int n = 1 + i % 4;
        const auto p = random_projective_point(n, rng);
        for (int k = 0; k <= n; ++k) {
            const auto back = from_chart(chart_transform(p, ChartIndex(k)));
            EXPECT_LT(wedge_norm_sq(back.homog(), p.homog()), 1e-20);
        }
        // U_0 -> U_1 directly vs through the projective point
        const cvec z0 = chart_transform(p, ChartIndex(0)).z;
        const cvec z1 = chart_transform(from_chart({z0, ChartIndex(0)}), ChartIndex(1)).z;
        cvec expect(n);
        expect[0] = 1.0 / z0[0];
        for (int j = 1; j < n; ++j)
            expect[j] = z0[j] / z0[0];
        EXPECT_LT((z1 - expect).norm(), 1e-12 * (1.0 + expect.norm()));
    }
}

TEST(Charts, OutsideChartIsAnError)
{
    const ProjectivePoint p(vec({0, 1, 2}));
    EXPECT_THROW(chart_transform(p, ChartIndex(0)), chart_domain_error);
    EXPECT_THROW(chart_transform(p, ChartIndex(3)), chart_domain_error);
    EXPECT_THROW(ChartIndex(-1), construction_error);
}

TEST(Homogenize, FubiniStudyPotentialCancels)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_projective_point(2, rng);
        EXPECT_NEAR(homogenize_value(fs_potential, p, ChartIndex(0)), 0.0, 1e-14);
    }
}

TEST(Homogenize, LogOfCoordinate)
{
    std::mt19937_64 rng(2);
    auto u = [](const cvec& z) { return std::log(std::abs(z[0])); };
    for (int i = 0; i < 100; ++i) {
        const auto p = random_projective_point(2, rng);
        const cvec zeta = p.homog() * 7.0; // any representative
        const double expect = std::log(std::abs(zeta[1])) - std::log(zeta.norm());
        EXPECT_NEAR(homogenize_value(u, p, ChartIndex(0)), expect, 1e-12);
    }
}

TEST(Homogenize, MinusInfinityPropagates)
{
    auto u = [](const cvec&) { return neg_inf; };
    EXPECT_EQ(homogenize_value(u, ProjectivePoint(vec({1, 1})), ChartIndex(0)), neg_inf);
}
