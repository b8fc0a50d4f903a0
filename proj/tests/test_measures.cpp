#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "projlog/measures.hpp"
#include "projlog/quadrature.hpp"

using namespace projlog;

namespace {

rvec pt(std::initializer_list<double> xs)
{
    rvec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs)
        v[i++] = x;
    return v;
}

Measure atomic(std::vector<rvec> points, std::vector<double> weights)
{
    return make_atomic(std::move(points), std::move(weights));
}

} // namespace

TEST(MakeAtomic, Dirac)
{
    const Measure d = atomic({pt({0, 0})}, {1.0});
    EXPECT_EQ(d.kind(), MeasureKind::atomic);
    EXPECT_EQ(d.size(), 1u);
    EXPECT_EQ(d.weight(0), 1.0);
    EXPECT_EQ(d.complex_dim(), 1);
}

TEST(MakeAtomic, TwoAtomsAreNormalized)
{
    const Measure m = atomic({pt({0, 0}), pt({1, 0})}, {0.5, 0.5 + 1e-13});
    EXPECT_NEAR(m.weight(0) + m.weight(1), 1.0, 1e-16);
}

TEST(MakeAtomic, RejectsBadWeights)
{
    try {
        atomic({pt({0, 0}), pt({1, 0})}, {0.5, 0.6});
        FAIL() << "expected a construction error";
    } catch (const construction_error& e) {
        EXPECT_NE(std::string(e.what()).find("weights sum to 1.1"), std::string::npos) << e.what();
    }
    EXPECT_THROW(atomic({pt({0, 0}), pt({1, 0})}, {1.5, -0.5}), construction_error);
    EXPECT_THROW(atomic({pt({0, 0}), pt({0, 0})}, {0.5, 0.5}), construction_error);
    EXPECT_THROW(atomic({}, {}), construction_error);
    EXPECT_THROW(atomic({pt({0, 0}), pt({1, 0, 0})}, {0.5, 0.5}), dimension_error);
}

TEST(SampleFamily, SegmentIsDeterministicAndOnTheSegment)
{
    FamilySpec s;
    s.family = Family::segment;
    s.dim = 4;
    s.count = 1000;
    s.seed = 7;
    const Measure a = sample_family(s);
    const Measure b = sample_family(s);
    ASSERT_EQ(a.size(), 1000u);
    EXPECT_EQ(a.kind(), MeasureKind::sample_cloud);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.point(i), b.point(i));
        EXPECT_LE(std::abs(a.point(i)[0]), 0.5);
        EXPECT_EQ(a.point(i).tail(3).norm(), 0.0);
    }
    s.seed = 8;
    EXPECT_NE(sample_family(s).point(0), a.point(0));
}

TEST(SampleFamily, BallSphereKplaneStayInside)
{
    for (Family f : {Family::ball, Family::sphere, Family::kplane}) {
        FamilySpec s;
        s.family = f;
        s.dim = 3;
        s.radius = 2.0;
        s.count = 500;
        s.seed = 1;
        const Measure m = sample_family(s);
        for (const rvec& p : m.points()) {
            if (f == Family::ball) {
                EXPECT_LE(p.norm(), 2.0);
            }
            if (f == Family::sphere) {
                EXPECT_NEAR(p.norm(), 2.0, 1e-12);
            }
            if (f == Family::kplane) {
                EXPECT_LE(p.lpNorm<Eigen::Infinity>(), 0.5 + 1e-12);
            }
        }
    }
}

TEST(SampleFamily, CantorPointsAvoidMiddleThird)
{
    FamilySpec s;
    s.family = Family::cantor_line;
    s.dim = 1;
    s.count = 4096;
    s.seed = 2;
    const Measure m = sample_family(s);
    for (const rvec& p : m.points()) {
        const double x = p[0] + 0.5; // samples live on the centered unit interval
        EXPECT_TRUE(x < 1.0 / 3.0 || x > 2.0 / 3.0) << x;
    }
}

TEST(SampleFamily, InvalidSpecs)
{
    FamilySpec s;
    s.family = Family::cantor_line;
    s.ratio = 0.6;
    EXPECT_THROW(sample_family(s), construction_error);
    s.ratio = 1.0 / 3.0;
    s.count = 0;
    EXPECT_THROW(sample_family(s), construction_error);
    EXPECT_THROW(family_from_string("torus"), construction_error);
    EXPECT_EQ(family_from_string("uniform_Pn"), Family::uniform_pn);
}

TEST(SampleFamily, UniformPnSineSquaredMean)
{
    FamilySpec s;
    s.family = Family::uniform_pn;
    s.n = 1;
    s.count = 100000;
    s.seed = 4;
    const auto pts = as_projective_points(sample_family(s));
    const ProjectivePoint a(cvec::Unit(2, 0));
    double mean = 0.0, sq = 0.0;
    for (const auto& p : pts) {
        const double v = std::pow(projective_sine_distance(a, p).sine, 2);
        mean += v;
        sq += v * v;
    }
    mean /= pts.size();
    const double se = std::sqrt((sq / pts.size() - mean * mean) / pts.size());
    const double quad =
        quadrature::radial_integrate_pn([](double r) { return std::pow(std::sin(r / std::numbers::sqrt2), 2); }, 1);
    EXPECT_NEAR(mean, quad, 3 * se);
}

TEST(Concentration, Examples)
{
    const Measure d = atomic({pt({1, 2})}, {1.0});
    EXPECT_EQ(concentration(d, pt({1, 2}), 1e-9), 1.0);
    const Measure two = atomic({pt({0, 0}), pt({1, 0})}, {0.5, 0.5});
    EXPECT_EQ(concentration(two, pt({0, 0}), 0.5), 0.5);
    EXPECT_EQ(concentration(two, pt({0, 0}), 1.0), 0.5); // open ball
    EXPECT_EQ(concentration(two, pt({0, 0}), 1.0 + 1e-12), 1.0);
}

TEST(Concentration, AverageOverSpaceIsBallVolume)
{
    // integral of mu(x, r) dx over R^2 equals pi r^2 for any probability measure
    FamilySpec s;
    s.family = Family::kplane;
    s.dim = 2;
    s.count = 2000;
    s.seed = 3;
    const Measure sq = sample_family(s);
    const double r = 0.1;
    quadrature::GridSpec g{rvec::Zero(2), rvec::Constant(2, 0.5 + r), 120};
    const double v = quadrature::grid_integrate([&](const rvec& x) { return concentration(sq, x, r); }, g).value;
    EXPECT_NEAR(v / (std::numbers::pi * r * r), 1.0, 0.02);
}

TEST(QConcentration, DiracIsOne)
{
    const Measure d = atomic({pt({0, 0})}, {1.0});
    const auto q = q_concentration(d, {0.01, 0.1, 1.0});
    for (double v : q.values)
        EXPECT_EQ(v, 1.0);
    EXPECT_THROW(q_concentration(d, {}), domain_error);
    EXPECT_THROW(q_concentration(d, {0.2, 0.1}), domain_error);
}

TEST(QConcentration, SegmentLawAndMonotone)
{
    FamilySpec s;
    s.family = Family::segment;
    s.dim = 2;
    s.count = 4000;
    s.seed = 5;
    const Measure m = sample_family(s);
    const std::vector<double> radii = geometric_radii(0.01, 0.6, 12);
    const auto q = q_concentration(m, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        // sup over centers adds the extreme of the binomial counts on top of min(2r, 1)
        const double law = std::min(2 * radii[i], 1.0);
        EXPECT_GE(q.values[i], law - 3.0 / std::sqrt(4000.0));
        EXPECT_LE(q.values[i], law + 6.0 * std::sqrt(law / 4000.0) + 3.0 / 4000.0);
        if (i > 0) {
            EXPECT_GE(q.values[i], q.values[i - 1]);
        }
    }
}

TEST(QConcentration, SmallRadiusRecoversLargestAtom)
{
    const Measure m = atomic({pt({0, 0}), pt({1, 0}), pt({0, 3})}, {0.2, 0.5, 0.3});
    EXPECT_EQ(q_concentration(m, {1e-6}).values[0], m.max_weight());
}

TEST(DimensionEstimate, DiracIsFlat)
{
    const auto e = dimension_estimate(atomic({pt({0, 0})}, {1.0}), 0.01, 0.1, 5);
    EXPECT_EQ(e.gamma, 0.0);
    EXPECT_TRUE(e.flat);
    EXPECT_THROW(dimension_estimate(atomic({pt({0, 0})}, {1.0}), 0.1, 0.01, 5), domain_error);
}

TEST(DimensionEstimate, SegmentIsOneDimensional)
{
    FamilySpec s;
    s.family = Family::segment;
    s.dim = 4;
    s.count = 20000;
    s.seed = 6;
    const auto e = dimension_estimate(sample_family(s), 0.005, 0.05, 8);
    EXPECT_NEAR(e.gamma, 1.0, 0.1);
    EXPECT_GE(e.gamma, 0.0);
    EXPECT_LE(e.gamma, 4.0);
}

TEST(DimensionEstimate, BallInR3)
{
    FamilySpec s;
    s.family = Family::ball;
    s.dim = 3;
    s.count = 50000;
    s.seed = 2;
    const auto e = dimension_estimate(sample_family(s), 0.05, 0.2, 6);
    EXPECT_NEAR(e.gamma, 3.0, 0.25);
}

TEST(LogMoment, Examples)
{
    EXPECT_EQ(log_moment(atomic({pt({0, 0})}, {1.0})), 0.0);
    EXPECT_NEAR(log_moment(atomic({pt({1, 0, 0, 0})}, {1.0})), std::log(2.0), 1e-15);
    const Measure a = atomic({pt({1, 0}), pt({0, 2})}, {0.3, 0.7});
    const Measure b = atomic({pt({-1, 1}), pt({0.5, 0})}, {0.6, 0.4});
    EXPECT_NEAR(log_moment(mixture(a, 0.5, b)), 0.5 * log_moment(a) + 0.5 * log_moment(b), 1e-12);
}
