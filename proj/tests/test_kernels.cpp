#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "projlog/kernels.hpp"
#include "projlog/verify/oracles.hpp"

using namespace projlog;

namespace {

double rel_err(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want)
{
    return (got - want).norm() / std::max(1.0, want.norm());
}

} // namespace

TEST(KernelK, Examples)
{
    std::mt19937_64 rng(1);
    const cvec z = random_gaussian_cvec(2, rng);
    EXPECT_NEAR(kernel_K(z, cvec::Zero(2)), std::log(z.norm()), 1e-14);
    EXPECT_EQ(kernel_K(z, z), neg_inf);
    for (int i = 0; i < 1000; ++i) {
        const cvec a = 2.0 * random_gaussian_cvec(2, rng), b = 2.0 * random_gaussian_cvec(2, rng);
        EXPECT_LE(kernel_K(a, b), fs_potential(a) + 1e-12);
    }
    EXPECT_THROW(kernel_K(cvec::Zero(2), cvec::Zero(3)), dimension_error);
}

TEST(KernelN, Examples)
{
    std::mt19937_64 rng(2);
    const cvec z = random_gaussian_cvec(3, rng), w = random_gaussian_cvec(3, rng);
    EXPECT_NEAR(kernel_N(z, cvec::Zero(3)), std::log(z.norm()), 1e-14);
    EXPECT_NEAR(kernel_N(w, w, RegEps(0.3)), 0.5 * std::log(0.09 / (1 + w.squaredNorm())), 1e-14);
    EXPECT_EQ(kernel_N(w, w), neg_inf);
    EXPECT_THROW(RegEps(-1.0), domain_error);
}

TEST(KernelN, SandwichGapAndMonotone)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5000; ++i) {
        const cvec z = 1.5 * random_gaussian_cvec(2, rng), w = 1.5 * random_gaussian_cvec(2, rng);
        const double k = kernel_K(z, w), n0 = kernel_N(z, w);
        EXPECT_LE(k, n0 + 1e-12);
        EXPECT_LE(n0, fs_potential(z) + 1e-12);
        EXPECT_LE(n0 - k, 0.5 * std::log1p(std::min(z.squaredNorm(), w.squaredNorm())) + 1e-12);
        const double n1 = kernel_N(z, w, RegEps(0.1)), n2 = kernel_N(z, w, RegEps(0.2));
        EXPECT_LT(n0, n1);
        EXPECT_LT(n1, n2);
    }
}

TEST(KernelG, Examples)
{
    const ProjectivePoint p(cvec::Unit(3, 0)), q(cvec::Unit(3, 2));
    EXPECT_EQ(kernel_G(p, q), 0.0);
    EXPECT_EQ(kernel_G(p, p), neg_inf);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 1000; ++i) {
        const cvec z = random_gaussian_cvec(2, rng), w = random_gaussian_cvec(2, rng);
        const auto a = from_affine(z), b = from_affine(w);
        const double g = kernel_G(a, b);
        EXPECT_LE(g, 0.0);
        EXPECT_DOUBLE_EQ(g, kernel_G(b, a));
        EXPECT_NEAR(g, std::log(projective_sine_distance(a, b).sine), 1e-12);
        EXPECT_NEAR(g, kernel_N(z, w) - fs_potential(z), 1e-12);
    }
}

TEST(GradN, ZeroOnDiagonalAndRequiresEps)
{
    std::mt19937_64 rng(5);
    const cvec w = random_gaussian_cvec(2, rng);
    EXPECT_EQ(grad_N_eps(w, w, RegEps(0.1)).norm(), 0.0);
    try {
        grad_N_eps(w, w, RegEps(0.0));
        FAIL();
    } catch (const domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("derivatives require eps > 0"), std::string::npos);
    }
    EXPECT_THROW(hessian_N_eps(w, w, RegEps{}), domain_error);
}

TEST(GradN, MatchesFiniteDifferences)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> eps_dist(0.2, 1.0);
    for (int i = 0; i < 300; ++i) {
        const int n = 1 + i % 3;
        const cvec z = random_gaussian_cvec(n, rng), w = random_gaussian_cvec(n, rng);
        const RegEps eps(eps_dist(rng));
        const cvec g = grad_N_eps(z, w, eps);
        const cvec fd = oracle::fd_gradient([&](const cvec& x) { return kernel_N(x, w, eps); }, z);
        EXPECT_LT((g - fd).norm() / std::max(1.0, g.norm()), 1e-6);
    }
}

TEST(GradN, RealGradientBound)
{
    // measured on the holomorphic gradient |dN_e|
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10000; ++i) {
        const int n = 1 + i % 3;
        const cvec z = 2.0 * random_gaussian_cvec(n, rng), w = 2.0 * random_gaussian_cvec(n, rng);
        const double e = 0.01 + (i % 7) * 0.1;
        const double lhs = grad_N_eps(z, w, RegEps(e)).norm();
        EXPECT_LE(lhs, std::numbers::sqrt2 / 2 * (1 + w.norm()) / (z - w).norm() * (1 + 1e-12));
    }
}

TEST(HessianN, DiagonalValueInOneDimension)
{
    const cvec w = cvec::Constant(1, complex(0.3, -0.7));
    const auto h = hessian_N_eps(w, w, RegEps(0.2));
    EXPECT_NEAR(h(0, 0).real(), 1.0 / (2 * 0.04), 1e-10);
    EXPECT_EQ(h(0, 0).imag(), 0.0);
}

TEST(HessianN, MatchesFiniteDifferencesAndIsPSD)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> eps_dist(0.3, 1.0);
    for (int i = 0; i < 300; ++i) {
        const int n = 1 + i % 3;
        const cvec z = random_gaussian_cvec(n, rng), w = random_gaussian_cvec(n, rng);
        const RegEps eps(eps_dist(rng));
        const auto h = hessian_N_eps(z, w, eps);
        EXPECT_EQ((h - h.adjoint()).norm(), 0.0);
        const auto fd_g = oracle::fd_hessian_from_gradient([&](const cvec& x) { return grad_N_eps(x, w, eps); }, z);
        EXPECT_LT(rel_err(h, fd_g), 1e-6);
        const auto fd_v = oracle::fd_hessian([&](const cvec& x) { return kernel_N(x, w, eps); }, z);
        EXPECT_LT(rel_err(h, fd_v), 1e-5);
    }
}

TEST(HessianN, PositiveAndEntryBound)
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10000; ++i) {
        const int n = 1 + i % 3;
        const cvec z = 2.0 * random_gaussian_cvec(n, rng), w = 2.0 * random_gaussian_cvec(n, rng);
        const double e = 0.001 + (i % 5) * 0.2;
        const auto h = hessian_N_eps(z, w, RegEps(e));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10 * std::max(1.0, h.norm()));
        const double d = (z - w).squaredNorm() + (n > 1 ? wedge_norm_sq(z, w) : 0.0) + e * e;
        EXPECT_LE(h.cwiseAbs().maxCoeff(), hessian_entry_constant * (1 + w.squaredNorm()) / d * (1 + 1e-12));
    }
}
