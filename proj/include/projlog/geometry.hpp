#pragma once
//
// Complex projective linear algebra on C^{n+1} and P^n: wedge norms, affine
// charts, the Fubini-Study sine distance and the homogenization map between
// functions on C^n and functions on P^n.
//

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "projlog/errors.hpp"

namespace projlog {

using complex = std::complex<double>;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline constexpr double pos_inf = std::numeric_limits<double>::infinity();

/// Hermitian product a . conj(b) = sum_j a_j conj(b_j).
inline complex hermitian_dot(const cvec& a, const cvec& b)
{
    if (a.size() != b.size())
        throw dimension_error("hermitian_dot: dimension mismatch");
    return b.dot(a); // Eigen conjugates the left operand
}

/// |a ^ b|^2 = sum_{i<j} |a_i b_j - a_j b_i|^2, summed over the 2x2 minors.
inline double wedge_norm_sq(const cvec& a, const cvec& b)
{
    if (a.size() != b.size())
        throw dimension_error("wedge_norm_sq: dimension mismatch (" + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()) + ")");
    if (a.size() == 0)
        throw dimension_error("wedge_norm_sq: zero-dimensional vectors");
    double s = 0.0;
    const Eigen::Index d = a.size();
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j)
            s += std::norm(a[i] * b[j] - a[j] * b[i]);
    return s;
}

// Interleaved real view (re_0, im_0, re_1, im_1, ...) of a complex vector.
inline rvec to_real(const cvec& z)
{
    rvec x(2 * z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        x[2 * j] = z[j].real();
        x[2 * j + 1] = z[j].imag();
    }
    return x;
}

inline cvec to_complex(const rvec& x)
{
    if (x.size() % 2 != 0)
        throw dimension_error("to_complex: odd real dimension " + std::to_string(x.size()));
    cvec z(x.size() / 2);
    for (Eigen::Index j = 0; j < z.size(); ++j)
        z[j] = complex(x[2 * j], x[2 * j + 1]);
    return z;
}

/// A point of P^n held as a unit-norm representative in C^{n+1}.
class ProjectivePoint
{
public:
    explicit ProjectivePoint(cvec homog)
        : homog_(std::move(homog))
    {
        if (homog_.size() < 2)
            throw dimension_error("ProjectivePoint: need at least 2 homogeneous coordinates");
        const double nrm = homog_.norm();
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw construction_error("ProjectivePoint: zero or non-finite homogeneous vector");
        homog_ /= nrm;
    }

    /// Complex dimension n of the ambient P^n.
    [[nodiscard]] int dim() const noexcept { return static_cast<int>(homog_.size()) - 1; }
    [[nodiscard]] const cvec& homog() const noexcept { return homog_; }

private:
    cvec homog_;
};

/// Equality of points of P^n: representatives are proportional.
inline bool projective_equal(const ProjectivePoint& p, const ProjectivePoint& q)
{
    return wedge_norm_sq(p.homog(), q.homog()) < 1e-20;
}

class ChartIndex
{
public:
    explicit ChartIndex(int k)
        : k_(k)
    {
        if (k < 0)
            throw construction_error("ChartIndex: negative index");
    }
    [[nodiscard]] int value() const noexcept { return k_; }
    friend bool operator==(ChartIndex, ChartIndex) = default;

private:
    int k_;
};

struct AffinePoint
{
    cvec z;
    ChartIndex chart;
};

struct SineDistance
{
    double sine; // |p ^ q| / (|p||q|), in [0, 1]
    double dist; // Fubini-Study geodesic distance sqrt(2) * asin(sine), in [0, pi/sqrt(2)]
};

inline SineDistance projective_sine_distance(const ProjectivePoint& p, const ProjectivePoint& q)
{
    if (p.dim() != q.dim())
        throw dimension_error("projective_sine_distance: points live in different P^n");
    const double s = std::min(1.0, std::sqrt(wedge_norm_sq(p.homog(), q.homog())));
    // atan2 keeps the angle accurate near pi/2, where asin is ill-conditioned
    const double c = std::abs(hermitian_dot(p.homog(), q.homog()));
    return {s, std::numbers::sqrt2 * std::atan2(s, c)};
}

/// Affine coordinates z_j = zeta_j / zeta_k (j != k, increasing j) in the chart U_k.
inline AffinePoint chart_transform(const ProjectivePoint& p, ChartIndex k)
{
    const int n = p.dim();
    const int kk = k.value();
    if (kk > n)
        throw chart_domain_error("chart_transform: chart index " + std::to_string(kk) +
                                 " exceeds n = " + std::to_string(n));
    const cvec& zeta = p.homog();
    // representatives have norm 1, so the relative test is |zeta_k| > 1e-12
    if (!(std::abs(zeta[kk]) > 1e-12))
        throw chart_domain_error("chart_transform: point not in U_" + std::to_string(kk));
    cvec z(n);
    for (int j = 0, out = 0; j <= n; ++j)
        if (j != kk)
            z[out++] = zeta[j] / zeta[kk];
    return {std::move(z), k};
}

inline ProjectivePoint from_chart(const AffinePoint& a)
{
    const Eigen::Index n = a.z.size();
    const int kk = a.chart.value();
    if (n < 1)
        throw dimension_error("from_chart: empty affine point");
    if (kk > n)
        throw chart_domain_error("from_chart: chart index exceeds n");
    cvec zeta(n + 1);
    for (Eigen::Index j = 0, in = 0; j <= n; ++j)
        zeta[j] = (j == kk) ? complex(1.0, 0.0) : a.z[in++];
    return ProjectivePoint(std::move(zeta));
}

inline ProjectivePoint from_affine(const cvec& z, int chart = 0)
{
    return from_chart(AffinePoint{z, ChartIndex(chart)});
}

/// Fubini-Study local potential (1/2) log(1 + |z|^2).
inline double fs_potential(const cvec& z)
{
    return 0.5 * std::log1p(z.squaredNorm());
}

/// phi_u(zeta) = u(z) - (1/2) log(1 + |z|^2), z the affine coordinates of p in U_k.
/// u(z) = -inf propagates.
template <class Fn>
double homogenize_value(Fn&& u, const ProjectivePoint& p, ChartIndex k)
{
    const AffinePoint a = chart_transform(p, k);
    const double uz = u(a.z);
    if (uz == neg_inf)
        return neg_inf;
    return uz - fs_potential(a.z);
}

/// Standard complex Gaussian vector (independent N(0, 1/2) real and imaginary parts).
template <class Rng>
cvec random_gaussian_cvec(Eigen::Index dim, Rng& rng)
{
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    cvec v(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double re = g(rng);
        const double im = g(rng);
        v[j] = complex(re, im);
    }
    return v;
}

/// Fubini-Study uniform point of P^n: projectivized complex Gaussian in C^{n+1}.
template <class Rng>
ProjectivePoint random_projective_point(int n, Rng& rng)
{
    for (;;) {
        cvec v = random_gaussian_cvec(n + 1, rng);
        if (v.norm() > 0.0)
            return ProjectivePoint(std::move(v));
    }
}

} // namespace projlog
