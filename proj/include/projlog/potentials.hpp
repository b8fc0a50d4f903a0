#pragma once
//
// Potentials of finitely supported measures: U_mu, V_mu, the regularized
// V_mu^e and its twist V_mu^e + phi on C^n, the projective potential G_mu on
// P^n, their derivatives, Monge-Ampere / k-Hessian / mixed densities, ball
// masses of the regularized Monge-Ampere measure and the Robin function.
//
// Monge-Ampere normalization: d^c = (i/2pi)(dbar - d), so dd^c = (i/pi) d dbar
// and (dd^c u)^n = cma(n) det(u_{j kbar}) dV with cma(n) = 2^n n! / pi^n. With
// this choice (dd^c N(., w))^n is the unit Dirac mass at w.
//

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "projlog/detail/summation.hpp"
#include "projlog/errors.hpp"
#include "projlog/geometry.hpp"
#include "projlog/kernels.hpp"
#include "projlog/measures.hpp"
#include "projlog/quadrature.hpp"

namespace projlog {

/// cma(n) = 2^n n! / pi^n.
inline double ma_constant(int n)
{
    double c = 1.0;
    for (int j = 1; j <= n; ++j)
        c *= 2.0 * j / std::numbers::pi;
    return c;
}

inline double binomial(int n, int k)
{
    double b = 1.0;
    for (int j = 1; j <= k; ++j)
        b = b * (n - k + j) / j;
    return b;
}

// ---------------------------------------------------------------------------
// values on C^n

namespace detail {

template <class Kernel>
double weighted_kernel_sum(const Measure& mu, const cvec& z, Kernel&& kernel)
{
    const auto& pts = mu.complex_points();
    if (z.size() != mu.complex_dim())
        throw dimension_error("potential: evaluation point dimension does not match the measure");
    compensated_sum s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double w = mu.weight(i);
        if (w == 0.0)
            continue;
        const double k = kernel(z, pts[i]);
        if (k == neg_inf)
            return neg_inf;
        s.add(w * k);
    }
    return s.value();
}

} // namespace detail

/// U_mu(z) = integral of K(z, w) d mu(w).
inline double eval_U(const Measure& mu, const cvec& z)
{
    return detail::weighted_kernel_sum(mu, z, [](const cvec& a, const cvec& b) { return kernel_K(a, b); });
}

/// V_mu^e(z) = integral of N_e(z, w) d mu(w); e = 0 gives V_mu.
inline double eval_V(const Measure& mu, const cvec& z, RegEps eps = RegEps{})
{
    return detail::weighted_kernel_sum(mu, z, [eps](const cvec& a, const cvec& b) { return kernel_N(a, b, eps); });
}

// ---------------------------------------------------------------------------
// projective potential

struct ProjectiveMeasure
{
    std::vector<ProjectivePoint> points;
    std::vector<double> weights;

    [[nodiscard]] int dim() const { return points.front().dim(); }
};

inline ProjectiveMeasure make_projective_measure(std::vector<ProjectivePoint> points, std::vector<double> weights)
{
    if (points.empty() || points.size() != weights.size())
        throw construction_error("make_projective_measure: need matching, nonempty points and weights");
    detail::compensated_sum s;
    for (double w : weights) {
        if (!(w >= 0.0))
            throw construction_error("make_projective_measure: negative weight");
        s.add(w);
    }
    if (std::abs(s.value() - 1.0) > 1e-12)
        throw construction_error("make_projective_measure: weights sum to " + std::to_string(s.value()));
    for (const auto& p : points)
        if (p.dim() != points.front().dim())
            throw dimension_error("make_projective_measure: points live in different P^n");
    for (double& w : weights)
        w /= s.value();
    return {std::move(points), std::move(weights)};
}

/// Push a measure on C^n forward to P^n through the chart U_k.
inline ProjectiveMeasure to_projective(const Measure& mu, int chart = 0)
{
    std::vector<ProjectivePoint> pts;
    for (const cvec& w : mu.complex_points())
        pts.push_back(from_affine(w, chart));
    return make_projective_measure(std::move(pts), mu.weights());
}

/// Measure on C^{n+1} \ 0 (e.g. a uniform_Pn cloud) read as points of P^n.
inline ProjectiveMeasure projectivize(const Measure& mu)
{
    return make_projective_measure(as_projective_points(mu), mu.weights());
}

/// G_mu(p) = integral of G(p, q) d mu(q).
inline double eval_G(const ProjectiveMeasure& mu, const ProjectivePoint& p)
{
    detail::compensated_sum s;
    for (std::size_t i = 0; i < mu.points.size(); ++i) {
        if (mu.weights[i] == 0.0)
            continue;
        const double g = kernel_G(p, mu.points[i]);
        if (g == neg_inf)
            return neg_inf;
        s.add(mu.weights[i] * g);
    }
    return std::min(0.0, s.value());
}

/// Geodesic form of G_mu: sum_i w_i log sin(d_i / sqrt2), d_i the Fubini-Study distance.
inline double eval_G_geodesic(const ProjectiveMeasure& mu, const ProjectivePoint& p)
{
    detail::compensated_sum s;
    for (std::size_t i = 0; i < mu.points.size(); ++i) {
        if (mu.weights[i] == 0.0)
            continue;
        const double d = projective_sine_distance(p, mu.points[i]).dist;
        const double v = std::log(std::sin(d / std::numbers::sqrt2));
        if (v == neg_inf)
            return neg_inf;
        s.add(mu.weights[i] * v);
    }
    return s.value();
}

// ---------------------------------------------------------------------------
// regularized fields

/// Smooth twist phi with analytic holomorphic gradient and complex Hessian.
struct Twist
{
    std::function<double(const cvec&)> value;
    std::function<cvec(const cvec&)> gradient;
    std::function<HermitianMatrix(const cvec&)> hessian;

    /// s * (1/2) log(1 + |z|^2)
    static Twist fubini_study(double s = 1.0)
    {
        return {
            [s](const cvec& z) { return s * fs_potential(z); },
            [s](const cvec& z) -> cvec { return (0.5 * s / (1.0 + z.squaredNorm())) * z.conjugate(); },
            [s](const cvec& z) -> HermitianMatrix {
                const double t = 1.0 + z.squaredNorm();
                const auto n = z.size();
                return 0.5 * s * (HermitianMatrix::Identity(n, n) / t - z.conjugate() * z.transpose() / (t * t));
            },
        };
    }

    /// s * |z|^2
    static Twist quadratic(double s = 1.0)
    {
        return {
            [s](const cvec& z) { return s * z.squaredNorm(); },
            [s](const cvec& z) -> cvec { return s * z.conjugate(); },
            [s](const cvec& z) -> HermitianMatrix { return s * HermitianMatrix::Identity(z.size(), z.size()); },
        };
    }
};

namespace detail {

// Central differences of the supplied value/gradient against the supplied
// gradient/Hessian at 10 seeded probe points.
inline void check_twist(const Twist& t, int n)
{
    if (!t.value || !t.gradient || !t.hessian)
        throw construction_error("Twist: value, gradient and hessian must all be provided");
    std::mt19937_64 rng(0x7715u);
    const double h = 1e-5;
    for (int probe = 0; probe < 10; ++probe) {
        const cvec z = random_gaussian_cvec(n, rng);
        const cvec g = t.gradient(z);
        const HermitianMatrix hs = t.hessian(z);
        if (g.size() != n || hs.rows() != n || hs.cols() != n)
            throw construction_error("Twist: derivative shapes do not match the dimension");
        for (int m = 0; m < n; ++m) {
            cvec ex = z, ey = z;
            ex[m] += h;
            ey[m] += complex(0.0, h);
            cvec exm = z, eym = z;
            exm[m] -= h;
            eym[m] -= complex(0.0, h);
            const double dx = (t.value(ex) - t.value(exm)) / (2 * h);
            const double dy = (t.value(ey) - t.value(eym)) / (2 * h);
            const complex fd(0.5 * dx, -0.5 * dy);
            if (std::abs(fd - g[m]) > 1e-5 * std::max(1.0, std::abs(g[m])))
                throw construction_error("Twist: gradient disagrees with finite differences");
            // column k = m of the Hessian: dbar_m of the gradient
            const cvec gx = (t.gradient(ex) - t.gradient(exm)) / (2 * h);
            const cvec gy = (t.gradient(ey) - t.gradient(eym)) / (2 * h);
            const cvec col = 0.5 * (gx + complex(0.0, 1.0) * gy);
            for (int j = 0; j < n; ++j)
                if (std::abs(col[j] - hs(j, m)) > 1e-5 * std::max(1.0, std::abs(hs(j, m))))
                    throw construction_error("Twist: Hessian disagrees with finite differences");
        }
    }
}

} // namespace detail

/// V_mu^e + phi for a measure on C^n.
class PotentialField
{
public:
    PotentialField(std::shared_ptr<const Measure> mu, RegEps eps, std::optional<Twist> twist = std::nullopt,
                   ChartIndex chart = ChartIndex(0))
        : mu_(std::move(mu))
        , eps_(eps)
        , twist_(std::move(twist))
        , chart_(chart)
    {
        if (!mu_)
            throw construction_error("PotentialField: null measure");
        n_ = mu_->complex_dim();
        if (twist_)
            detail::check_twist(*twist_, n_);
    }

    PotentialField(const Measure& mu, RegEps eps, std::optional<Twist> twist = std::nullopt)
        : PotentialField(std::make_shared<const Measure>(mu), eps, std::move(twist))
    {
    }

    [[nodiscard]] const Measure& measure() const noexcept { return *mu_; }
    [[nodiscard]] RegEps eps() const noexcept { return eps_; }
    [[nodiscard]] const std::optional<Twist>& twist() const noexcept { return twist_; }
    [[nodiscard]] ChartIndex chart() const noexcept { return chart_; }
    [[nodiscard]] int n() const noexcept { return n_; }

private:
    std::shared_ptr<const Measure> mu_;
    RegEps eps_;
    std::optional<Twist> twist_;
    ChartIndex chart_;
    int n_ = 0;
};

inline double eval_field(const PotentialField& f, const cvec& z)
{
    const double v = eval_V(f.measure(), z, f.eps());
    return f.twist() ? v + f.twist()->value(z) : v;
}

/// Holomorphic gradient (dV/dz_m)_m of V_mu^e + phi.
inline cvec grad_V(const PotentialField& f, const cvec& z)
{
    f.eps().require_positive("grad_V");
    if (z.size() != f.n())
        throw dimension_error("grad_V: point dimension does not match the measure");
    const auto& pts = f.measure().complex_points();
    const double eps2 = f.eps().value() * f.eps().value();
    cvec g = cvec::Zero(f.n());
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (f.measure().weight(i) != 0.0)
            detail::accumulate_N_derivatives(z, pts[i], eps2, f.measure().weight(i), g.data(), nullptr);
    if (f.twist())
        g += f.twist()->gradient(z);
    return g;
}

/// Complex Hessian d2(V_mu^e + phi)/dz_m dzbar_k.
inline HermitianMatrix hessian_V(const PotentialField& f, const cvec& z)
{
    f.eps().require_positive("hessian_V");
    if (z.size() != f.n())
        throw dimension_error("hessian_V: point dimension does not match the measure");
    const auto& pts = f.measure().complex_points();
    const double eps2 = f.eps().value() * f.eps().value();
    HermitianMatrix h = HermitianMatrix::Zero(f.n(), f.n());
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (f.measure().weight(i) != 0.0)
            detail::accumulate_N_derivatives(z, pts[i], eps2, f.measure().weight(i), nullptr, h.data());
    if (f.twist())
        h += f.twist()->hessian(z);
    for (Eigen::Index m = 0; m < f.n(); ++m) {
        h(m, m) = complex(h(m, m).real(), 0.0);
        for (Eigen::Index k = m + 1; k < f.n(); ++k)
            h(k, m) = std::conj(h(m, k));
    }
    return h;
}

// ---------------------------------------------------------------------------
// Monge-Ampere and k-Hessian densities

/// Elementary symmetric polynomial e_k of the given values.
template <class Vector>
double elementary_symmetric(const Vector& lambda, int k)
{
    std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        for (int j = k; j >= 1; --j)
            e[static_cast<std::size_t>(j)] += lambda[i] * e[static_cast<std::size_t>(j) - 1];
    return e[static_cast<std::size_t>(k)];
}

struct MADensity
{
    double value = 0.0;
    bool clamped = false; // negative eigenvalues beyond round-off were set to zero
};

namespace detail {

template <class Matrix>
MADensity ma_density_impl(const Matrix& h, int n, int k)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    auto lambda = es.eigenvalues().eval();
    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    MADensity out;
    out.clamped = lambda.minCoeff() < -1e-10 * scale;
    const bool psd = lambda.minCoeff() >= 0.0;
    lambda = lambda.cwiseMax(0.0);
    double v;
    if (k == n && psd)
        v = std::max(0.0, h.determinant().real());
    else
        v = elementary_symmetric(lambda, k) / binomial(n, k);
    out.value = ma_constant(n) * v;
    return out;
}

} // namespace detail

/// Density of (dd^c u)^k ^ omega^{n-k} w.r.t. Lebesgue measure, omega = dd^c |z|^2,
/// for a complex Hessian H: cma(n) e_k(eig H) / C(n, k). At k = n this is cma(n) det H.
/// Negative eigenvalues are clamped to zero; `clamped` flags ones beyond round-off.
inline MADensity ma_density_of(const HermitianMatrix& h, int k)
{
    const int n = static_cast<int>(h.rows());
    if (h.cols() != n || n < 1)
        throw dimension_error("ma_density: Hessian must be square and nonempty");
    if (k < 1 || k > n)
        throw domain_error("ma_density: k must lie in [1, n]");
    switch (n) {
    case 1: return detail::ma_density_impl(Eigen::Matrix<complex, 1, 1>(h), n, k);
    case 2: return detail::ma_density_impl(Eigen::Matrix<complex, 2, 2>(h), n, k);
    case 3: return detail::ma_density_impl(Eigen::Matrix<complex, 3, 3>(h), n, k);
    default: return detail::ma_density_impl(h, n, k);
    }
}

inline MADensity ma_density(const PotentialField& f, const cvec& z, int k)
{
    f.eps().require_positive("ma_density");
    return ma_density_of(hessian_V(f, z), k);
}

/// Mixed discriminant D(H_1, ..., H_n) = (1/n!) d^n/dt_1..dt_n det(sum t_i H_i),
/// normalized so that D(H, ..., H) = det H. Evaluated by inclusion-exclusion
/// over subsets.
inline double mixed_discriminant(const std::vector<HermitianMatrix>& hs)
{
    const std::size_t n = hs.size();
    if (n == 0)
        throw dimension_error("mixed_discriminant: empty list");
    for (const auto& h : hs)
        if (h.rows() != static_cast<Eigen::Index>(n) || h.cols() != static_cast<Eigen::Index>(n))
            throw dimension_error("mixed_discriminant: need n matrices of size n x n");
    if (n > 20)
        throw dimension_error("mixed_discriminant: dimension too large");
    complex total = 0.0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        HermitianMatrix s = HermitianMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        int bits = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) {
                s += hs[i];
                ++bits;
            }
        const double sign = ((static_cast<int>(n) - bits) % 2 == 0) ? 1.0 : -1.0;
        total += sign * s.determinant();
    }
    double fact = 1.0;
    for (std::size_t j = 2; j <= n; ++j)
        fact *= static_cast<double>(j);
    return total.real() / fact;
}

/// cma(n) times the mixed discriminant: density of dd^c u_1 ^ ... ^ dd^c u_n.
inline double mixed_ma_density(const std::vector<HermitianMatrix>& hs)
{
    return ma_constant(static_cast<int>(hs.size())) * mixed_discriminant(hs);
}

// ---------------------------------------------------------------------------
// atom diagnostics

struct AtomMass
{
    double eps;
    double radius;
    double mass; // integral of cma det Hess V_mu^e over B(a, radius)
};

/// Regularized Monge-Ampere mass of B(a, r(e)) for each e in eps_list
/// (descending). r(e) = 10 e by default.
inline std::vector<AtomMass> atom_mass_diagnostic(const Measure& mu, const cvec& a, const std::vector<double>& eps_list,
                                                  const std::function<double(double)>& r_of_eps = {},
                                                  const quadrature::BallRule& rule = {})
{
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0))
            throw domain_error("atom_mass_diagnostic: eps values must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw domain_error("atom_mass_diagnostic: eps values must be descending");
    }
    auto mu_ptr = std::make_shared<const Measure>(mu);
    const int n = mu.complex_dim();
    std::vector<AtomMass> out;
    for (double e : eps_list) {
        const double r = r_of_eps ? r_of_eps(e) : 10.0 * e;
        const PotentialField field(mu_ptr, RegEps(e));
        const double mass = quadrature::ball_mass(
            [&](const rvec& x) { return ma_density(field, to_complex(x), n).value; }, to_real(a), r, rule);
        out.push_back({e, r, mass});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Robin function

struct RobinEstimate
{
    double value = 0.0;     // extrapolated limit of V(lambda xi) - log lambda
    double last = 0.0;      // V(lambda_max xi) - log lambda_max
    bool lambda_too_small = false;
};

/// rho_mu(xi) = lim V_mu(lambda xi) - log lambda, extrapolated in h = 1/lambda
/// by a least-squares polynomial (degree <= 2) through the lambda grid.
inline RobinEstimate robin_estimate(const Measure& mu, const cvec& xi, const std::vector<double>& lambdas)
{
    if (std::abs(xi.norm() - 1.0) > 1e-12)
        throw domain_error("robin_estimate: direction must have unit norm");
    if (lambdas.empty())
        throw domain_error("robin_estimate: empty lambda grid");
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        if (!(lambdas[i] > 0.0) || (i > 0 && !(lambdas[i] > lambdas[i - 1])))
            throw domain_error("robin_estimate: lambdas must be positive and ascending");

    RobinEstimate est;
    est.lambda_too_small = lambdas.front() < 10.0 * mu.support_radius();
    const std::size_t m = lambdas.size();
    Eigen::VectorXd h(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        h[i] = 1.0 / lambdas[i];
        y[i] = eval_V(mu, (lambdas[i] * xi).eval()) - std::log(lambdas[i]);
    }
    est.last = y[m - 1];
    const int deg = static_cast<int>(std::min<std::size_t>(2, m - 1));
    Eigen::MatrixXd vm(m, deg + 1);
    for (std::size_t i = 0; i < m; ++i)
        for (int j = 0; j <= deg; ++j)
            vm(i, j) = std::pow(h[i], j);
    const Eigen::VectorXd c = vm.colPivHouseholderQr().solve(y);
    est.value = c[0];
    return est;
}

} // namespace projlog
