#pragma once
//
// Integration backends: midpoint box grids on R^N, Monte Carlo on P^n with
// respect to the normalized Fubini-Study volume, the radial polar-coordinate
// rule on P^n, grid L^p norms and ball masses by a radial x angular product
// rule.
//

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "projlog/detail/parallel.hpp"
#include "projlog/detail/summation.hpp"
#include "projlog/errors.hpp"
#include "projlog/geometry.hpp"

namespace projlog::quadrature {

struct GaussRule
{
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule with m nodes (Newton iteration on P_m).
inline GaussRule gauss_legendre(int m)
{
    if (m < 1)
        throw construction_error("gauss_legendre: need at least one node");
    GaussRule g;
    g.nodes.resize(m);
    g.weights.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double pp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= m; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = m * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15)
                break;
        }
        g.nodes[i] = -z;
        g.nodes[m - 1 - i] = z;
        g.weights[i] = g.weights[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return g;
}

// ---------------------------------------------------------------------------
// box grids

struct GridSpec
{
    rvec center;
    rvec half_widths;
    int points_per_axis = 2;

    void validate() const
    {
        if (center.size() == 0 || center.size() != half_widths.size())
            throw construction_error("GridSpec: center and half_widths must have equal, nonzero size");
        if (points_per_axis < 2)
            throw construction_error("GridSpec: points_per_axis must be >= 2");
        for (Eigen::Index i = 0; i < half_widths.size(); ++i)
            if (!(half_widths[i] > 0.0))
                throw construction_error("GridSpec: half-widths must be positive");
    }

    [[nodiscard]] Eigen::Index dim() const { return center.size(); }

    [[nodiscard]] std::size_t node_count() const
    {
        std::size_t c = 1;
        for (Eigen::Index i = 0; i < dim(); ++i)
            c *= static_cast<std::size_t>(points_per_axis);
        return c;
    }

    [[nodiscard]] double cell_volume() const
    {
        double v = 1.0;
        for (Eigen::Index i = 0; i < dim(); ++i)
            v *= 2.0 * half_widths[i] / points_per_axis;
        return v;
    }

    [[nodiscard]] double box_volume() const
    {
        double v = 1.0;
        for (Eigen::Index i = 0; i < dim(); ++i)
            v *= 2.0 * half_widths[i];
        return v;
    }

    /// Midpoint of cell `index` in row-major order (last axis fastest).
    [[nodiscard]] rvec node(std::size_t index) const
    {
        rvec x(dim());
        for (Eigen::Index i = dim() - 1; i >= 0; --i) {
            const auto j = static_cast<int>(index % static_cast<std::size_t>(points_per_axis));
            index /= static_cast<std::size_t>(points_per_axis);
            const double h = 2.0 * half_widths[i] / points_per_axis;
            x[i] = center[i] - half_widths[i] + (j + 0.5) * h;
        }
        return x;
    }
};

struct GridResult
{
    double value = 0.0;
    std::size_t excluded = 0; // nodes where f was not finite
};

/// Midpoint-rule Riemann sum of f over the box. Non-finite node values are
/// excluded and counted.
template <class Fn>
GridResult grid_integrate(Fn&& f, const GridSpec& spec)
{
    spec.validate();
    const std::size_t count = spec.node_count();
    std::vector<double> vals(count);
    detail::parallel_for(count, [&](std::size_t i) { vals[i] = f(spec.node(i)); });
    GridResult out;
    detail::compensated_sum s;
    for (double v : vals) {
        if (std::isfinite(v))
            s.add(v);
        else
            ++out.excluded;
    }
    if (out.excluded == count)
        throw quadrature_error("grid_integrate: integrand is non-finite at every node");
    out.value = s.value() * spec.cell_volume();
    return out;
}

/// Grid L^p norm (grid_integrate(|f|^p))^(1/p).
template <class Fn>
double lp_norm(Fn&& f, const GridSpec& spec, double p)
{
    if (!(p >= 1.0))
        throw domain_error("lp_norm: p must be >= 1");
    const GridResult r = grid_integrate([&](const rvec& x) { return std::pow(std::abs(f(x)), p); }, spec);
    return std::pow(r.value, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Monte Carlo on P^n

struct MCEstimate
{
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
};

/// Mean of f over `count` Fubini-Study uniform points of P^n.
template <class Fn>
MCEstimate mc_integrate_pn(Fn&& f, int n, std::size_t count, std::uint64_t seed)
{
    if (n < 1)
        throw domain_error("mc_integrate_pn: n must be >= 1");
    if (count < 100)
        throw domain_error("mc_integrate_pn: need at least 100 samples");
    std::mt19937_64 rng(seed);
    std::vector<ProjectivePoint> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        pts.push_back(random_projective_point(n, rng));
    std::vector<double> vals(count);
    detail::parallel_for(count, [&](std::size_t i) { vals[i] = f(pts[i]); });

    detail::compensated_sum s;
    for (double v : vals)
        s.add(v);
    const double mean = s.value() / static_cast<double>(count);
    detail::compensated_sum ss;
    for (double v : vals)
        ss.add((v - mean) * (v - mean));
    const double var = ss.value() / static_cast<double>(count - 1);
    return {mean, std::sqrt(var / static_cast<double>(count)), count};
}

// ---------------------------------------------------------------------------
// radial rule on P^n

/// Normalizing constant of A(r) = c_n sin^{2n-2}(r/sqrt2) sin(sqrt2 r) with
/// total mass one on [0, pi/sqrt2].
inline double area_constant(int n)
{
    return n / std::numbers::sqrt2;
}

/// Sphere "area" A(r) around a point of P^n, normalized to total mass 1.
inline double sphere_area(double r, int n)
{
    const double s = std::sin(r / std::numbers::sqrt2);
    return area_constant(n) * std::pow(s, 2 * n - 2) * std::sin(std::numbers::sqrt2 * r);
}

struct RadialRule
{
    int n = 1;
    std::vector<double> nodes;   // r_i in (0, pi/sqrt2)
    std::vector<double> weights; // sum to 1
};

/// Product of graded Gauss-Legendre panels in t = r/sqrt2 on [0, pi/2] with
/// weight 2n sin^{2n-1}(t) cos(t) dt = A(r) dr. Panels shrink geometrically
/// toward t = 0, where log-type singularities of the integrand sit.
inline RadialRule make_radial_rule(int n, int panels = 48, int order = 16)
{
    if (n < 1)
        throw domain_error("make_radial_rule: n must be >= 1");
    const GaussRule g = gauss_legendre(order);
    RadialRule rule;
    rule.n = n;
    const double top = std::numbers::pi / 2.0;
    std::vector<double> edges{0.0};
    for (int p = panels - 1; p >= 0; --p)
        edges.push_back(top * std::ldexp(1.0, -p));
    detail::compensated_sum total;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double a = edges[e], b = edges[e + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int i = 0; i < order; ++i) {
            const double t = mid + half * g.nodes[i];
            const double w = g.weights[i] * half * 2.0 * n * std::pow(std::sin(t), 2 * n - 1) * std::cos(t);
            rule.nodes.push_back(std::numbers::sqrt2 * t);
            rule.weights.push_back(w);
            total.add(w);
        }
    }
    const double z = total.value();
    for (double& w : rule.weights)
        w /= z;
    return rule;
}

inline const RadialRule& default_radial_rule(int n)
{
    static std::mutex m;
    static std::map<int, RadialRule> cache;
    std::lock_guard lock(m);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, make_radial_rule(n)).first;
    return it->second;
}

/// Integral over P^n of a radial function g(d(., a)) against the normalized
/// Fubini-Study volume: sum_i g(r_i) w_i.
template <class Fn>
double radial_integrate_pn(Fn&& g, const RadialRule& rule)
{
    detail::compensated_sum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s.add(g(rule.nodes[i]) * rule.weights[i]);
    const double v = s.value();
    if (!std::isfinite(v))
        throw quadrature_error("radial_integrate_pn: non-finite result");
    return v;
}

template <class Fn>
double radial_integrate_pn(Fn&& g, int n)
{
    return radial_integrate_pn(std::forward<Fn>(g), default_radial_rule(n));
}

/// alpha_n = - integral of log sin(r/sqrt2) A(r) dr, i.e. -G_sigma.
inline double alpha_n(int n)
{
    static std::mutex m;
    static std::map<int, double> cache;
    {
        std::lock_guard lock(m);
        if (auto it = cache.find(n); it != cache.end())
            return it->second;
    }
    const double v = -radial_integrate_pn([](double r) { return std::log(std::sin(r / std::numbers::sqrt2)); }, n);
    std::lock_guard lock(m);
    cache.emplace(n, v);
    return v;
}

// ---------------------------------------------------------------------------
// balls and spheres in R^d

/// Volume of the Euclidean unit ball in R^d.
inline double unit_ball_volume(int d)
{
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

/// Area of the unit sphere S^{d-1}.
inline double unit_sphere_area(int d)
{
    return d * unit_ball_volume(d);
}

/// Directions and weights (summing to 1) on S^{d-1}: hyperspherical
/// coordinates, Gauss-Legendre in the polar angles, trapezoid in azimuth.
struct AngularRule
{
    int dim = 0;
    std::vector<rvec> directions;
    std::vector<double> weights;
};

inline AngularRule make_angular_rule(int d, int polar_order = 16, int azimuth_count = 32)
{
    if (d < 1)
        throw domain_error("make_angular_rule: dimension must be >= 1");
    AngularRule rule;
    rule.dim = d;
    if (d == 1) {
        rule.directions = {rvec::Constant(1, 1.0), rvec::Constant(1, -1.0)};
        rule.weights = {0.5, 0.5};
        return rule;
    }
    const GaussRule g = gauss_legendre(polar_order);
    const int polar = d - 2;
    std::vector<int> idx(polar, 0);
    detail::compensated_sum total;
    for (;;) {
        for (int a = 0; a < azimuth_count; ++a) {
            const double phi = 2.0 * std::numbers::pi * a / azimuth_count;
            rvec u(d);
            double w = 2.0 * std::numbers::pi / azimuth_count;
            double sprod = 1.0;
            for (int k = 0; k < polar; ++k) {
                const double theta = 0.5 * std::numbers::pi * (1.0 + g.nodes[idx[k]]);
                u[k] = sprod * std::cos(theta);
                w *= 0.5 * std::numbers::pi * g.weights[idx[k]] * std::pow(std::sin(theta), polar - k);
                sprod *= std::sin(theta);
            }
            u[d - 2] = sprod * std::cos(phi);
            u[d - 1] = sprod * std::sin(phi);
            rule.directions.push_back(std::move(u));
            rule.weights.push_back(w);
            total.add(w);
        }
        int k = polar - 1;
        while (k >= 0 && ++idx[k] == polar_order)
            idx[k--] = 0;
        if (k < 0)
            break;
    }
    const double z = total.value();
    for (double& w : rule.weights)
        w /= z;
    return rule;
}

struct BallRule
{
    int radial_panels = 48; // geometric grading toward the center, ratio 1/2
    int radial_order = 8;
    int polar_order = 16;
    int azimuth_count = 32;
};

/// Mean of f over the sphere |x - center| = r.
template <class Fn>
double sphere_mean(Fn&& f, const rvec& center, double r, const AngularRule& ang)
{
    if (ang.dim != center.size())
        throw dimension_error("sphere_mean: rule dimension does not match center");
    std::vector<double> vals(ang.directions.size());
    detail::parallel_for(vals.size(), [&](std::size_t i) {
        vals[i] = f(rvec(center + r * ang.directions[i])) * ang.weights[i];
    });
    return detail::ordered_sum(vals);
}

/// Integral of f over the shell r_in <= |x - center| < r_out.
template <class Fn>
double shell_mass(Fn&& f, const rvec& center, double r_in, double r_out, const BallRule& rule = {})
{
    if (!(r_out > r_in) || r_in < 0.0)
        throw domain_error("shell_mass: need 0 <= r_in < r_out");
    const int d = static_cast<int>(center.size());
    const AngularRule ang = make_angular_rule(d, rule.polar_order, rule.azimuth_count);
    const GaussRule g = gauss_legendre(rule.radial_order);

    // panels [r_out 2^{-k-1}, r_out 2^{-k}] clipped to [r_in, r_out], plus the core
    std::vector<double> edges;
    edges.push_back(r_out);
    for (int k = 1; k <= rule.radial_panels; ++k) {
        const double e = std::ldexp(r_out, -k);
        if (e <= r_in)
            break;
        edges.push_back(e);
    }
    edges.push_back(r_in);

    std::vector<double> radii, rweights;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double b = edges[e], a = edges[e + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int i = 0; i < rule.radial_order; ++i) {
            const double r = mid + half * g.nodes[i];
            radii.push_back(r);
            rweights.push_back(g.weights[i] * half * std::pow(r, d - 1));
        }
    }
    const double area = unit_sphere_area(d);
    std::vector<double> shells(radii.size());
    detail::parallel_for(radii.size(), [&](std::size_t i) {
        detail::compensated_sum s;
        for (std::size_t a = 0; a < ang.directions.size(); ++a)
            s.add(ang.weights[a] * f(rvec(center + radii[i] * ang.directions[a])));
        shells[i] = s.value() * rweights[i] * area;
    });
    return detail::ordered_sum(shells);
}

/// Integral of the density f over the open ball B(center, r).
template <class Fn>
double ball_mass(Fn&& f, const rvec& center, double r, const BallRule& rule = {})
{
    if (!(r > 0.0))
        throw domain_error("ball_mass: radius must be positive");
    return shell_mass(std::forward<Fn>(f), center, 0.0, r, rule);
}

} // namespace projlog::quadrature
