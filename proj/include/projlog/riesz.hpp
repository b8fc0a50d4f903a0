#pragma once
//
// Riesz potentials J_{mu,alpha}(x) = integral |x - y|^{-alpha} d mu(y), the
// Cavalieri (layer-cake) representation, grid L^p probes under refinement and
// the critical integrability exponents as functions of the dimension gamma.
//

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "projlog/detail/parallel.hpp"
#include "projlog/detail/summation.hpp"
#include "projlog/errors.hpp"
#include "projlog/measures.hpp"
#include "projlog/quadrature.hpp"

namespace projlog {

namespace detail {

inline void check_alpha(const Measure& mu, double alpha, const char* who)
{
    if (!(alpha > 0.0 && alpha < mu.ambient_dim()))
        throw domain_error(std::string(who) + ": alpha must lie in (0, N) with N = " +
                           std::to_string(mu.ambient_dim()));
}

} // namespace detail

/// sum_i w_i |x - p_i|^{-alpha}; +inf exactly on atoms.
inline double riesz_J(const Measure& mu, const rvec& x, double alpha)
{
    detail::check_alpha(mu, alpha, "riesz_J");
    if (x.size() != mu.ambient_dim())
        throw dimension_error("riesz_J: point dimension does not match the measure");
    detail::compensated_sum s;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double w = mu.weight(i);
        if (w == 0.0)
            continue;
        const double d2 = (x - mu.point(i)).squaredNorm();
        if (d2 == 0.0)
            return pos_inf;
        s.add(w * std::pow(d2, -0.5 * alpha));
    }
    return s.value();
}

struct CavalieriResult
{
    double value = 0.0;
    bool on_support = false; // x is an atom: the integral diverges
};

/// alpha * integral_0^inf mu(x, r) r^{-alpha-1} dr. The finite part on
/// [d_min, r_max] uses the midpoint rule in log r with quad_points cells; the
/// tail beyond r_max, where mu(x, r) = 1, is r_max^{-alpha}.
inline CavalieriResult cavalieri_J(const Measure& mu, const rvec& x, double alpha, double r_max, int quad_points = 1024)
{
    detail::check_alpha(mu, alpha, "cavalieri_J");
    if (x.size() != mu.ambient_dim())
        throw dimension_error("cavalieri_J: point dimension does not match the measure");
    if (quad_points < 64)
        throw domain_error("cavalieri_J: need at least 64 quadrature points");

    // distribution function of |x - p| under mu
    std::vector<std::pair<double, double>> dw;
    for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu.weight(i) > 0.0)
            dw.emplace_back((x - mu.point(i)).norm(), mu.weight(i));
    std::sort(dw.begin(), dw.end());
    if (dw.back().first >= r_max)
        throw domain_error("cavalieri_J: support exceeds r_max");
    if (dw.front().first == 0.0)
        return {pos_inf, true};

    std::vector<double> dist(dw.size()), cum(dw.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dw.size(); ++i) {
        acc += dw[i].second;
        dist[i] = dw[i].first;
        cum[i] = acc;
    }
    auto mass_open_ball = [&](double r) {
        const auto k = std::lower_bound(dist.begin(), dist.end(), r) - dist.begin(); // count of d < r
        return k == 0 ? 0.0 : cum[static_cast<std::size_t>(k) - 1];
    };

    const double s0 = std::log(dist.front());
    const double s1 = std::log(r_max);
    const double ds = (s1 - s0) / quad_points;
    detail::compensated_sum s;
    for (int i = 0; i < quad_points; ++i) {
        const double si = s0 + (i + 0.5) * ds;
        s.add(mass_open_ball(std::exp(si)) * std::exp(-alpha * si));
    }
    return {alpha * s.value() * ds + std::pow(r_max, -alpha), false};
}

// ---------------------------------------------------------------------------
// critical exponents

struct ExponentReport
{
    double gamma = 0.0;
    int n = 0;
    int N = 0;
    double p1_star = 0.0;    // gradient of G_mu in L^p for p < p1*
    double alpha_star = 0.0; // Hoelder exponent bound
    double p2_star = 0.0;    // second derivatives in L^p for p < p2*
    double q_star = 0.0;     // Monge-Ampere density in L^q for q < q*
    std::optional<double> alpha;
    std::optional<double> riesz_p_star; // J_{mu,alpha} in L^p_loc for p < (N - gamma)/(alpha - gamma)_+
};

namespace detail {

inline double positive_part(double x)
{
    return std::max(x, 0.0);
}

// a / b_+ with a / 0_+ = +inf
inline double over_positive(double a, double b)
{
    const double bp = positive_part(b);
    return bp > 0.0 ? a / bp : pos_inf;
}

} // namespace detail

inline ExponentReport critical_exponents(double gamma, int n, int N, std::optional<double> alpha = std::nullopt)
{
    if (n < 1 || N < 1)
        throw domain_error("critical_exponents: dimensions must be positive");
    if (!(gamma >= 0.0 && gamma <= N))
        throw domain_error("critical_exponents: gamma must lie in [0, N]");
    using detail::over_positive;
    using detail::positive_part;
    ExponentReport r;
    r.gamma = gamma;
    r.n = n;
    r.N = N;
    const double top = 2.0 * n - gamma;
    r.p1_star = over_positive(top, 1.0 - gamma);
    r.alpha_star = positive_part(1.0 - gamma) == 0.0 ? 1.0 : 1.0 - 2.0 * n * positive_part(1.0 - gamma) / top;
    r.p2_star = over_positive(top, 2.0 - gamma);
    r.q_star = over_positive(top, n * (2.0 - gamma));
    if (alpha) {
        r.alpha = alpha;
        r.riesz_p_star = over_positive(N - gamma, *alpha - gamma);
    }
    return r;
}

// ---------------------------------------------------------------------------
// L^p probes

struct ProbeRow
{
    double p;
    int resolution;
    double norm;  // grid L^p norm of J_{mu,alpha} on the box
    double ratio; // integral of |J|^p at this resolution over the previous one (NaN for the first)
};

struct ProbeVerdict
{
    double p;
    double last_ratio;
    bool bounded; // last_ratio < 1.1
};

struct ProbeTable
{
    std::vector<ProbeRow> rows;
    std::vector<ProbeVerdict> verdicts;
};

inline constexpr double bounded_ratio_threshold = 1.1;

/// Grid L^p norms of J_{mu,alpha} over `box` at each resolution (points per
/// axis, ascending). A p whose successive integrals of |J|^p settle (last
/// ratio < 1.1) is diagnosed bounded, otherwise divergent.
inline ProbeTable lp_threshold_probe(const Measure& mu, double alpha, const std::vector<double>& p_list,
                                     const quadrature::GridSpec& box, const std::vector<int>& resolutions)
{
    detail::check_alpha(mu, alpha, "lp_threshold_probe");
    if (p_list.empty() || resolutions.size() < 2)
        throw domain_error("lp_threshold_probe: need at least one p and two resolutions");
    for (double p : p_list)
        if (!(p >= 1.0))
            throw domain_error("lp_threshold_probe: p must be >= 1");
    for (std::size_t i = 1; i < resolutions.size(); ++i)
        if (!(resolutions[i] > resolutions[i - 1]))
            throw domain_error("lp_threshold_probe: resolutions must ascend");
    if (box.dim() != mu.ambient_dim())
        throw dimension_error("lp_threshold_probe: box dimension does not match the measure");

    // integrals[p][res]
    std::vector<std::vector<double>> integrals(p_list.size());
    for (int res : resolutions) {
        quadrature::GridSpec g = box;
        g.points_per_axis = res;
        g.validate();
        const std::size_t count = g.node_count();
        std::vector<double> j(count);
        detail::parallel_for(count, [&](std::size_t i) { j[i] = riesz_J(mu, g.node(i), alpha); });
        for (std::size_t ip = 0; ip < p_list.size(); ++ip) {
            detail::compensated_sum s;
            for (double v : j)
                if (std::isfinite(v))
                    s.add(std::pow(v, p_list[ip]));
            integrals[ip].push_back(s.value() * g.cell_volume());
        }
    }

    ProbeTable t;
    for (std::size_t ip = 0; ip < p_list.size(); ++ip) {
        const double p = p_list[ip];
        double last = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t k = 0; k < resolutions.size(); ++k) {
            const double ratio = k == 0 ? std::numeric_limits<double>::quiet_NaN()
                                        : integrals[ip][k] / integrals[ip][k - 1];
            t.rows.push_back({p, resolutions[k], std::pow(integrals[ip][k], 1.0 / p), ratio});
            last = ratio;
        }
        t.verdicts.push_back({p, last, last < bounded_ratio_threshold});
    }
    return t;
}

} // namespace projlog
