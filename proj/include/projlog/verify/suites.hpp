#pragma once

// Property suites behind `projlog verify`. Each criterion returns a measured
// value, the tolerance it is judged against, and a verdict. Reports contain no
// timings so equal seeds give byte-identical output.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "projlog/errors.hpp"
#include "projlog/geometry.hpp"
#include "projlog/kernels.hpp"
#include "projlog/measures.hpp"
#include "projlog/potentials.hpp"
#include "projlog/quadrature.hpp"
#include "projlog/riesz.hpp"
#include "projlog/verify/oracles.hpp"

namespace projlog::verify {

struct CriterionResult
{
    int id = 0;
    std::string name;
    std::string measured;
    std::string tolerance;
    bool pass = false;
    std::vector<std::string> notes; // extra report lines
};

inline std::string fmt(double x, int digits = 6)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

namespace detail {

inline std::mt19937_64 criterion_rng(std::uint64_t seed, int id)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(id)};
    return std::mt19937_64(seq);
}

inline std::uint64_t sub_seed(std::uint64_t seed, int id, int k)
{
    return seed * 1000003u + static_cast<std::uint64_t>(id) * 101u + static_cast<std::uint64_t>(k);
}

inline Measure random_atomic(int n, int atoms, std::mt19937_64& rng, double scale = 1.0)
{
    std::vector<cvec> pts;
    std::vector<double> w;
    std::uniform_real_distribution<double> u(0.1, 1.0);
    double total = 0.0;
    for (int i = 0; i < atoms; ++i) {
        pts.push_back(scale * random_gaussian_cvec(n, rng));
        w.push_back(u(rng));
        total += w.back();
    }
    for (double& x : w)
        x /= total;
    return make_atomic(pts, w);
}

inline Measure dirac(const cvec& w)
{
    return make_atomic(std::vector<cvec>{w}, {1.0});
}

inline Measure segment_cloud(int dim, std::size_t count, std::uint64_t seed)
{
    FamilySpec s;
    s.family = Family::segment;
    s.dim = dim;
    s.count = count;
    s.seed = seed;
    return sample_family(s);
}

} // namespace detail

// ---------------------------------------------------------------------------
// geometry

inline CriterionResult criterion_lagrange(std::uint64_t seed)
{
    auto rng = detail::criterion_rng(seed, 1);
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    const int pairs = 100000;
    for (int i = 0; i < pairs; ++i) {
        const int dim = 2 + i % 4;
        const cvec a = random_gaussian_cvec(dim, rng), b = random_gaussian_cvec(dim, rng);
        const double wedge = wedge_norm_sq(a, b);
        const double aa = a.squaredNorm(), bb = b.squaredNorm();
        const double dot = std::norm(hermitian_dot(a, b));
        e1 = std::max(e1, std::abs(wedge - (aa * bb - dot)) / (aa * bb));
        e2 = std::max(e2, std::abs(wedge / (aa * bb) - (1.0 - dot / (aa * bb))));
        // affine form with z, w in C^{dim-1}
        const cvec z = a.tail(dim - 1), w = b.tail(dim - 1);
        const double den = (1.0 + z.squaredNorm()) * (1.0 + w.squaredNorm());
        const double zw = dim - 1 > 1 ? wedge_norm_sq(z, w) : 0.0;
        const double lhs = ((z - w).squaredNorm() + zw) / den;
        const double rhs = 1.0 - std::norm(1.0 + hermitian_dot(z, w)) / den;
        e3 = std::max(e3, std::abs(lhs - rhs));
    }
    const double worst = std::max({e1, e2, e3});
    return {1,
            "lagrange_identities",
            "max_rel_err=" + fmt(worst, 3) + " (forms " + fmt(e1, 3) + ", " + fmt(e2, 3) + ", " + fmt(e3, 3) + ")",
            "<= 1e-12",
            worst <= 1e-12,
            {}};
}

// ---------------------------------------------------------------------------
// kernels

inline CriterionResult criterion_kernel_sandwich(std::uint64_t seed)
{
    auto rng = detail::criterion_rng(seed, 2);
    std::size_t violations = 0;
    const double tol = 1e-12;
    auto le = [tol](double a, double b) { return a <= b + tol * std::max(1.0, std::abs(b)); };
    for (int i = 0; i < 100000; ++i) {
        // mixed scales: near pairs, typical pairs, far pairs
        const double s = i % 3 == 0 ? 0.1 : (i % 3 == 1 ? 1.0 : 10.0);
        const cvec z = s * random_gaussian_cvec(2, rng), w = s * random_gaussian_cvec(2, rng);
        const double k = kernel_K(z, w), n = kernel_N(z, w);
        const double gap = n - k;
        const double cap = 0.5 * std::log1p(std::min(z.squaredNorm(), w.squaredNorm()));
        if (!le(k, n) || !le(n, fs_potential(z)) || !le(0.0, gap) || !le(gap, cap))
            ++violations;
    }
    return {2, "kernel_sandwich_and_gap", "violations=" + std::to_string(violations) + " of 100000", "== 0 at 1e-12",
            violations == 0, {}};
}

inline CriterionResult criterion_unit_mass()
{
    // total mass over a ball of radius 1e4 around the pole (the tail outside is ~ (eps/R)^2)
    double worst_total = 0.0, worst_local = 0.0;
    std::vector<std::string> notes;
    const double big_r = 1e4;
    for (int n = 1; n <= 2; ++n) {
        cvec w(n);
        w[0] = complex(0.3, 0.2);
        if (n > 1)
            w[1] = complex(-0.4, 0.1);
        const Measure mu = detail::dirac(w);
        for (double e : {0.5, 0.1}) {
            const PotentialField f(mu, RegEps(e));
            const auto density = [&](const rvec& x) { return ma_density(f, to_complex(x), n).value; };
            const double total = quadrature::ball_mass(density, to_real(w), big_r);
            worst_total = std::max(worst_total, std::abs(total - 1.0));
            std::string line = "  unit_mass n=" + std::to_string(n) + " eps=" + fmt(e) + " total=" + fmt(total, 10);
            if (n == 1) {
                const double local = quadrature::ball_mass(density, to_real(w), 10.0 * e);
                worst_local = std::max(worst_local, std::abs(local - 100.0 / 101.0));
                line += " B(w,10eps)=" + fmt(local, 10);
            }
            notes.push_back(line);
        }
    }
    return {3,
            "unit_dirac_mass",
            "max|total-1|=" + fmt(worst_total, 3) + " max|local-100/101|=" + fmt(worst_local, 3),
            "total <= 0.02, local <= 1e-3",
            worst_total <= 0.02 && worst_local <= 1e-3,
            notes};
}

inline CriterionResult criterion_derivative_fd(std::uint64_t seed)
{
    auto rng = detail::criterion_rng(seed, 4);
    std::uniform_real_distribution<double> eps_dist(0.2, 1.0);
    double eg = 0.0, eh = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int n = 1 + i % 3;
        const cvec z = random_gaussian_cvec(n, rng), w = random_gaussian_cvec(n, rng);
        const RegEps eps(eps_dist(rng));
        const cvec g = grad_N_eps(z, w, eps);
        const cvec fdg = oracle::fd_gradient([&](const cvec& x) { return kernel_N(x, w, eps); }, z);
        eg = std::max(eg, (g - fdg).norm() / g.norm());
        const HermitianMatrix h = hessian_N_eps(z, w, eps);
        const auto fdh = oracle::fd_hessian_from_gradient([&](const cvec& x) { return grad_N_eps(x, w, eps); }, z);
        eh = std::max(eh, (h - fdh).norm() / h.norm());
    }
    return {4,
            "derivative_closed_forms_vs_fd",
            "grad_rel=" + fmt(eg, 3) + " hess_rel=" + fmt(eh, 3),
            "<= 1e-6",
            eg <= 1e-6 && eh <= 1e-6,
            {}};
}

// ---------------------------------------------------------------------------
// potentials

inline CriterionResult criterion_derivative_bounds(std::uint64_t seed)
{
    // |dV| <= sqrt2/2 + sqrt2/2 (1+|z|) J_1 and |H_mk| <= 1 + (1+|z|^2) J_2 on a
    // 101 x 101 slice through the (Re z_1, Im z_1) plane, n = 2
    cvec a(2), b(2);
    a << complex(0.2, -0.1), complex(0.1, 0.3);
    b << complex(-0.5, 0.4), complex(0.0, -0.2);
    const std::vector<std::pair<std::string, Measure>> measures = {
        {"atom", detail::dirac(a)},
        {"two_atoms", make_atomic(std::vector<cvec>{a, b}, {0.5, 0.5})},
        {"segment500", detail::segment_cloud(4, 500, detail::sub_seed(seed, 5, 0))},
    };
    quadrature::GridSpec grid{rvec::Zero(2), rvec::Constant(2, 2.0), 101};
    const std::size_t nodes = grid.node_count();
    double worst_g = 0.0, worst_h = 0.0;
    std::size_t violations = 0;
    std::vector<std::string> notes;
    for (const auto& [name, mu] : measures) {
        const PotentialField f(mu, RegEps(0.05));
        std::vector<double> rg(nodes), rh(nodes);
        projlog::detail::parallel_for(nodes, [&](std::size_t i) {
            rvec x = rvec::Zero(4);
            x.head(2) = grid.node(i);
            const cvec z = to_complex(x);
            const double j1 = riesz_J(mu, x, 1.0), j2 = riesz_J(mu, x, 2.0);
            const double gb = std::numbers::sqrt2 / 2 * (1.0 + (1.0 + z.norm()) * j1);
            const double hb = 1.0 + (1.0 + z.squaredNorm()) * j2;
            rg[i] = grad_V(f, z).norm() / gb;
            rh[i] = hessian_V(f, z).cwiseAbs().maxCoeff() / hb;
        });
        double mg = 0.0, mh = 0.0;
        for (std::size_t i = 0; i < nodes; ++i) {
            mg = std::max(mg, rg[i]);
            mh = std::max(mh, rh[i]);
            if (rg[i] > 1.0 + 1e-12 || rh[i] > 1.0 + 1e-12)
                ++violations;
        }
        notes.push_back("  bounds " + name + " max_grad_ratio=" + fmt(mg) + " max_hess_ratio=" + fmt(mh));
        worst_g = std::max(worst_g, mg);
        worst_h = std::max(worst_h, mh);
    }
    return {5,
            "gradient_and_hessian_bounds",
            "violations=" + std::to_string(violations) + " max_ratio grad=" + fmt(worst_g) + " hess=" + fmt(worst_h),
            "== 0 (ratio <= 1)",
            violations == 0,
            notes};
}

inline CriterionResult criterion_multilinearity(std::uint64_t seed)
{
    auto rng = detail::criterion_rng(seed, 6);
    const Measure mu = detail::random_atomic(2, 3, rng);
    const auto& pts = mu.complex_points();
    std::uniform_real_distribution<double> eps_dist(0.05, 0.5);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const RegEps eps(eps_dist(rng));
        const cvec z = random_gaussian_cvec(2, rng);
        std::vector<HermitianMatrix> parts;
        for (const cvec& w : pts)
            parts.push_back(hessian_N_eps(z, w, eps));
        double expansion = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j)
                expansion += mu.weight(i) * mu.weight(j) * mixed_ma_density({parts[i], parts[j]});
        const double direct = ma_density(PotentialField(mu, eps), z, 2).value;
        worst = std::max(worst, std::abs(direct - expansion) / std::abs(direct));
    }
    return {6, "mixed_discriminant_multilinearity", "max_rel_err=" + fmt(worst, 3), "<= 1e-10", worst <= 1e-10, {}};
}

/// eps schedule of the atomless-cloud half of the atom diagnostic.
inline const std::vector<double>& cloud_eps_schedule()
{
    static const std::vector<double> s{0.02, 0.01, 0.005};
    return s;
}

inline CriterionResult criterion_atom_dichotomy(std::uint64_t seed)
{
    std::vector<std::string> notes;
    cvec a(2), b(2);
    a << complex(0.0, 0.0), complex(0.0, 0.0);
    b << complex(1.0, 0.0), complex(0.0, 0.0);
    const Measure two = make_atomic(std::vector<cvec>{a, b}, {0.5, 0.5});
    const auto atom = atom_mass_diagnostic(two, a, {0.2, 0.1, 0.05}, {}, quadrature::BallRule{24, 8, 12, 24});
    double atom_min = 1.0;
    std::string atom_line = "  atom_masses";
    for (const auto& m : atom) {
        atom_min = std::min(atom_min, m.mass);
        atom_line += " eps=" + fmt(m.eps) + ":" + fmt(m.mass);
    }
    notes.push_back(atom_line);

    const Measure cloud = detail::segment_cloud(4, 1000, detail::sub_seed(seed, 7, 0));
    const auto diffuse = atom_mass_diagnostic(cloud, cvec::Zero(2), cloud_eps_schedule(), {},
                                              quadrature::BallRule{14, 4, 6, 12});
    std::string cloud_line = "  cloud_masses";
    for (const auto& m : diffuse)
        cloud_line += " eps=" + fmt(m.eps) + ":" + fmt(m.mass);
    notes.push_back(cloud_line);
    const double cloud_last = diffuse.back().mass;
    const double floor = 0.25 * 0.9;
    return {7,
            "atom_dichotomy",
            "atom_min=" + fmt(atom_min) + " cloud_last=" + fmt(cloud_last),
            "atom_min >= " + fmt(floor) + ", cloud_last < 0.05",
            atom_min >= floor && cloud_last < 0.05,
            notes};
}

struct AlphaCrossCheck
{
    int n;
    double quadrature;
    double monte_carlo;
    double standard_error;
};

inline AlphaCrossCheck alpha_cross_check(int n, std::uint64_t seed)
{
    auto rng = detail::criterion_rng(seed, 80 + n);
    const ProjectivePoint a = random_projective_point(n, rng);
    const auto pm = make_projective_measure({a}, {1.0});
    const auto est = quadrature::mc_integrate_pn([&](const ProjectivePoint& p) { return eval_G(pm, p); }, n, 100000,
                                                 detail::sub_seed(seed, 8, n));
    return {n, quadrature::alpha_n(n), -est.mean, est.standard_error};
}

inline std::string format_alpha_line(const std::vector<AlphaCrossCheck>& checks)
{
    std::string s = "alpha_n cross-check:";
    for (const auto& c : checks)
        s += " n=" + std::to_string(c.n) + " quadrature=" + fmt(c.quadrature, 12) + " monte_carlo=" +
             fmt(c.monte_carlo, 8) + " (se " + fmt(c.standard_error, 3) + ")";
    return s;
}

inline CriterionResult criterion_alpha(std::uint64_t seed, std::vector<AlphaCrossCheck>* out = nullptr)
{
    bool ok = true;
    double worst_candidate = 0.0, worst_z = 0.0;
    std::vector<AlphaCrossCheck> checks;
    for (int n = 1; n <= 2; ++n) {
        const auto c = alpha_cross_check(n, seed);
        checks.push_back(c);
        worst_candidate = std::max(worst_candidate, std::abs(c.quadrature - 1.0 / (2.0 * n)));
        worst_z = std::max(worst_z, std::abs(c.monte_carlo - c.quadrature) / c.standard_error);
    }
    // normalization for three atomic measures
    auto rng = detail::criterion_rng(seed, 8);
    std::vector<std::string> notes;
    for (int t = 0; t < 3; ++t) {
        const int n = 1 + t % 2;
        const auto pm = to_projective(detail::random_atomic(n, 2 + t, rng));
        const auto est = quadrature::mc_integrate_pn([&](const ProjectivePoint& p) { return eval_G(pm, p); }, n,
                                                     100000, detail::sub_seed(seed, 8, 10 + t));
        const double z = std::abs(est.mean + quadrature::alpha_n(n)) / est.standard_error;
        worst_z = std::max(worst_z, z);
        notes.push_back("  normalization measure=" + std::to_string(t) + " n=" + std::to_string(n) +
                        " mc=" + fmt(est.mean, 8) + " se=" + fmt(est.standard_error, 3));
    }
    ok = worst_candidate <= 1e-6 && worst_z <= 2.0;
    if (out)
        *out = checks;
    return {8,
            "alpha_n_constant",
            "|quad-1/(2n)|=" + fmt(worst_candidate, 3) + " max_mc_dev=" + fmt(worst_z, 3) + " se",
            "<= 1e-6, <= 2 se",
            ok,
            notes};
}

inline CriterionResult criterion_sphere_mean(std::uint64_t seed)
{
    auto rng = detail::criterion_rng(seed, 9);
    const auto ang = quadrature::make_angular_rule(4, 24, 48);
    const double floor = -std::log(std::sqrt(5.0));
    double worst = pos_inf;
    for (int t = 0; t < 5; ++t) {
        const Measure mu = detail::random_atomic(2, 3, rng);
        const double mu_u = quadrature::sphere_mean([&](const rvec& x) { return eval_U(mu, to_complex(x)); },
                                                    rvec::Zero(4), 1.0, ang);
        const double mu_v = quadrature::sphere_mean([&](const rvec& x) { return eval_V(mu, to_complex(x)); },
                                                    rvec::Zero(4), 1.0, ang);
        worst = std::min({worst, mu_u, mu_v});
    }
    return {9, "sphere_mean_lower_bound", "min_mean=" + fmt(worst), ">= " + fmt(floor), worst >= floor, {}};
}

// ---------------------------------------------------------------------------
// riesz

inline CriterionResult criterion_cavalieri(std::uint64_t seed)
{
    auto rng = detail::criterion_rng(seed, 10);
    std::normal_distribution<double> g(0.0, 1.0);
    rvec e1 = rvec::Zero(4);
    e1[0] = 1.0;
    const std::vector<Measure> measures = {
        make_atomic(std::vector<rvec>{rvec::Zero(4)}, {1.0}),
        make_atomic(std::vector<rvec>{rvec::Zero(4), e1}, {0.5, 0.5}),
        detail::segment_cloud(4, 1000, detail::sub_seed(seed, 10, 0)),
    };
    double worst = 0.0;
    for (const Measure& mu : measures)
        for (int t = 0; t < 100; ++t) {
            rvec x(4);
            for (int i = 0; i < 4; ++i)
                x[i] = g(rng);
            const double r_max = x.norm() + 2.0;
            for (double alpha : {1.0, 2.0}) {
                const double direct = riesz_J(mu, x, alpha);
                const double cav = cavalieri_J(mu, x, alpha, r_max, 4096).value;
                worst = std::max(worst, std::abs(cav - direct) / direct);
            }
        }
    return {10, "cavalieri_principle", "max_rel_err=" + fmt(worst, 3), "<= 0.01", worst <= 0.01, {}};
}

inline CriterionResult criterion_dimension(std::uint64_t seed)
{
    const auto dirac = dimension_estimate(make_atomic(std::vector<rvec>{rvec::Zero(2)}, {1.0}), 0.01, 0.1, 10);

    FamilySpec sq;
    sq.family = Family::kplane;
    sq.dim = 2;
    sq.k = 2;
    sq.count = 100000;
    sq.seed = detail::sub_seed(seed, 11, 0);
    const auto square = dimension_estimate(sample_family(sq), 0.01, 0.1, 10);

    FamilySpec ca;
    ca.family = Family::cantor_line;
    ca.dim = 2;
    ca.count = 100000;
    ca.seed = detail::sub_seed(seed, 11, 1);
    const auto cantor = dimension_estimate(sample_family(ca), 1e-3, 1e-1, 12);
    const double cantor_exact = std::log(2.0) / std::log(3.0);

    const bool ok = dirac.gamma == 0.0 && std::abs(square.gamma - 2.0) <= 0.15 &&
                    std::abs(cantor.gamma - cantor_exact) <= 0.1;
    return {11,
            "dimension_estimator",
            "dirac=" + fmt(dirac.gamma) + " square=" + fmt(square.gamma) + " (res " + fmt(square.residual, 3) +
                ") cantor=" + fmt(cantor.gamma) + " (res " + fmt(cantor.residual, 3) + ")",
            "dirac == 0, |square-2| <= 0.15, |cantor-0.631| <= 0.1",
            ok,
            {}};
}

inline CriterionResult criterion_exponents()
{
    const auto a = critical_exponents(0.0, 2, 4);
    const auto b = critical_exponents(1.0, 2, 4);
    const auto c = critical_exponents(2.0, 2, 4);
    const auto d = critical_exponents(1.0, 2, 4, 2.0);
    const double inf = std::numeric_limits<double>::infinity();
    const bool ok = a.p1_star == 4.0 && a.alpha_star == 0.0 && a.p2_star == 2.0 && a.q_star == 1.0 &&
                    b.p1_star == inf && b.alpha_star == 1.0 && b.p2_star == 3.0 && b.q_star == 1.5 &&
                    c.p2_star == inf && c.q_star == inf && d.riesz_p_star && *d.riesz_p_star == 3.0;
    auto four = [](const ExponentReport& r) {
        return "(" + fmt(r.p1_star) + "," + fmt(r.alpha_star) + "," + fmt(r.p2_star) + "," + fmt(r.q_star) + ")";
    };
    return {12,
            "critical_exponents",
            "g0=" + four(a) + " g1=" + four(b) + " g2=" + four(c) + " riesz=" + fmt(d.riesz_p_star.value_or(-1)),
            "exact",
            ok,
            {}};
}

inline CriterionResult criterion_probe()
{
    const Measure d = make_atomic(std::vector<rvec>{rvec::Zero(2)}, {1.0});
    quadrature::GridSpec box{rvec::Zero(2), rvec::Constant(2, 1.0), 2};
    const auto t = lp_threshold_probe(d, 1.0, {1.5, 3.0}, box, {64, 128, 256, 512});
    const auto& lo = t.verdicts[0];
    const auto& hi = t.verdicts[1];
    return {13,
            "lp_threshold_probe",
            "p=1.5 ratio=" + fmt(lo.last_ratio) + (lo.bounded ? " bounded" : " divergent") +
                ", p=3 ratio=" + fmt(hi.last_ratio) + (hi.bounded ? " bounded" : " divergent"),
            "p=1.5 bounded, p=3 divergent (ratio < 1.1 => bounded)",
            lo.bounded && !hi.bounded,
            {}};
}

// ---------------------------------------------------------------------------
// driver

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"geometry", "kernels", "potentials", "riesz", "all"};
    return names;
}

inline bool valid_suite(const std::string& s)
{
    for (const auto& n : suite_names())
        if (n == s)
            return true;
    return false;
}

inline std::vector<int> suite_criteria(const std::string& suite)
{
    if (suite == "geometry")
        return {1};
    if (suite == "kernels")
        return {2, 3, 4};
    if (suite == "potentials")
        return {5, 6, 7, 8, 9};
    if (suite == "riesz")
        return {10, 11, 12, 13};
    if (suite == "all")
        return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
    throw construction_error("verify: unknown suite '" + suite + "'");
}

inline CriterionResult run_criterion(int id, std::uint64_t seed, std::vector<AlphaCrossCheck>* alpha = nullptr)
{
    switch (id) {
    case 1: return criterion_lagrange(seed);
    case 2: return criterion_kernel_sandwich(seed);
    case 3: return criterion_unit_mass();
    case 4: return criterion_derivative_fd(seed);
    case 5: return criterion_derivative_bounds(seed);
    case 6: return criterion_multilinearity(seed);
    case 7: return criterion_atom_dichotomy(seed);
    case 8: return criterion_alpha(seed, alpha);
    case 9: return criterion_sphere_mean(seed);
    case 10: return criterion_cavalieri(seed);
    case 11: return criterion_dimension(seed);
    case 12: return criterion_exponents();
    case 13: return criterion_probe();
    default: throw construction_error("verify: no criterion " + std::to_string(id));
    }
}

inline std::string format_result(const CriterionResult& r)
{
    char head[32];
    std::snprintf(head, sizeof head, "%s %2d ", r.pass ? "PASS" : "FAIL", r.id);
    return std::string(head) + r.name + ": " + r.measured + " | tolerance " + r.tolerance;
}

struct Report
{
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CriterionResult> results;
    std::vector<AlphaCrossCheck> alpha;

    [[nodiscard]] bool all_pass() const
    {
        for (const auto& r : results)
            if (!r.pass)
                return false;
        return true;
    }
};

inline Report collect_report(const std::string& suite, std::uint64_t seed)
{
    Report rep{suite, seed, {}, {}};
    for (int id : suite_criteria(suite))
        rep.results.push_back(run_criterion(id, seed, &rep.alpha));
    return rep;
}

inline void write_report(const Report& rep, std::ostream& out)
{
    out << "projlog verify suite=" << rep.suite << " seed=" << rep.seed << "\n";
    int passed = 0;
    for (const auto& r : rep.results) {
        out << format_result(r) << "\n";
        for (const auto& note : r.notes)
            out << note << "\n";
        passed += r.pass ? 1 : 0;
    }
    if (rep.suite == "all")
        out << format_alpha_line(rep.alpha) << "\n";
    out << "summary: " << passed << "/" << rep.results.size() << " passed\n";
    out.flush();
}

/// Runs a suite and writes the report. Returns 0 when every criterion passes,
/// 1 otherwise. Unknown suites throw construction_error.
inline int run_verify(const std::string& suite, std::uint64_t seed, std::ostream& out)
{
    const Report rep = collect_report(suite, seed);
    write_report(rep, out);
    return rep.all_pass() ? 0 : 1;
}

} // namespace projlog::verify
