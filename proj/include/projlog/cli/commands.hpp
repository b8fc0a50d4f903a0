#pragma once

// CLI command implementations. Each command is a thin layer over library calls
// that produces a documented table (or the verify report).

#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>

#include "projlog/cli/config.hpp"
#include "projlog/detail/parallel.hpp"
#include "projlog/io/measure_json.hpp"
#include "projlog/io/table.hpp"
#include "projlog/measures.hpp"
#include "projlog/potentials.hpp"
#include "projlog/riesz.hpp"
#include "projlog/verify/suites.hpp"

namespace projlog::cli {

namespace detail {

/// Complex dimension of a measure used as a measure on C^n.
inline int complex_dim_of(const Measure& mu, const RunConfig& c)
{
    if (mu.ambient_dim() % 2 != 0)
        throw ConfigError(c.command + ": measure has odd real dimension " + std::to_string(mu.ambient_dim()) +
                          ", expected C^n = R^{2n}");
    const int n = mu.ambient_dim() / 2;
    if (n < 1 || n > 3)
        throw ConfigError(c.command + ": complex dimension must be 1, 2 or 3, measure has n = " + std::to_string(n));
    if (c.n && *c.n != n)
        throw ConfigError(c.command + ": --n " + std::to_string(*c.n) + " does not match the measure (n = " +
                          std::to_string(n) + ")");
    return n;
}

/// Row-major (second axis fastest) nodes of the inclusive slice lo..hi along the two axes.
inline std::vector<rvec> slice_nodes(const RunConfig& c, int real_dim)
{
    for (int a : c.axes)
        if (a >= real_dim)
            throw ConfigError("--axes: coordinate " + std::to_string(a) + " out of range for real dimension " +
                              std::to_string(real_dim));
    const int m = c.grid.count;
    const double step = (c.grid.hi - c.grid.lo) / (m - 1);
    std::vector<rvec> nodes;
    nodes.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            rvec x = rvec::Zero(real_dim);
            x[c.axes[0]] = c.grid.lo + i * step;
            x[c.axes[1]] = c.grid.lo + j * step;
            nodes.push_back(std::move(x));
        }
    return nodes;
}

inline std::vector<std::string> coordinate_columns(int real_dim)
{
    std::vector<std::string> cols;
    for (int i = 0; i < real_dim; ++i)
        cols.push_back("x" + std::to_string(i));
    return cols;
}

inline std::vector<io::Cell> coordinate_cells(const rvec& x)
{
    std::vector<io::Cell> row;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        row.emplace_back(x[i]);
    return row;
}

} // namespace detail

inline io::Table cmd_potential(const RunConfig& c)
{
    const Measure mu = io::load_measure(c.measure);
    const int n = detail::complex_dim_of(mu, c);
    const auto nodes = detail::slice_nodes(c, 2 * n);
    const RegEps eps(c.eps);
    const ProjectiveMeasure pm = c.kind == "G" ? to_projective(mu) : ProjectiveMeasure{};

    std::vector<double> vals(nodes.size());
    projlog::detail::parallel_for(nodes.size(), [&](std::size_t i) {
        const cvec z = to_complex(nodes[i]);
        if (c.kind == "U")
            vals[i] = eval_U(mu, z);
        else if (c.kind == "V")
            vals[i] = eval_V(mu, z, eps);
        else
            vals[i] = eval_G(pm, from_affine(z));
    });

    io::Table t;
    t.schema = "projlog.potential.v1";
    t.columns = detail::coordinate_columns(2 * n);
    t.columns.push_back("value");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto row = detail::coordinate_cells(nodes[i]);
        row.emplace_back(vals[i]);
        t.add_row(std::move(row));
    }
    return t;
}

inline io::Table cmd_ma_density(const RunConfig& c)
{
    const Measure mu = io::load_measure(c.measure);
    const int n = detail::complex_dim_of(mu, c);
    const int k = c.k.value_or(n);
    if (k < 1 || k > n)
        throw ConfigError("ma-density: --k must lie in [1, n]");
    const auto nodes = detail::slice_nodes(c, 2 * n);
    const PotentialField field(mu, RegEps(c.eps));

    struct Row
    {
        double value, grad, density;
        bool clamped;
    };
    std::vector<Row> rows(nodes.size());
    projlog::detail::parallel_for(nodes.size(), [&](std::size_t i) {
        const cvec z = to_complex(nodes[i]);
        const MADensity d = ma_density(field, z, k);
        rows[i] = {eval_field(field, z), grad_V(field, z).norm(), d.value, d.clamped};
    });

    io::Table t;
    t.schema = "projlog.ma_density.v1";
    t.columns = detail::coordinate_columns(2 * n);
    for (const char* col : {"value", "grad_norm", "ma_density", "clamped"})
        t.columns.emplace_back(col);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto row = detail::coordinate_cells(nodes[i]);
        row.emplace_back(rows[i].value);
        row.emplace_back(rows[i].grad);
        row.emplace_back(rows[i].density);
        row.emplace_back(rows[i].clamped);
        t.add_row(std::move(row));
    }
    return t;
}

inline io::Table cmd_atom_scan(const RunConfig& c)
{
    const Measure mu = io::load_measure(c.measure);
    const int n = detail::complex_dim_of(mu, c);
    rvec center;
    if (c.at.empty()) {
        center = mu.point(0);
    } else {
        if (static_cast<int>(c.at.size()) != 2 * n)
            throw ConfigError("atom-scan: --at needs " + std::to_string(2 * n) + " real coordinates");
        center = Eigen::Map<const rvec>(c.at.data(), static_cast<Eigen::Index>(c.at.size()));
    }
    // sample clouds use the coarse rule of the verify suite (agrees with the default within 2%)
    const quadrature::BallRule rule =
        mu.kind() == MeasureKind::sample_cloud ? quadrature::BallRule{14, 4, 6, 12} : quadrature::BallRule{};
    const auto masses = atom_mass_diagnostic(mu, to_complex(center), c.eps_list, {}, rule);

    io::Table t;
    t.schema = "projlog.atom_scan.v1";
    t.columns = {"eps", "radius", "mass"};
    for (const auto& m : masses)
        t.add_row({m.eps, m.radius, m.mass});
    return t;
}

inline io::Table cmd_riesz(const RunConfig& c, std::ostream& diag)
{
    const Measure mu = io::load_measure(c.measure);
    const int dim = mu.ambient_dim();
    if (!(*c.alpha > 0.0 && *c.alpha < dim))
        throw ConfigError("riesz: --alpha must lie in (0, N) with N = " + std::to_string(dim));
    if (mu.support_radius() >= c.box)
        throw ConfigError("riesz: the probe box [-box, box]^N must contain the support (support radius " +
                          verify::fmt(mu.support_radius()) + ")");
    const double nodes = std::pow(static_cast<double>(c.resolutions.back()), dim);
    if (nodes > 2e8)
        throw ConfigError("riesz: finest resolution needs " + verify::fmt(nodes, 3) + " nodes (limit 2e8)");

    quadrature::GridSpec box{rvec::Zero(dim), rvec::Constant(dim, c.box), 2};
    const ProbeTable probe = lp_threshold_probe(mu, *c.alpha, c.p_list, box, c.resolutions);

    io::Table t;
    t.schema = "projlog.riesz_probe.v1";
    t.columns = {"p", "resolution", "norm", "ratio"};
    for (const auto& r : probe.rows)
        t.add_row({r.p, static_cast<std::int64_t>(r.resolution), r.norm, r.ratio});
    for (const auto& v : probe.verdicts)
        diag << "riesz: p=" << verify::fmt(v.p) << " last_ratio=" << verify::fmt(v.last_ratio) << " "
             << (v.bounded ? "bounded" : "divergent") << "\n";
    return t;
}

inline io::Table cmd_dimension(const RunConfig& c)
{
    const Measure mu = io::load_measure(c.measure);
    std::optional<ConcentrationStatistic> stat;
    if (c.statistic == "sup")
        stat = ConcentrationStatistic::sup;
    else if (c.statistic == "median")
        stat = ConcentrationStatistic::median;
    const DimensionEstimate e = dimension_estimate(mu, c.radii.lo, c.radii.hi, c.radii.count, stat);

    io::Table t;
    t.schema = "projlog.dimension.v1";
    t.columns = {"radius", "q", "gamma_hat", "raw_slope", "residual", "flat", "statistic"};
    const std::string st = e.statistic == ConcentrationStatistic::sup ? "sup" : "median";
    for (std::size_t i = 0; i < e.profile.radii.size(); ++i)
        t.add_row({e.profile.radii[i], e.profile.values[i], e.gamma, e.raw_slope, e.residual, e.flat, st});
    return t;
}

inline io::Table cmd_exponents(const RunConfig& c)
{
    const int n = *c.n;
    const int big_n = c.big_n.value_or(2 * n);
    const ExponentReport r = critical_exponents(*c.gamma, n, big_n, c.alpha);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    io::Table t;
    t.schema = "projlog.exponents.v1";
    t.columns = {"gamma", "n", "N", "p1_star", "alpha_star", "p2_star", "q_star", "alpha", "riesz_p_star"};
    t.add_row({r.gamma, static_cast<std::int64_t>(r.n), static_cast<std::int64_t>(r.N), r.p1_star, r.alpha_star,
               r.p2_star, r.q_star, r.alpha.value_or(nan), r.riesz_p_star.value_or(nan)});
    return t;
}

inline io::Table cmd_constants(const RunConfig& c)
{
    io::Table t;
    t.schema = "projlog.constants.v1";
    t.columns = {"n", "ma_constant", "alpha_n", "alpha_n_closed_form", "radial_area_constant"};
    const int lo = c.n.value_or(1), hi = c.n.value_or(3);
    for (int n = lo; n <= hi; ++n)
        t.add_row({static_cast<std::int64_t>(n), ma_constant(n), quadrature::alpha_n(n), 1.0 / (2.0 * n),
                   quadrature::area_constant(n)});
    return t;
}

inline void write_table(const io::Table& t, const RunConfig& c, std::ostream& out)
{
    if (c.format == "json")
        io::write_json(t, out);
    else
        io::write_csv(t, out);
}

/// Runs the configured command. Output goes to --out (or `out`), diagnostics
/// to `diag`. Returns the process exit code.
inline int run_command(const RunConfig& c, std::ostream& out, std::ostream& diag)
{
    std::ofstream file;
    std::ostream* sink = &out;
    if (!c.out.empty()) {
        file.open(c.out, std::ios::binary);
        if (!file)
            throw ConfigError("cannot open output file '" + c.out + "'");
        sink = &file;
    }

    if (c.command == "verify") {
        const int code = verify::run_verify(c.suite, c.seed, *sink);
        if (!sink->good())
            throw ConfigError("failed writing the verify report");
        return code;
    }

    io::Table t;
    if (c.command == "potential")
        t = cmd_potential(c);
    else if (c.command == "ma-density")
        t = cmd_ma_density(c);
    else if (c.command == "atom-scan")
        t = cmd_atom_scan(c);
    else if (c.command == "riesz")
        t = cmd_riesz(c, diag);
    else if (c.command == "dimension")
        t = cmd_dimension(c);
    else if (c.command == "exponents")
        t = cmd_exponents(c);
    else if (c.command == "constants")
        t = cmd_constants(c);
    else
        throw ConfigError("unknown command '" + c.command + "'");
    write_table(t, c, *sink);
    sink->flush();
    if (!sink->good())
        throw ConfigError("failed writing output");
    return 0;
}

} // namespace projlog::cli
