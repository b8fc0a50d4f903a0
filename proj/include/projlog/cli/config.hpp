#pragma once

// Command-line configuration: CLI11 flags merged with an optional JSON config
// file (--config). Flags win over config values; unknown flags and unknown
// config keys are rejected.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <list>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "projlog/verify/suites.hpp"

namespace projlog::cli {

/// Invalid input: reported as one line, exit code 2.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// --help was requested; the message is the help text, exit code 0.
class HelpRequested : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// lo:hi:count
struct RangeSpec
{
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

inline RangeSpec parse_range(const std::string& s, const std::string& flag)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(item);
    RangeSpec r;
    try {
        if (parts.size() != 3)
            throw std::invalid_argument("parts");
        std::size_t used = 0;
        r.lo = std::stod(parts[0], &used);
        if (used != parts[0].size())
            throw std::invalid_argument("lo");
        r.hi = std::stod(parts[1], &used);
        if (used != parts[1].size())
            throw std::invalid_argument("hi");
        r.count = std::stoi(parts[2], &used);
        if (used != parts[2].size())
            throw std::invalid_argument("count");
    } catch (const std::exception&) {
        throw ConfigError("--" + flag + ": expected lo:hi:count, got '" + s + "'");
    }
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.hi > r.lo))
        throw ConfigError("--" + flag + ": need finite lo < hi");
    return r;
}

struct RunConfig
{
    std::string command;
    std::string measure;                  // measure spec file
    std::optional<int> n;                 // complex dimension, 1..3
    double eps = 0.0;
    RangeSpec grid{-2.0, 2.0, 101};       // per-axis range of the evaluation slice
    std::vector<int> axes{0, 1};          // real coordinates spanned by the slice
    RangeSpec radii{0.01, 0.1, 10};       // dimension: geometric radius grid
    std::optional<double> alpha;
    std::vector<double> p_list{1.5, 3.0};
    std::vector<int> resolutions{64, 128, 256, 512};
    double box = 1.0;                     // riesz: half-width of the probe box around the origin
    std::uint64_t seed = 1;
    std::string out;                      // empty: stdout
    std::string format = "csv";
    std::string kind = "V";               // potential: U, V or G
    std::optional<int> k;                 // ma-density: Hessian order, default n
    std::vector<double> eps_list{0.2, 0.1, 0.05};
    std::vector<double> at;               // atom-scan center, default first support point
    std::optional<double> gamma;
    std::optional<int> big_n;             // exponents: real ambient dimension, default 2n
    std::string suite = "all";
    std::string statistic = "auto";       // dimension: auto, sup or median
};

inline const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"potential", "ma-density", "atom-scan", "riesz",
                                                "dimension", "exponents",  "constants", "verify"};
    return names;
}

namespace detail {

using json = nlohmann::json;

template <class T>
T json_scalar(const json& j, const std::string& key)
{
    if constexpr (std::is_same_v<T, std::string>) {
        if (!j.is_string())
            throw ConfigError("config: '" + key + "' must be a string");
        return j.get<std::string>();
    } else if constexpr (std::is_integral_v<T>) {
        if (!j.is_number_integer())
            throw ConfigError("config: '" + key + "' must be an integer");
        if constexpr (std::is_unsigned_v<T>)
            if (j.get<long long>() < 0)
                throw ConfigError("config: '" + key + "' must be >= 0");
        return j.get<T>();
    } else {
        if (!j.is_number())
            throw ConfigError("config: '" + key + "' must be a number");
        return j.get<T>();
    }
}

template <class T>
std::vector<T> json_list(const json& j, const std::string& key)
{
    std::vector<T> out;
    if (j.is_array()) {
        for (const auto& x : j)
            out.push_back(json_scalar<T>(x, key));
        return out;
    }
    if (j.is_string()) {
        std::stringstream ss(j.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                if constexpr (std::is_integral_v<T>)
                    out.push_back(static_cast<T>(std::stoll(item, &used)));
                else
                    out.push_back(static_cast<T>(std::stod(item, &used)));
                if (used != item.size())
                    throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw ConfigError("config: '" + key + "' has a malformed entry '" + item + "'");
            }
        }
        return out;
    }
    throw ConfigError("config: '" + key + "' must be an array or a comma-separated string");
}

struct Binding
{
    CLI::Option* option = nullptr;
    std::function<void(const json&)> apply;
};

class Binder
{
public:
    explicit Binder(CLI::App& app)
        : app_(app)
    {
    }

    template <class T>
    CLI::Option* scalar(const std::string& name, T& var, const std::string& help)
    {
        CLI::Option* opt = app_.add_option("--" + name, var, help);
        bindings_[name] = {opt, [&var, name](const json& j) { var = json_scalar<T>(j, name); }};
        return opt;
    }

    template <class T>
    CLI::Option* optional(const std::string& name, std::optional<T>& var, const std::string& help)
    {
        auto* holder = &holders_<T>().emplace_back();
        CLI::Option* opt = app_.add_option("--" + name, *holder, help);
        bindings_[name] = {opt, [&var, name](const json& j) { var = json_scalar<T>(j, name); }};
        after_parse_.push_back([opt, holder, &var] {
            if (opt->count() > 0)
                var = *holder;
        });
        return opt;
    }

    template <class T>
    CLI::Option* list(const std::string& name, std::vector<T>& var, const std::string& help)
    {
        CLI::Option* opt = app_.add_option("--" + name, var, help)->delimiter(',');
        bindings_[name] = {opt, [&var, name](const json& j) { var = json_list<T>(j, name); }};
        return opt;
    }

    /// String flag whose value is converted after parsing (ranges).
    CLI::Option* deferred(const std::string& name, std::string& raw, const std::string& help)
    {
        CLI::Option* opt = app_.add_option("--" + name, raw, help);
        bindings_[name] = {opt, [&raw, name](const json& j) { raw = json_scalar<std::string>(j, name); }};
        return opt;
    }

    void finish_cli()
    {
        for (auto& f : after_parse_)
            f();
    }

    /// Applies config-file values for keys whose flag was not given.
    void merge(const json& cfg, std::set<std::string>& given)
    {
        if (!cfg.is_object())
            throw ConfigError("config: top level must be an object");
        for (auto it = cfg.begin(); it != cfg.end(); ++it) {
            const auto b = bindings_.find(it.key());
            if (b == bindings_.end() || it.key() == "config")
                throw ConfigError("config: unknown key '" + it.key() + "'");
            if (b->second.option->count() > 0)
                continue; // flag wins
            b->second.apply(it.value());
            given.insert(it.key());
        }
    }

    [[nodiscard]] bool flag_given(const std::string& name) const
    {
        const auto b = bindings_.find(name);
        return b != bindings_.end() && b->second.option->count() > 0;
    }

private:
    template <class T>
    std::list<T>& holders_()
    {
        if constexpr (std::is_same_v<T, int>)
            return int_holders_;
        else
            return double_holders_;
    }

    CLI::App& app_;
    std::map<std::string, Binding> bindings_;
    std::vector<std::function<void()>> after_parse_;
    std::list<int> int_holders_;
    std::list<double> double_holders_;
};

} // namespace detail

inline void validate(RunConfig& c, const std::set<std::string>& given)
{
    auto has = [&](const std::string& k) { return given.count(k) > 0; };
    const std::string& cmd = c.command;

    if (c.n && (*c.n < 1 || *c.n > 3))
        throw ConfigError("--n must be 1, 2 or 3");
    if (!std::isfinite(c.eps) || c.eps < 0.0)
        throw ConfigError("--eps must be a finite value >= 0");
    if (c.format != "csv" && c.format != "json")
        throw ConfigError("--format must be csv or json");
    if (!has("format") && c.out.size() >= 5 && c.out.compare(c.out.size() - 5, 5, ".json") == 0)
        c.format = "json";

    const bool needs_measure = cmd == "potential" || cmd == "ma-density" || cmd == "atom-scan" || cmd == "riesz" ||
                               cmd == "dimension";
    if (needs_measure && c.measure.empty())
        throw ConfigError(cmd + ": --measure is required");

    if (cmd == "ma-density" && !(c.eps > 0.0))
        throw ConfigError("ma-density: derivatives require eps > 0");
    if (cmd == "potential") {
        if (c.kind != "U" && c.kind != "V" && c.kind != "G")
            throw ConfigError("potential: --kind must be U, V or G");
        if (c.eps > 0.0 && c.kind != "V")
            throw ConfigError("potential: --eps applies to kind V only");
    }
    if (cmd == "potential" || cmd == "ma-density") {
        if (c.grid.count < 2)
            throw ConfigError("--grid: need at least 2 points per axis");
        if (c.axes.size() != 2 || c.axes[0] == c.axes[1] || c.axes[0] < 0 || c.axes[1] < 0)
            throw ConfigError("--axes: need two distinct nonnegative coordinate indices");
    }
    if (cmd == "atom-scan") {
        if (c.eps_list.empty())
            throw ConfigError("atom-scan: --eps-list is empty");
        for (std::size_t i = 0; i < c.eps_list.size(); ++i)
            if (!(c.eps_list[i] > 0.0) || (i > 0 && !(c.eps_list[i] < c.eps_list[i - 1])))
                throw ConfigError("atom-scan: derivatives require eps > 0 and --eps-list must descend");
    }
    if (cmd == "riesz") {
        if (!c.alpha)
            throw ConfigError("riesz: --alpha is required");
        if (c.p_list.empty())
            throw ConfigError("riesz: --p-list is empty");
        for (double p : c.p_list)
            if (!(p >= 1.0))
                throw ConfigError("riesz: every p must be >= 1");
        if (c.resolutions.size() < 2)
            throw ConfigError("riesz: need at least two --resolutions");
        for (std::size_t i = 0; i < c.resolutions.size(); ++i)
            if (c.resolutions[i] < 2 || (i > 0 && c.resolutions[i] <= c.resolutions[i - 1]))
                throw ConfigError("riesz: --resolutions must be >= 2 and ascending");
        if (!(c.box > 0.0) || !std::isfinite(c.box))
            throw ConfigError("riesz: --box must be positive");
    }
    if (cmd == "dimension") {
        if (!(c.radii.lo > 0.0) || c.radii.count < 3)
            throw ConfigError("dimension: --radii needs 0 < lo < hi and count >= 3");
        if (c.statistic != "auto" && c.statistic != "sup" && c.statistic != "median")
            throw ConfigError("dimension: --statistic must be auto, sup or median");
    }
    if (cmd == "exponents") {
        if (!c.gamma)
            throw ConfigError("exponents: --gamma is required");
        if (!c.n)
            throw ConfigError("exponents: --n is required");
        if (c.big_n && *c.big_n < 1)
            throw ConfigError("exponents: --N must be positive");
    }
    if (cmd == "verify" && !verify::valid_suite(c.suite))
        throw ConfigError("verify: unknown suite '" + c.suite + "'");
}

/// Parses argv (argv[0] is the program name). Throws ConfigError on invalid
/// input and HelpRequested for --help.
inline RunConfig parse_config(int argc, const char* const* argv)
{
    RunConfig c;
    std::string grid_raw, radii_raw, config_path;

    CLI::App app{"projlog: logarithmic potentials of probability measures on C^n and P^n", "projlog"};
    app.require_subcommand(1, 1);
    detail::Binder b(app);

    app.add_option("--config", config_path, "JSON config file; flags override its values");
    b.scalar("measure", c.measure, "measure spec file (JSON)");
    b.optional("n", c.n, "complex dimension (1..3)");
    b.scalar("eps", c.eps, "regularization eps >= 0");
    b.deferred("grid", grid_raw, "slice range per axis lo:hi:count (inclusive endpoints)");
    b.list("axes", c.axes, "two real coordinate indices spanned by the slice");
    b.deferred("radii", radii_raw, "geometric radius grid lo:hi:count");
    b.optional("alpha", c.alpha, "Riesz exponent alpha in (0, N)");
    b.list("p-list", c.p_list, "comma-separated exponents p >= 1");
    b.list("resolutions", c.resolutions, "ascending points per axis for the L^p probe");
    b.scalar("box", c.box, "half-width of the probe box centered at the origin");
    b.scalar("seed", c.seed, "random seed");
    b.scalar("out", c.out, "output path (default stdout)");
    b.scalar("format", c.format, "csv or json (default from --out extension, else csv)");
    b.scalar("kind", c.kind, "potential kind: U, V or G");
    b.optional("k", c.k, "ma-density: Hessian order k in [1, n]");
    b.list("eps-list", c.eps_list, "atom-scan: descending eps schedule");
    b.list("at", c.at, "atom-scan: real coordinates of the ball center");
    b.optional("gamma", c.gamma, "exponents: concentration dimension");
    b.optional("N", c.big_n, "exponents: real ambient dimension (default 2n)");
    b.scalar("suite", c.suite, "verify: geometry, kernels, potentials, riesz or all");
    b.scalar("statistic", c.statistic, "dimension: auto, sup or median");

    const std::vector<std::pair<std::string, std::string>> subs = {
        {"potential", "evaluate U, V^eps or G on a 2-D grid slice"},
        {"ma-density", "value, |grad|, Monge-Ampere density of V^eps on a grid slice"},
        {"atom-scan", "regularized Monge-Ampere mass of B(a, 10 eps) along an eps schedule"},
        {"riesz", "L^p refinement probe of the Riesz potential J_{mu,alpha}"},
        {"dimension", "concentration profile and dimension estimate"},
        {"exponents", "critical exponents for a concentration dimension"},
        {"constants", "Monge-Ampere and projective normalization constants"},
        {"verify", "run a property suite"},
    };
    for (const auto& [name, help] : subs)
        app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        if (msg.empty())
            msg = "invalid arguments";
        throw ConfigError(msg);
    }
    b.finish_cli();
    c.command = app.get_subcommands().front()->get_name();

    std::set<std::string> given;
    for (const char* key : {"format", "grid", "radii"})
        if (b.flag_given(key))
            given.insert(key);
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in)
            throw ConfigError("cannot open config file '" + config_path + "'");
        nlohmann::json cfg;
        try {
            cfg = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error&) {
            throw ConfigError("config file '" + config_path + "' is not valid JSON");
        }
        b.merge(cfg, given);
    }
    if (!grid_raw.empty())
        c.grid = parse_range(grid_raw, "grid");
    if (!radii_raw.empty())
        c.radii = parse_range(radii_raw, "radii");
    validate(c, given);
    return c;
}

} // namespace projlog::cli
