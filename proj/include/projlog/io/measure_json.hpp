#pragma once

// Measure spec files.
//
//   {"kind": "atomic", "points": [[x0, x1, ...], ...], "weights": [...]}
//   {"kind": "family", "family": {"name": "segment", "dim": 4, ...}, "seed": 7}
//
// Points are real coordinates; C^n is stored as (Re z_1, Im z_1, ..., Re z_n, Im z_n).
// Unknown fields are rejected at every level.

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "projlog/errors.hpp"
#include "projlog/measures.hpp"

namespace projlog::io {

using json = nlohmann::json;

namespace detail {

inline void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw construction_error("measure spec: unknown field '" + it.key() + "' in " + where);
}

inline rvec to_rvec(const json& j, const std::string& what)
{
    if (!j.is_array() || j.empty())
        throw construction_error("measure spec: " + what + " must be a non-empty array of numbers");
    rvec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw construction_error("measure spec: " + what + " must contain numbers only");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

template <class T>
T get_number(const json& j, const std::string& key)
{
    if (!j.is_number())
        throw construction_error("measure spec: '" + key + "' must be a number");
    if constexpr (std::is_integral_v<T>) {
        if (!j.is_number_integer())
            throw construction_error("measure spec: '" + key + "' must be an integer");
        if constexpr (std::is_unsigned_v<T>)
            if (j.get<long long>() < 0)
                throw construction_error("measure spec: '" + key + "' must be >= 0");
    }
    return j.get<T>();
}

} // namespace detail

inline FamilySpec parse_family(const json& j)
{
    if (!j.is_object())
        throw construction_error("measure spec: 'family' must be an object");
    detail::reject_unknown(j, {"name", "dim", "center", "radius", "length", "direction", "k", "ratio", "n", "count"},
                           "family");
    if (!j.contains("name") || !j["name"].is_string())
        throw construction_error("measure spec: family needs a string 'name'");
    FamilySpec s;
    s.family = family_from_string(j["name"].get<std::string>());
    if (j.contains("dim"))
        s.dim = detail::get_number<int>(j["dim"], "dim");
    if (j.contains("center"))
        s.center = detail::to_rvec(j["center"], "center");
    if (j.contains("radius"))
        s.radius = detail::get_number<double>(j["radius"], "radius");
    if (j.contains("length"))
        s.length = detail::get_number<double>(j["length"], "length");
    if (j.contains("direction"))
        s.direction = detail::to_rvec(j["direction"], "direction");
    if (j.contains("k"))
        s.k = detail::get_number<int>(j["k"], "k");
    if (j.contains("ratio"))
        s.ratio = detail::get_number<double>(j["ratio"], "ratio");
    if (j.contains("n"))
        s.n = detail::get_number<int>(j["n"], "n");
    if (j.contains("count"))
        s.count = detail::get_number<std::size_t>(j["count"], "count");
    return s;
}

inline Measure parse_measure(const json& j)
{
    if (!j.is_object())
        throw construction_error("measure spec: top level must be an object");
    detail::reject_unknown(j, {"kind", "points", "weights", "family", "seed"}, "measure");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw construction_error("measure spec: missing string field 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "atomic") {
        if (j.contains("family") || j.contains("seed"))
            throw construction_error("measure spec: 'family' and 'seed' apply to kind 'family' only");
        if (!j.contains("points") || !j["points"].is_array())
            throw construction_error("measure spec: atomic measure needs 'points'");
        std::vector<rvec> pts;
        for (const auto& p : j["points"])
            pts.push_back(detail::to_rvec(p, "each point"));
        std::vector<double> w;
        if (j.contains("weights")) {
            const rvec wv = detail::to_rvec(j["weights"], "weights");
            w.assign(wv.data(), wv.data() + wv.size());
        } else {
            w.assign(pts.size(), pts.empty() ? 0.0 : 1.0 / static_cast<double>(pts.size()));
        }
        return make_atomic(std::move(pts), std::move(w));
    }
    if (kind == "family") {
        if (j.contains("points") || j.contains("weights"))
            throw construction_error("measure spec: 'points' and 'weights' apply to kind 'atomic' only");
        if (!j.contains("family"))
            throw construction_error("measure spec: kind 'family' needs a 'family' object");
        FamilySpec s = parse_family(j["family"]);
        if (j.contains("seed"))
            s.seed = detail::get_number<std::uint64_t>(j["seed"], "seed");
        return sample_family(s);
    }
    throw construction_error("measure spec: kind must be 'atomic' or 'family', got '" + kind + "'");
}

inline Measure load_measure(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw construction_error("cannot open measure file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw construction_error("measure file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_measure(j);
}

} // namespace projlog::io
