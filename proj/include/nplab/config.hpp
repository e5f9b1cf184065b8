#pragma once

// JSON run-configuration schema shared by the command-line driver and the
// tests: root systems, regions, scalar fields, grids, and the result-table
// serialization (CSV with 17 significant digits plus a JSON sidecar).
// Parse failures throw ConfigError naming the offending field path.

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cache.hpp"
#include "field.hpp"
#include "region.hpp"
#include "rootsystem.hpp"

namespace nplab {

using nlohmann::json;

struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(const std::string& field_, const std::string& what_)
        : std::runtime_error(field_ + ": " + what_), field(field_) {}
};

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace cfg {

inline const json& require(const json& j, const std::string& key,
                           const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError(path + "." + key, "missing required field");
    return j.at(key);
}

inline double num(const json& j, const std::string& key,
                  const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number()) throw ConfigError(path + "." + key, "expected number");
    return v.get<double>();
}

inline double num_or(const json& j, const std::string& key, double dflt) {
    if (!j.is_object() || !j.contains(key)) return dflt;
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(key, "expected number");
    return v.get<double>();
}

inline int integer(const json& j, const std::string& key,
                   const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number_integer())
        throw ConfigError(path + "." + key, "expected integer");
    return v.get<int>();
}

inline int integer_or(const json& j, const std::string& key, int dflt) {
    if (!j.is_object() || !j.contains(key)) return dflt;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(key, "expected integer");
    return v.get<int>();
}

inline std::string str(const json& j, const std::string& key,
                       const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_string()) throw ConfigError(path + "." + key, "expected string");
    return v.get<std::string>();
}

inline std::vector<double> num_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path, "expected array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(path, "expected array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

inline Pt point(const json& v, int n, const std::string& path) {
    auto xs = num_list(v, path);
    if (static_cast<int>(xs.size()) != n)
        throw ConfigError(path, "expected " + std::to_string(n) + " coordinates");
    Pt p{};
    for (int i = 0; i < n; ++i) p[i] = xs[static_cast<size_t>(i)];
    return p;
}

} // namespace cfg

inline RootSystem parse_root_system(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected object");
    if (j.contains("roots")) {
        const json& rj = j.at("roots");
        if (!rj.is_array() || rj.empty())
            throw ConfigError(path + ".roots", "expected nonempty array");
        int n = static_cast<int>(rj.front().size());
        std::vector<Pt> roots;
        for (const auto& e : rj) roots.push_back(cfg::point(e, n, path + ".roots"));
        auto ks = cfg::num_list(cfg::require(j, "kappa", path), path + ".kappa");
        if (ks.size() != roots.size())
            throw ConfigError(path + ".kappa", "one multiplicity per root");
        return rs_from_roots(n, roots, ks);
    }
    std::string preset = cfg::str(j, "preset", path);
    if (preset == "trivial") {
        int n = cfg::integer_or(j, "dimension", 1);
        if (n < 1 || n > MAX_DIM)
            throw ConfigError(path + ".dimension", "supported range is 1..4");
        return rs_trivial(n);
    }
    if (preset == "z2") {
        double k = cfg::num(j, "kappa", path);
        return rs_z2(k);
    }
    if (preset == "z2_product") {
        auto ks = cfg::num_list(cfg::require(j, "kappa", path), path + ".kappa");
        if (ks.empty() || ks.size() > 3)
            throw ConfigError(path + ".kappa", "expected 1..3 multiplicities");
        return rs_z2_product(static_cast<int>(ks.size()), ks);
    }
    throw ConfigError(path + ".preset",
                      "unknown preset '" + preset +
                          "' (trivial | z2 | z2_product)");
}

inline Region parse_region(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected object");
    std::string type = cfg::str(j, "type", path);
    if (type == "interval")
        return region_interval(cfg::num(j, "a", path), cfg::num(j, "b", path));
    if (type == "intervals") {
        const json& lj = cfg::require(j, "list", path);
        if (!lj.is_array()) throw ConfigError(path + ".list", "expected array");
        IntervalList ivs;
        for (const auto& e : lj) {
            auto ab = cfg::num_list(e, path + ".list[]");
            if (ab.size() != 2)
                throw ConfigError(path + ".list[]", "expected [a, b]");
            ivs.push_back({ab[0], ab[1]});
        }
        return region_intervals(ivs);
    }
    if (type == "ball") {
        auto cj = cfg::require(j, "center", path);
        int n = static_cast<int>(cj.size());
        return region_ball(cfg::point(cj, n, path + ".center"),
                           cfg::num(j, "radius", path), n);
    }
    if (type == "box") {
        auto lj = cfg::require(j, "lo", path);
        int n = static_cast<int>(lj.size());
        return region_axis_box(cfg::point(lj, n, path + ".lo"),
                               cfg::point(cfg::require(j, "hi", path), n,
                                          path + ".hi"),
                               n);
    }
    if (type == "half_space") {
        auto nj = cfg::require(j, "normal", path);
        int n = static_cast<int>(nj.size());
        return region_half_space(cfg::point(nj, n, path + ".normal"),
                                 cfg::num(j, "offset", path), n);
    }
    if (type == "full") return region_full(cfg::integer_or(j, "dimension", 1));
    if (type == "empty") return region_empty(cfg::integer_or(j, "dimension", 1));
    if (type == "complement")
        return region_complement(
            parse_region(cfg::require(j, "of", path), path + ".of"));
    if (type == "intersection" || type == "union") {
        const json& oj = cfg::require(j, "of", path);
        if (!oj.is_array() || oj.size() != 2)
            throw ConfigError(path + ".of", "expected exactly two regions");
        Region a = parse_region(oj[0], path + ".of[0]");
        Region b = parse_region(oj[1], path + ".of[1]");
        return type == "union" ? region_union(std::move(a), std::move(b))
                               : region_intersect(std::move(a), std::move(b));
    }
    if (type == "weierstrass_domain") {
        WeierstrassSpec ws;
        ws.a = cfg::num_or(j, "a", 0.5);
        ws.b = cfg::num_or(j, "b", 3.0);
        ws.k_max = cfg::integer_or(j, "k_max", 30);
        return region_weierstrass_domain(ws, cfg::num(j, "par_c2", path),
                                         cfg::num(j, "par_c0", path));
    }
    throw ConfigError(path + ".type", "unknown region type '" + type + "'");
}

inline Field parse_field(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected object");
    std::string type = cfg::str(j, "type", path);
    if (type == "indicator")
        return field_indicator(
            parse_region(cfg::require(j, "region", path), path + ".region"));
    if (type == "tent")
        return field_tent(cfg::num_or(j, "center", 0.0),
                          cfg::num(j, "halfwidth", path),
                          cfg::num_or(j, "height", 1.0));
    if (type == "gauss")
        return field_gauss(cfg::num_or(j, "center", 0.0),
                           cfg::num(j, "sigma", path),
                           cfg::num_or(j, "amp", 1.0));
    throw ConfigError(path + ".type", "unknown field type '" + type + "'");
}

inline std::vector<double> parse_s_grid(const json& j, const char* key,
                                        std::vector<double> dflt) {
    if (!j.contains(key)) return dflt;
    auto g = cfg::num_list(j.at(key), key);
    if (g.empty()) throw ConfigError(key, "expected nonempty grid");
    return g;
}

// ---------------------------------------------------------------------------

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    json sidecar = json::object();
    bool pass = true;

    void add_row(std::initializer_list<double> vals) {
        std::vector<std::string> r;
        for (double v : vals) r.push_back(fmt17(v));
        rows.push_back(std::move(r));
    }

    void add_row_raw(std::vector<std::string> r) { rows.push_back(std::move(r)); }

    std::string csv() const {
        std::string out;
        for (size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            out += columns[i];
        }
        out += '\n';
        for (const auto& r : rows) {
            for (size_t i = 0; i < r.size(); ++i) {
                if (i) out += ',';
                out += r[i];
            }
            out += '\n';
        }
        return out;
    }
};

// cache identity: experiment name plus the canonicalized config with the
// output location stripped (it does not affect the computed values)
inline std::string canonical_cache_key(const json& effective_config) {
    json c = effective_config;
    c.erase("out");
    std::string blob = c.dump();
    return fnv1a_hex(blob);
}

} // namespace nplab
