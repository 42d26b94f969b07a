#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "favard/common.hpp"
#include "favard/similarity.hpp"

namespace favard {

// Flat `key = value` configuration with a fixed typed schema. Unknown keys
// and type mismatches are hard errors; every run hashes the full resolved
// key set so output files can be matched to their configuration.
class ExperimentConfig {
  public:
    enum class Kind { Int, Double, U64, String };

    ExperimentConfig() { install_defaults(); }

    static ExperimentConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw config_error("config: cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return from_text(ss.str());
    }

    static ExperimentConfig from_text(const std::string& text) {
        ExperimentConfig cfg;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string stripped = strip_comment(line);
            if (stripped.empty()) continue;
            auto eq = stripped.find('=');
            if (eq == std::string::npos)
                throw config_error("config line " + std::to_string(lineno) +
                                   ": expected `key = value`");
            std::string key = trim(stripped.substr(0, eq));
            std::string value = trim(stripped.substr(eq + 1));
            cfg.set(key, value);
        }
        return cfg;
    }

    void set(const std::string& key, const std::string& value) {
        auto it = schema().find(key);
        if (it == schema().end()) throw config_error("config: unknown key `" + key + "`");
        switch (it->second) {
            case Kind::Int: {
                ints_[key] = parse_int(key, value);
                break;
            }
            case Kind::Double: {
                doubles_[key] = parse_double(key, value);
                break;
            }
            case Kind::U64: {
                u64s_[key] = parse_u64(key, value);
                break;
            }
            case Kind::String: {
                strings_[key] = value;
                break;
            }
        }
        validate_one(key);
    }

    int get_int(const std::string& key) const { return fetch(ints_, key); }
    double get_double(const std::string& key) const { return fetch(doubles_, key); }
    std::uint64_t get_u64(const std::string& key) const { return fetch(u64s_, key); }
    const std::string& get_string(const std::string& key) const { return fetch(strings_, key); }

    // Canonical serialization of the full resolved key set, used for hashing
    // and embedded in records.
    std::string canonical_text() const {
        std::ostringstream out;
        for (const auto& [key, kind] : schema()) {
            out << key << " = ";
            switch (kind) {
                case Kind::Int: out << get_int(key); break;
                case Kind::U64: out << get_u64(key); break;
                case Kind::String: out << get_string(key); break;
                case Kind::Double: {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.17g", get_double(key));
                    out << buf;
                    break;
                }
            }
            out << "\n";
        }
        return out.str();
    }

    std::string hash() const {
        // FNV-1a 64 over the canonical text.
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : canonical_text()) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    // Resolved similarity system for the configured preset: `gasket`,
    // `four-corner`, or `triangle:<p2-im>`.
    SimilaritySystem system() const {
        const std::string& preset = get_string("preset");
        int cap = get_int("generation_cap");
        if (preset == "gasket") return gasket_system(cap);
        if (preset == "four-corner") return four_corner_system(cap);
        if (preset.rfind("triangle:", 0) == 0) {
            double im = parse_double("preset", preset.substr(9));
            return triangle_system(degenerate_triangle(im), cap);
        }
        throw config_error("config: unknown preset `" + preset + "`");
    }

    std::vector<double> degenerate_deltas() const {
        std::vector<double> out;
        std::istringstream in(get_string("degenerate_deltas"));
        std::string item;
        while (std::getline(in, item, ',')) out.push_back(parse_double("degenerate_deltas", trim(item)));
        if (out.empty()) throw config_error("config: degenerate_deltas must list at least one value");
        return out;
    }

    int ell() const {
        return std::max(1, static_cast<int>(std::lround(get_double("alpha_ell") * get_int("m"))));
    }

    static const std::map<std::string, Kind>& schema() {
        static const std::map<std::string, Kind> s = {
            {"preset", Kind::String},
            {"n_max", Kind::Int},
            {"theta_samples", Kind::Int},
            {"quadrature", Kind::String},
            {"generation_cap", Kind::Int},
            {"merge_eps_rel", Kind::Double},
            {"bad_set_exponent", Kind::Double},
            {"m", Kind::Int},
            {"alpha_ell", Kind::Double},
            {"epsilon_star", Kind::Double},
            {"beta", Kind::Double},
            {"h_strip", Kind::Double},
            {"delta_rect", Kind::Double},
            {"stability_c", Kind::Double},
            {"stacking_k", Kind::Double},
            {"stacking_m", Kind::Double},
            {"stacking_n_lo", Kind::Int},
            {"stacking_n_hi", Kind::Int},
            {"residual_tol", Kind::Double},
            {"mass_tol", Kind::Double},
            {"split_tol", Kind::Double},
            {"riesz_slack", Kind::Double},
            {"plancherel_tol", Kind::Double},
            {"plancherel_n_max", Kind::Int},
            {"audit_samples", Kind::Int},
            {"cetsq_sets", Kind::Int},
            {"cetsq_max_k", Kind::Int},
            {"cetsq_alpha_max", Kind::Double},
            {"trace_t0", Kind::Double},
            {"trace_t1", Kind::Double},
            {"trace_max_step", Kind::Double},
            {"gfloor_c", Kind::Double},
            {"dr_width_c", Kind::Double},
            {"degenerate_deltas", Kind::String},
            {"degenerate_n_max", Kind::Int},
            {"seed", Kind::U64},
            {"jobs", Kind::Int},
            {"out_dir", Kind::String},
        };
        return s;
    }

  private:
    void install_defaults() {
        strings_["preset"] = "gasket";
        ints_["n_max"] = 8;
        ints_["theta_samples"] = 256;
        strings_["quadrature"] = "midpoint";
        ints_["generation_cap"] = 14;
        doubles_["merge_eps_rel"] = 1e-12;
        doubles_["bad_set_exponent"] = 3.0;
        ints_["m"] = 4;
        doubles_["alpha_ell"] = 1.0;
        doubles_["epsilon_star"] = 1e-3;
        doubles_["beta"] = 3.0;
        doubles_["h_strip"] = 2.4;
        doubles_["delta_rect"] = 0.1;
        doubles_["stability_c"] = 0.1;
        doubles_["stacking_k"] = 2.0;
        doubles_["stacking_m"] = 2.0;
        ints_["stacking_n_lo"] = 6;
        ints_["stacking_n_hi"] = 8;
        doubles_["residual_tol"] = 1e-10;
        doubles_["mass_tol"] = 1e-9;
        doubles_["split_tol"] = 1e-12;
        doubles_["riesz_slack"] = 1e-12;
        doubles_["plancherel_tol"] = 0.02;
        ints_["plancherel_n_max"] = 3;
        ints_["audit_samples"] = 1000000;
        ints_["cetsq_sets"] = 1000;
        ints_["cetsq_max_k"] = 200;
        doubles_["cetsq_alpha_max"] = 1000.0;
        doubles_["trace_t0"] = 0.5;
        doubles_["trace_t1"] = 0.45;
        doubles_["trace_max_step"] = 1e-3;
        doubles_["gfloor_c"] = 0.4;
        doubles_["dr_width_c"] = 0.5;
        strings_["degenerate_deltas"] = "0.05,0.1,0.2,0.4";
        ints_["degenerate_n_max"] = 6;
        u64s_["seed"] = 20250810ULL;
        ints_["jobs"] = 0;
        strings_["out_dir"] = "out";
    }

    void validate_one(const std::string& key) const {
        auto positive = [&](double v) {
            if (!(v > 0.0)) throw config_error("config: `" + key + "` must be positive");
        };
        if (key == "theta_samples" && get_int(key) < 8)
            throw config_error("config: theta_samples must be at least 8");
        if ((key == "n_max" || key == "generation_cap" || key == "plancherel_n_max" ||
             key == "degenerate_n_max") &&
            get_int(key) < 0)
            throw config_error("config: `" + key + "` must be nonnegative");
        if (key == "m" && get_int(key) < 1) throw config_error("config: m must be at least 1");
        if (key == "jobs" && get_int(key) < 0)
            throw config_error("config: jobs must be nonnegative");
        if ((key == "audit_samples" || key == "cetsq_sets" || key == "cetsq_max_k") &&
            get_int(key) < 1)
            throw config_error("config: `" + key + "` must be at least 1");
        if (key == "quadrature") {
            const std::string& q = get_string(key);
            if (q != "midpoint" && q != "simpson")
                throw config_error("config: quadrature must be `midpoint` or `simpson`");
        }
        static const char* positive_keys[] = {
            "merge_eps_rel", "bad_set_exponent", "alpha_ell", "epsilon_star", "beta",
            "h_strip", "delta_rect", "stability_c", "stacking_k", "stacking_m",
            "residual_tol", "mass_tol", "split_tol", "riesz_slack", "plancherel_tol",
            "cetsq_alpha_max", "trace_max_step", "gfloor_c", "dr_width_c"};
        for (const char* pk : positive_keys)
            if (key == pk) positive(get_double(key));
    }

    template <typename M>
    static const typename M::mapped_type& fetch(const M& map, const std::string& key) {
        auto it = map.find(key);
        if (it == map.end()) throw config_error("config: key `" + key + "` has a different type");
        return it->second;
    }

    static std::string strip_comment(const std::string& line) {
        auto pos = line.find('#');
        return trim(pos == std::string::npos ? line : line.substr(0, pos));
    }

    static std::string trim(const std::string& s) {
        std::size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
        return s.substr(a, b - a);
    }

    static int parse_int(const std::string& key, const std::string& v) {
        std::size_t used = 0;
        int out = 0;
        try {
            out = std::stoi(v, &used);
        } catch (...) {
            throw config_error("config: `" + key + "` expects an integer, got `" + v + "`");
        }
        if (used != v.size())
            throw config_error("config: `" + key + "` expects an integer, got `" + v + "`");
        return out;
    }

    static double parse_double(const std::string& key, const std::string& v) {
        std::size_t used = 0;
        double out = 0.0;
        try {
            out = std::stod(v, &used);
        } catch (...) {
            throw config_error("config: `" + key + "` expects a real number, got `" + v + "`");
        }
        if (used != v.size())
            throw config_error("config: `" + key + "` expects a real number, got `" + v + "`");
        return out;
    }

    static std::uint64_t parse_u64(const std::string& key, const std::string& v) {
        std::size_t used = 0;
        unsigned long long out = 0;
        try {
            out = std::stoull(v, &used);
        } catch (...) {
            throw config_error("config: `" + key + "` expects an unsigned integer, got `" + v + "`");
        }
        if (used != v.size())
            throw config_error("config: `" + key + "` expects an unsigned integer, got `" + v + "`");
        return static_cast<std::uint64_t>(out);
    }

    std::map<std::string, int> ints_;
    std::map<std::string, double> doubles_;
    std::map<std::string, std::uint64_t> u64s_;
    std::map<std::string, std::string> strings_;
};

}  // namespace favard
