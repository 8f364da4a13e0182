#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gcae/common.hpp"
#include "gcae/encoder.hpp"

namespace gcae {

/// Flat key=value config file: one decision per line, '#' comments, kept
/// verbatim for the report's provenance echo.
struct KeyValueFile {
    std::map<std::string, std::string> values;
    std::string raw_text;

    static KeyValueFile load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open config: " + path);
        KeyValueFile kv;
        std::ostringstream raw;
        std::string line;
        while (std::getline(in, line)) {
            raw << line << '\n';
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw IoError("config line without '=': " + line);
            kv.values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        kv.raw_text = raw.str();
        return kv;
    }

    bool has(const std::string& key) const { return values.count(key) > 0; }

    std::string get_string(const std::string& key) const {
        const auto it = values.find(key);
        require(it != values.end(), "config: missing required key '" + key + "'");
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        const auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        return parse_double(key, values.at(key));
    }

    long long get_int(const std::string& key, long long fallback) const {
        if (!has(key)) return fallback;
        return parse_int(key, values.at(key));
    }

    long long get_int(const std::string& key) const {
        require(has(key), "config: missing required key '" + key + "'");
        return parse_int(key, values.at(key));
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string& s = values.at(key);
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw ValidationError("config: key '" + key + "' is not a boolean: " + s);
    }

    std::vector<int> get_int_list(const std::string& key) const {
        const std::string s = get_string(key);
        std::vector<int> out;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ','))
            out.push_back(static_cast<int>(parse_int(key, trim(cell))));
        require(!out.empty(), "config: key '" + key + "' is an empty list");
        return out;
    }

private:
    static std::string trim(std::string s) {
        const auto first = s.find_first_not_of(" \t");
        const auto last = s.find_last_not_of(" \t");
        if (first == std::string::npos) return "";
        return s.substr(first, last - first + 1);
    }

    static double parse_double(const std::string& key, const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ValidationError("config: key '" + key + "' is not a number: " + s);
        }
    }

    static long long parse_int(const std::string& key, const std::string& s) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ValidationError("config: key '" + key + "' is not an integer: " + s);
        }
    }
};

/// Configuration of a fit/benchmark run: the hyperparameters plus dataset
/// manifest, cluster count, output directory and the baseline toggle.
struct RunConfig {
    Hyperparameters hyper;
    std::string manifest;
    int n_clusters = 0;
    std::string out_dir = "gcae_out";
    bool baseline_only = false;
    std::string config_echo;

    static RunConfig from_file(const std::string& path) {
        const KeyValueFile kv = KeyValueFile::load(path);
        RunConfig cfg;
        cfg.config_echo = kv.raw_text;
        cfg.manifest = kv.get_string("manifest");
        cfg.n_clusters = static_cast<int>(kv.get_int("c"));
        cfg.out_dir = kv.get_string("out_dir", cfg.out_dir);
        cfg.baseline_only = kv.get_bool("baseline_only", false);

        Hyperparameters& h = cfg.hyper;
        h.lambda = kv.get_double("lambda", h.lambda);
        h.k = static_cast<int>(kv.get_int("k", h.k));
        h.t = static_cast<int>(kv.get_int("t", h.t));
        if (kv.has("eta") && kv.get_string("eta") != "auto") h.eta = kv.get_double("eta", 0.0);
        h.theta = kv.get_double("theta", h.theta);
        h.bits = static_cast<int>(kv.get_int("b", h.bits));
        h.rank = static_cast<int>(kv.get_int("r", h.rank));
        h.rho = kv.get_double("rho", h.rho);
        h.mu = kv.get_double("mu", h.mu);
        h.inner_iter = static_cast<int>(kv.get_int("inner_iter", h.inner_iter));
        h.outer_iter = static_cast<int>(kv.get_int("outer_iter", h.outer_iter));
        h.seed = static_cast<std::uint64_t>(kv.get_int("seed", 0));

        require(cfg.n_clusters >= 1, "config: c must be >= 1");
        h.validate();
        return cfg;
    }
};

/// Configuration of the synthetic-dataset generator.
struct SynthConfig {
    int n_samples = 0;
    int n_clusters = 0;
    std::vector<int> dims;
    double separation = 8.0;
    double noise = 1.0;
    std::uint64_t seed = 0;
    std::string out_dir = "synth_out";

    static SynthConfig from_file(const std::string& path) {
        const KeyValueFile kv = KeyValueFile::load(path);
        SynthConfig cfg;
        cfg.n_samples = static_cast<int>(kv.get_int("n_samples"));
        cfg.n_clusters = static_cast<int>(kv.get_int("n_clusters"));
        cfg.dims = kv.get_int_list("dims");
        cfg.separation = kv.get_double("separation", cfg.separation);
        cfg.noise = kv.get_double("noise", cfg.noise);
        cfg.seed = static_cast<std::uint64_t>(kv.get_int("seed", 0));
        cfg.out_dir = kv.get_string("out_dir", cfg.out_dir);
        return cfg;
    }
};

}  // namespace gcae
