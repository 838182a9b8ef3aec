#pragma once

// Job configuration: one flat key-value description of a computation
// (context, inducing character, additive twist, decomposition), loadable
// from a text file of `key = value` lines and overridable by flags.  All
// validation reports ConfigError with a precise message.

#include "slcm/lagrangian.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace slcm {

struct JobConfig {
    long p = 0;
    long f = 1;
    long n = 1;
    std::vector<long> modulus_coeffs;
    long unit_exp = 0;
    long varpi_num = 0;
    long varpi_den = 1;
    long psi_val = 0;
    long psi_unit_exp = 0;
    std::string decomposition = "standard";
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline long parse_long(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        long out = std::stol(value, &used);
        if (used != value.size())
            throw ConfigError("value for '" + key + "' is not an integer: " + value);
        return out;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("value for '" + key + "' is not an integer: " + value);
    }
}

} // namespace detail

// Applies one key=value pair; throws ConfigError for unknown keys or
// malformed values.
inline void set_config_key(JobConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "p")
        cfg.p = detail::parse_long(key, value);
    else if (key == "f")
        cfg.f = detail::parse_long(key, value);
    else if (key == "n")
        cfg.n = detail::parse_long(key, value);
    else if (key == "modulus_coeffs") {
        cfg.modulus_coeffs.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = detail::trim(item);
            if (!item.empty()) cfg.modulus_coeffs.push_back(detail::parse_long(key, item));
        }
    } else if (key == "unit_exp")
        cfg.unit_exp = detail::parse_long(key, value);
    else if (key == "varpi_num")
        cfg.varpi_num = detail::parse_long(key, value);
    else if (key == "varpi_den")
        cfg.varpi_den = detail::parse_long(key, value);
    else if (key == "psi_val")
        cfg.psi_val = detail::parse_long(key, value);
    else if (key == "psi_unit_exp")
        cfg.psi_unit_exp = detail::parse_long(key, value);
    else if (key == "decomposition") {
        if (value != "standard" && value != "swapped")
            throw ConfigError("decomposition must be 'standard' or 'swapped', got '" + value + "'");
        cfg.decomposition = value;
    } else
        throw ConfigError("unknown configuration key '" + key + "'");
}

// Reads a flat key-value file: `key = value` lines, '#' comments, blank
// lines ignored.
inline void load_config_file(JobConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        set_config_key(cfg, key, value);
    }
}

inline TameField make_field(const JobConfig& cfg) {
    if (cfg.p == 0) throw ConfigError("no context configured: set p (and f, n)");
    return TameField(cfg.p, cfg.f, cfg.n, cfg.modulus_coeffs);
}

inline MultChar make_character(const TameField& T, const JobConfig& cfg) {
    return mchar_from_varpi_fraction(T, cfg.unit_exp, cfg.varpi_num, cfg.varpi_den);
}

inline FStarClass make_psi(const JobConfig& cfg) {
    return FStarClass{cfg.psi_val, cfg.psi_unit_exp};
}

inline LagrangianDecomposition make_decomposition(const TameField& T, const JobConfig& cfg) {
    return cfg.decomposition == "swapped" ? swapped_decomposition(T) : standard_decomposition(T);
}

} // namespace slcm
