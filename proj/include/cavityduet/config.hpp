#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "cavityduet/errors.hpp"
#include "cavityduet/params.hpp"
#include "cavityduet/sector_basis.hpp"

namespace cduet {

// Fully resolved run description (frequencies omega1-normalized).
struct RunConfig {
    SimParams params;              // couplings default to zero
    BasisKet initial{0, 1, 2, 0};  // one excited atom facing two photons
    double tau_max = 0.0;          // must be set by preset, file, or flag
    bool has_tau_max = false;
    double tau_step = 0.05;
    bool csv = false;
    bool svg = false;
    bool coeffs = false;
    std::string preset;  // empty when fully manual
};

// Raw key/value content of a config file; everything optional so that
// precedence (preset < file < command line) can be resolved afterwards.
struct ConfigOverrides {
    std::optional<std::string> preset;
    std::optional<std::string> freq_unit;
    std::optional<double> omega1, omega2, Omega1, Omega2, g1, g2, lambda;
    std::optional<int> n1, s1, n2, s2;
    std::optional<double> tau_max, tau_step;
    std::optional<bool> csv, svg, coeffs;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

inline double parse_double(const std::string& v, const std::string& where) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ParseError(where + ": expected a number, got '" + v + "'");
    return x;
}

inline int parse_int(const std::string& v, const std::string& where) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ParseError(where + ": expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

inline int parse_spin(const std::string& v, const std::string& where) {
    if (v == "g" || v == "0") return 0;
    if (v == "e" || v == "1") return 1;
    throw ParseError(where + ": expected g/e/0/1, got '" + v + "'");
}

inline bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ParseError(where + ": expected a boolean, got '" + v + "'");
}

}  // namespace detail

inline ConfigOverrides parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config file '" + path + "'");
    ConfigOverrides o;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string where = path + ":" + std::to_string(lineno);
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(where + ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::unquote(detail::trim(line.substr(eq + 1)));
        if (key.empty()) throw ParseError(where + ": empty key");
        if (value.empty()) throw ParseError(where + ": empty value for '" + key + "'");

        if (key == "preset") o.preset = value;
        else if (key == "freq_unit") o.freq_unit = value;
        else if (key == "omega1") o.omega1 = detail::parse_double(value, where);
        else if (key == "omega2") o.omega2 = detail::parse_double(value, where);
        else if (key == "Omega1") o.Omega1 = detail::parse_double(value, where);
        else if (key == "Omega2") o.Omega2 = detail::parse_double(value, where);
        else if (key == "g1") o.g1 = detail::parse_double(value, where);
        else if (key == "g2") o.g2 = detail::parse_double(value, where);
        else if (key == "lambda") o.lambda = detail::parse_double(value, where);
        else if (key == "n1") o.n1 = detail::parse_int(value, where);
        else if (key == "s1") o.s1 = detail::parse_spin(value, where);
        else if (key == "n2") o.n2 = detail::parse_int(value, where);
        else if (key == "s2") o.s2 = detail::parse_spin(value, where);
        else if (key == "tau_max") o.tau_max = detail::parse_double(value, where);
        else if (key == "tau_step") o.tau_step = detail::parse_double(value, where);
        else if (key == "csv") o.csv = detail::parse_bool(value, where);
        else if (key == "svg") o.svg = detail::parse_bool(value, where);
        else if (key == "coeffs") o.coeffs = detail::parse_bool(value, where);
        else throw ParseError(where + ": unknown key '" + key + "'");
    }
    return o;
}

// Shared frequencies of the benchmark presets: omega2 = 1.25 omega1, atoms
// detuned to 0.999 of their cavity.
inline void apply_preset(RunConfig& cfg, const std::string& name) {
    SimParams p;  // defaults carry the shared frequencies
    if (name == "fig1") {
        p.g1 = 0.04;
        p.g2 = 0.04 * p.omega2;
        p.lambda = 0.001;
        cfg.tau_max = 100.0;
    } else if (name == "fig2") {
        p.g1 = 0.001;
        p.g2 = 0.001 * p.omega2;
        p.lambda = 0.25;
        cfg.tau_max = 50.0;
    } else if (name == "fig3") {
        p.g1 = 0.04;
        p.g2 = 0.04 * p.omega2;
        p.lambda = 0.08;
        cfg.tau_max = 100.0;
    } else {
        throw ParseError("unknown preset '" + name + "' (expected fig1, fig2, or fig3)");
    }
    cfg.params = p;
    cfg.initial = BasisKet{0, 1, 2, 0};
    cfg.has_tau_max = true;
    cfg.tau_step = 0.05;
    cfg.preset = name;
}

// Command-line overrides (a subset of the file keys).
struct CliOverrides {
    std::optional<std::string> preset;
    std::optional<double> tau_max, tau_step;
    bool csv = false;
    bool svg = false;
};

inline RunConfig build_run_config(const std::optional<ConfigOverrides>& file,
                                  const CliOverrides& cli) {
    RunConfig cfg;
    const std::optional<std::string> preset =
        cli.preset ? cli.preset : (file ? file->preset : std::nullopt);
    if (preset) apply_preset(cfg, *preset);

    if (file) {
        const ConfigOverrides& o = *file;
        std::string unit = "omega1";
        if (o.freq_unit) {
            unit = *o.freq_unit;
            if (unit != "omega1" && unit != "GHz")
                throw ParseError("freq_unit must be 'omega1' or 'GHz', got '" + unit + "'");
        }
        double scale = 1.0;
        if (unit == "GHz") {
            if (!o.omega1)
                throw ValidationError("freq_unit = GHz requires an explicit omega1");
            scale = *o.omega1;
            if (!(scale > 0.0)) throw ValidationError("omega1 must be positive");
        } else if (o.omega1) {
            scale = *o.omega1;
            if (!(scale > 0.0)) throw ValidationError("omega1 must be positive");
        }
        if (o.omega2) cfg.params.omega2 = *o.omega2 / scale;
        if (o.Omega1) cfg.params.Omega1 = *o.Omega1 / scale;
        if (o.Omega2) cfg.params.Omega2 = *o.Omega2 / scale;
        if (o.g1) cfg.params.g1 = *o.g1 / scale;
        if (o.g2) cfg.params.g2 = *o.g2 / scale;
        if (o.lambda) cfg.params.lambda = *o.lambda / scale;
        if (o.n1) cfg.initial.n1 = *o.n1;
        if (o.s1) cfg.initial.s1 = *o.s1;
        if (o.n2) cfg.initial.n2 = *o.n2;
        if (o.s2) cfg.initial.s2 = *o.s2;
        if (o.tau_max) {
            cfg.tau_max = *o.tau_max;
            cfg.has_tau_max = true;
        }
        if (o.tau_step) cfg.tau_step = *o.tau_step;
        if (o.csv) cfg.csv = *o.csv;
        if (o.svg) cfg.svg = *o.svg;
        if (o.coeffs) cfg.coeffs = *o.coeffs;
    }

    if (cli.tau_max) {
        cfg.tau_max = *cli.tau_max;
        cfg.has_tau_max = true;
    }
    if (cli.tau_step) cfg.tau_step = *cli.tau_step;
    if (cli.csv) cfg.csv = true;
    if (cli.svg) cfg.svg = true;

    if (!cfg.has_tau_max)
        throw ValidationError("tau_max is required (set it directly or pick a preset)");
    if (!(cfg.tau_max > 0.0)) throw ValidationError("tau_max must be positive");
    if (!(cfg.tau_step > 0.0)) throw ValidationError("tau_step must be positive");
    if (cfg.initial.n1 < 0 || cfg.initial.n2 < 0)
        throw ValidationError("photon numbers must be non-negative");
    if ((cfg.initial.s1 != 0 && cfg.initial.s1 != 1) ||
        (cfg.initial.s2 != 0 && cfg.initial.s2 != 1))
        throw ValidationError("atomic occupations must be 0 or 1");
    validate(cfg.params);
    return cfg;
}

}  // namespace cduet
