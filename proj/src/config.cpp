#include "paracalc/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace paracalc {

namespace {

double parse_length(const json& v) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.size() > 2 && s.substr(s.size() - 2) == "pi")
            return std::stod(s.substr(0, s.size() - 2)) * kPi;
        return std::stod(s);
    }
    return v.get<double>();
}

}  // namespace

void validate_keys(const json& j, const std::vector<std::string>& allowed,
                   const std::string& context) {
    if (!j.is_object()) throw ConfigError(context + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(context + ": unknown key '" + key + "'");
    }
}

Grid RunConfig::grid() const {
    int d = 1, n = 1024;
    double L = 32.0 * kPi;
    if (root.contains("grid")) {
        const json& g = root.at("grid");
        validate_keys(g, {"d", "n", "L"}, "grid");
        d = g.value("d", 1);
        n = g.value("n", 1024);
        if (g.contains("L")) L = parse_length(g.at("L"));
        else if (d == 2) L = 8.0 * kPi;
    }
    return Grid(d, n, L);
}

const json& RunConfig::block(const std::string& name) const {
    if (!root.contains(name)) throw ConfigError("config is missing the '" + name + "' block");
    return root.at(name);
}

RunConfig config_from_text(const std::string& text) {
    RunConfig cfg;
    try {
        cfg.root = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!cfg.root.is_object()) throw ConfigError("config root must be an object");
    if (cfg.root.value("schema", "") != "paracalc-config-v1")
        throw ConfigError("config schema must be 'paracalc-config-v1'");
    validate_keys(cfg.root,
                  {"schema", "grid", "experiments", "decompose", "seminorms", "apply",
                   "commutator", "sweep", "output", "seed"},
                  "config");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return config_from_text(ss.str());
}

GridFlag parse_grid_flag(const std::string& text) {
    GridFlag flag;
    bool l_set = false;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("bad --grid item: " + item);
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        try {
            if (key == "d") flag.d = std::stoi(val);
            else if (key == "n") flag.n = std::stoi(val);
            else if (key == "L") {
                flag.L = parse_length(json(val));
                l_set = true;
            } else {
                throw ConfigError("bad --grid key: " + key);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("bad --grid value: " + item);
        }
    }
    if (!l_set && flag.d == 2) flag.L = 8.0 * kPi;
    return flag;
}

SymbolSpec parse_symbol_arg(const std::string& text) {
    SymbolSpec spec;
    auto colon = text.find(':');
    spec.id = colon == std::string::npos ? text : text.substr(0, colon);
    if (colon != std::string::npos) {
        std::string arg = text.substr(colon + 1);
        try {
            double v = std::stod(arg);
            if (spec.id == "angxi" || spec.id == "coeff_angxi" || spec.id == "growth_angxi")
                spec.m = v;
            else
                spec.amplitude = v;
        } catch (const std::exception&) {
            // Named coefficient aliases keep the defaults.
        }
    }
    return spec;
}

}  // namespace paracalc
