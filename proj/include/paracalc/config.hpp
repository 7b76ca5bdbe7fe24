#pragma once

#include <string>
#include <vector>

#include "paracalc/report.hpp"

namespace paracalc {

/// Versioned CLI configuration (schema "paracalc-config-v1"). Unknown keys
/// anywhere in the document are rejected.
struct RunConfig {
    json root;

    Grid grid() const;
    bool has(const std::string& block) const { return root.contains(block); }
    const json& block(const std::string& name) const;
};

RunConfig load_config(const std::string& path);
RunConfig config_from_text(const std::string& text);

/// Rejects keys outside `allowed`; context names the block in errors.
void validate_keys(const json& j, const std::vector<std::string>& allowed,
                   const std::string& context);

/// Parses "d=1,n=1024,L=32pi" (any subset, any order).
struct GridFlag {
    int d = 1;
    int n = 1024;
    double L = 32.0 * kPi;
};
GridFlag parse_grid_flag(const std::string& text);

/// Parses "id", "id:1.5" (order for angxi / coeff_angxi, amplitude
/// otherwise) or "id:a" (named default coefficient).
SymbolSpec parse_symbol_arg(const std::string& text);

}  // namespace paracalc
