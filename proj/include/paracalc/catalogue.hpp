#pragma once

#include <optional>
#include <string>

#include "paracalc/symbol.hpp"

namespace paracalc {

/// Parameters for catalogue symbols addressed by string id in CLI configs.
struct SymbolSpec {
    std::string id;            // angxi | absxi_hf | coeff_angxi | dn | func | rough
    double m = 1.0;            // order for angxi / coeff_angxi
    double amplitude = 0.1;    // coefficient amplitude
    double s0 = 3.0;           // Sobolev decay for the rough coefficient
    std::uint64_t seed = 1;    // rough coefficient seed
};

/// Smooth band-limited coefficient a(x) used across the catalogue:
/// d=1: amp*(sin x + 0.5 cos 2x); d=2: amp*(sin x1 + 0.5 cos x2).
Field smooth_coefficient(const Grid& grid, double amplitude);

/// Catalogue entry by id. Throws ConfigError on unknown ids.
Symbol make_catalogue_symbol(const SymbolSpec& spec, const Grid& grid);

/// Composite form for entries that have one (id "dn"); nullopt otherwise.
std::optional<CompositeSymbol> make_catalogue_composite(const SymbolSpec& spec,
                                                        const Grid& grid);

/// Ids of the symbols exercised by the decomposition test sweeps.
std::vector<SymbolSpec> default_catalogue(int dim);

}  // namespace paracalc
