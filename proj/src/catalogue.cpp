#include "paracalc/catalogue.hpp"

#include <cmath>

namespace paracalc {

Field smooth_coefficient(const Grid& grid, double amplitude) {
    std::vector<cplx> samples(grid.size());
    double x[2];
    for (std::size_t i = 0; i < samples.size(); ++i) {
        grid.x_at(i, x);
        double v = grid.dim() == 1 ? std::sin(x[0]) + 0.5 * std::cos(2.0 * x[0])
                                   : std::sin(x[0]) + 0.5 * std::cos(x[1]);
        samples[i] = cplx(amplitude * v, 0.0);
    }
    return Field(grid, std::move(samples));
}

namespace {

// sqrt(1 + v^2) <xi>^m with one coefficient component; smooth at the origin
// and of positive order, so the tame action estimates apply to it.
CompositeSymbol growth_angxi_composite(const SymbolSpec& spec, const Grid& grid) {
    OuterFn outer;
    outer.p = 1;
    outer.order = spec.m;
    outer.k_reg = kInfReg;
    std::vector<MultiplierTerm> base{MultiplierTerm{cplx(1.0, 0.0), {}, spec.m}};
    outer.eval = [base](const double* v, const double* xi, int) {
        return std::sqrt(1.0 + v[0] * v[0]) * eval_multiplier_terms(base, xi);
    };
    for (int b0 = 0; b0 <= 3; ++b0) {
        for (int b1 = 0; b1 <= 3 - b0; ++b1) {
            if (b0 + b1 == 0) continue;
            MultiIndex beta;
            beta.b[0] = b0;
            beta.b[1] = b1;
            auto dt = differentiate_multiplier_terms(base, beta);
            outer.xi_derivs[{b0, b1}] = [dt](const double* v, const double* xi, int) {
                return std::sqrt(1.0 + v[0] * v[0]) * eval_multiplier_terms(dt, xi);
            };
        }
    }
    return CompositeSymbol("growth_angxi", std::move(outer),
                           {smooth_coefficient(grid, spec.amplitude)});
}

}  // namespace

Symbol make_catalogue_symbol(const SymbolSpec& spec, const Grid& grid) {
    if (spec.id == "angxi") return make_angxi_multiplier(spec.m);
    if (spec.id == "absxi_hf") {
        return make_profile_multiplier(
            "absxi_hf", 1.0, kInfReg, [d = grid.dim()](const double* xi) {
                double r = d == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
                return cplx(r * (1.0 - psi_profile(r)), 0.0);
            });
    }
    if (spec.id == "coeff_angxi") {
        Field a = smooth_coefficient(grid, spec.amplitude);
        return make_separable_sum("coeff_angxi", spec.m, kInfReg,
                                  {{a, make_angxi_multiplier(spec.m)}});
    }
    if (spec.id == "dn") return dn_symbol(smooth_coefficient(grid, spec.amplitude)).as_symbol();
    if (spec.id == "growth_angxi") return growth_angxi_composite(spec, grid).as_symbol();
    if (spec.id == "func")
        return make_function_symbol("func", smooth_coefficient(grid, spec.amplitude));
    if (spec.id == "rough") {
        Field a = random_band_limited(grid, spec.s0 + 0.5 * grid.dim() + 0.5, spec.seed);
        Field scaled = cplx(spec.amplitude, 0.0) * a;
        return make_function_symbol("rough", scaled);
    }
    throw ConfigError("unknown catalogue symbol id: " + spec.id);
}

std::optional<CompositeSymbol> make_catalogue_composite(const SymbolSpec& spec,
                                                        const Grid& grid) {
    if (spec.id == "dn") return dn_symbol(smooth_coefficient(grid, spec.amplitude));
    if (spec.id == "growth_angxi") return growth_angxi_composite(spec, grid);
    return std::nullopt;
}

std::vector<SymbolSpec> default_catalogue(int) {
    std::vector<SymbolSpec> out;
    out.push_back({.id = "angxi", .m = 1.5});
    out.push_back({.id = "absxi_hf"});
    out.push_back({.id = "coeff_angxi", .m = 1.0, .amplitude = 0.2});
    out.push_back({.id = "dn", .amplitude = 0.1});
    out.push_back({.id = "func", .amplitude = 0.3});
    out.push_back({.id = "rough", .amplitude = 0.2, .s0 = 3.0, .seed = 7});
    return out;
}

}  // namespace paracalc
