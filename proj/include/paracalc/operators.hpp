#pragma once

#include <functional>
#include <string>

#include "paracalc/decompose.hpp"
#include "paracalc/elementary.hpp"
#include "paracalc/field.hpp"
#include "paracalc/symbol.hpp"

namespace paracalc {

/// Reference semantics for Op(sigma): the Kohn-Nirenberg quadrature
///   Op(sigma)u(x) = (2pi)^{-d} dxi^d sum_k sigma(x, xi_k) hat u(xi_k) e^{i x.xi_k}
/// evaluated column-by-column (cost O(n^{2d})). Fast paths must agree with
/// this within their documented truncation error.
Field op_apply_dense(const Symbol& sym, const Field& u);

Field op_apply_component(const FourWaySplit& split, const std::string& which, const Field& u);

/// Separable fast path: sum_k w_k sum_q c_{k,q}(x) (lambda_k(2^{-q}D) <D>^m u)(x);
/// cost O(K^d Q n^d log n). Agrees with op_apply_dense applied to the
/// truncated reconstruction exactly, hence with (1-psi) sigma within the
/// measured symbol reconstruction error.
Field op_apply_elementary(const ElementarySymbols& es, const Field& u);

/// l1-type spectral bound sqrt(L^d) * (2pi)^{-d} dxi^d sum_k <xi_k>^m |hat u(xi_k)|;
/// multiplied by the <xi>^{-m}-weighted symbol sup-error it dominates the
/// L2 difference between the elementary and dense paths.
double weighted_spectral_l1(const Field& u, double m);

enum class ApplyMode { dense, multiplier, elementary, component };

/// Cost estimate (flop count scale) for the CLI's apply --stats.
struct ApplyPlan {
    ApplyMode mode;
    double flops;
    static ApplyPlan dense(const Grid& g);
    static ApplyPlan multiplier(const Grid& g);
    static ApplyPlan elementary(const Grid& g, int K);
    static ApplyPlan component(const Grid& g);  // dense on a stored component
};

using ApplyFn = std::function<Field(const Field&)>;

struct ProbeRow {
    int index;
    std::string kind;  // "random" or "packet j=<j>"
    double num, den, ratio;
};

struct OperatorNormResult {
    double value = 0.0;          // max ratio over probes
    bool degenerate_zero = true; // all numerators vanished
    std::vector<ProbeRow> rows;
};

/// Probe fields for operator-norm estimation: `probes` seeded random
/// band-limited fields with spectral decay <xi>^{-(s_in + d/2 + 1)} plus
/// wave packets at j = 2..p_max-2 when the grid supports them. Probe i has
/// seed mix(seed, i), so enlarging the family keeps earlier probes fixed.
struct ProbeFamily {
    std::vector<Field> fields;
    std::vector<std::string> labels;
};
ProbeFamily default_probe_family(const FilterBank& bank, double s_in, int probes,
                                 std::uint64_t seed);

/// max over probes of |apply(u)|_{H^{s_out}} / |u|_{H^{s_in}}; zero-norm
/// probes are skipped. Deterministic given seed.
OperatorNormResult empirical_operator_norm(const FilterBank& bank, const ApplyFn& apply,
                                           double s_in, double s_out, int probes,
                                           std::uint64_t seed);

/// Optional sharper estimate: power iteration on the weighted normal
/// operator <D>^{-2 s_in} A* <D>^{2 s_out} A.
double power_iteration_norm(const Grid& grid, const Symbol& sym, double s_in,
                            double s_out, int iters, std::uint64_t seed);

}  // namespace paracalc
