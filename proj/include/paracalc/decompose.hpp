#pragma once

#include "paracalc/filter_bank.hpp"
#include "paracalc/symbol.hpp"

namespace paracalc {

/// Four-component paradifferential split of a symbol, plus the refinement
/// of the remainder into its high/low x-frequency parts. All components are
/// grid-sampled on the bank's lattice; lf + I + II + R reconstructs the
/// symbol pointwise and R1 + R2 = R exactly.
struct FourWaySplit {
    int N = 4;
    Grid grid;
    Symbol lf, I, II, R, R1, R2;

    const Symbol& component(const std::string& which) const;
};

/// Builds the split with smoothing parameter N >= 4. Per frequency column,
/// the x-filters are: scaled bumps psi(2^{N-p} .) for sigma_I, the dyadic
/// family for sigma_II, and for sigma_R the telescoped band
/// psi(2^{-(p+N+1)} .) - psi(2^{N-p} .) equivalent to the |p-q| <= N ring sum.
/// Throws ConfigError when N is too large for the grid's dyadic range.
FourWaySplit four_way_split(const FilterBank& bank, const Symbol& sym, int N);

struct SupportCheckRow {
    double xi_norm;
    double outside_fraction;  // x-spectrum energy of sigma_I(., xi) outside the cone
};

struct SupportCheckReport {
    double max_outside_fraction = 0.0;
    double cone_factor;  // 2^{1-N}
    bool pass = true;    // max fraction <= 1e-10
    std::vector<SupportCheckRow> worst;  // the few largest offenders
};

/// For every lattice xi with |xi| >= 1/2, measures the fraction of the
/// x-spectrum energy of sigma_I(., xi) outside |eta| <= 2^{1-N} |xi|.
SupportCheckReport spectral_support_check(const FilterBank& bank, const FourWaySplit& split);

struct BernsteinRow {
    MultiIndex alpha, beta;
    double shell_radius;
    double value;  // <xi>^{|beta|-m-|alpha|} |d_x^alpha d_xi^beta sigma_I(., xi)|_inf
};

struct BernsteinReport {
    std::vector<BernsteinRow> rows;
    double reference;  // M^m_{k}(sigma) with k = max sampled |beta|
    /// Per (alpha, beta): max/min spread of the values across dyadic shells
    /// (zero-only rows count as spread 1).
    std::vector<std::pair<MultiIndex, MultiIndex>> pairs;
    std::vector<double> spreads;
};

/// Samples the derivative growth of sigma_I across dyadic shells for
/// |alpha|, |beta| <= 2 against the M-seminorm of the original symbol.
BernsteinReport bernstein_check(const FilterBank& bank, const FourWaySplit& split,
                                const Symbol& original);

}  // namespace paracalc
