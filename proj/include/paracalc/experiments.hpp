#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paracalc/calculus.hpp"
#include "paracalc/catalogue.hpp"
#include "paracalc/wave_packets.hpp"

namespace paracalc {

/// One experiment run: theorem tag + indices + symbols + grid + seed.
struct ExperimentConfig {
    std::string id = "exp";
    std::string theorem;        // th-II1, th-II2, cor-II1, th-III1, th-III2,
                                // th-III3, th-III1bis, th-IV1, th-IV1bis,
                                // th-III3-order, tame-scaling
    std::string variant;        // per-theorem: low/high/tame, i/ii/i.bis/i.ter/iii, ...
    int d = 1;
    int n_pts = 1024;
    double length = 32.0 * kPi;
    SymbolSpec sigma1{.id = "angxi", .m = 1.0};
    SymbolSpec sigma2{.id = "func", .amplitude = 0.3};
    double s = 0.0;
    double t0 = 1.0;    // defaults to d/2 + 1/2 rounded per dimension
    double s0 = 3.0;
    int n = 0;          // expansion order
    int probes = 32;
    std::uint64_t seed = 1;
    int j_lo = 3, j_hi = 7;       // packet range for order experiments
    int trim_lo = 0, trim_hi = 0; // fit-window trim for order experiments
    double slope_tol = 0.3;
};

struct RatioRow {
    int probe;
    std::string label;
    double num, den, ratio;
};

struct SlopeFit {
    double value = 0.0;
    double stderr_ = 0.0;
    double expected = 0.0;
    double deviation = 0.0;
    int points = 0;
};

struct EstimateReport {
    std::string id;
    std::string theorem;
    ExperimentConfig config;
    std::vector<RatioRow> rows;
    double c_emp = 0.0;
    bool degenerate_zero = false;
    std::optional<SlopeFit> slope;
    std::map<std::string, double> terms;  // named right-hand-side ingredients
    bool pass = true;
    std::string note;
};

struct SweepReport {
    std::vector<EstimateReport> reports;
    double stability = 1.0;  // max/min of c_emp across the sweep
};

/// Least-squares slope of log2 |residual(u_j)|_2 against j. The fit window
/// drops trim_lo/trim_hi packets from the ends, shrunk as needed to keep at
/// least 4 points (error when the family itself has fewer).
SlopeFit order_probe(const std::function<Field(const Field&)>& residual_fn,
                     const WavePacketFamily& packets, double expected,
                     int trim_lo = 2, int trim_hi = 2);

/// Action of Op(sigma) (theorems on operator action; variants low, high,
/// tame, composite-low, composite-high, composite-tame).
EstimateReport action_experiment(const ExperimentConfig& cfg);

/// Commutator-with-multiplier remainders (Kato-Ponce style; variants i, ii).
EstimateReport kato_ponce_experiment(const ExperimentConfig& cfg);

/// Calderon-Coifman-Meyer style remainders (th-III1bis i/ii, th-IV1bis).
EstimateReport ccm_experiment(const ExperimentConfig& cfg);

/// Composition/commutator of two limited-regularity operators (th-IV1,
/// variants i, i.bis, i.ter, ii, iii).
EstimateReport composition_experiment(const ExperimentConfig& cfg);

/// Residual-order slope experiment (th-III3-order).
EstimateReport order_experiment(const ExperimentConfig& cfg);

/// Amplitude-scaling contrast of tame vs naive normalizers (tame-scaling).
EstimateReport tame_scaling_experiment(const ExperimentConfig& cfg);

/// Dispatch on cfg.theorem. Throws HypothesisError on violated hypotheses,
/// ConfigError on malformed configurations.
EstimateReport run_experiment(const ExperimentConfig& cfg);

SweepReport resolution_sweep(const ExperimentConfig& cfg, const std::vector<int>& n_pts_list);

}  // namespace paracalc
