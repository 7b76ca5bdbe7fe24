#pragma once

#include <cmath>
#include <vector>

#include "paracalc/field.hpp"
#include "paracalc/grid.hpp"

namespace paracalc {

/// C-infinity glue: 0 for t <= 0, 1 for t >= 1, strictly monotone between.
/// S(t) = f(t) / (f(t) + f(1-t)) with f(t) = exp(-1/t) for t > 0.
double smoothstep(double t);

/// Radial bump profile: 1 on |xi| <= 1/2, 0 on |xi| >= 1 (exact plateaus).
double psi_profile(double r);

/// Ring profile phi(r) = psi(r/2) - psi(r), supported in 1/2 <= r <= 2.
double phi_profile(double r);

/// Dyadic Littlewood-Paley family on a grid. Shells p = -1, 0, ..., p_max
/// with phi_{-1} = psi and phi_p = phi(2^{-p} .); the family is an exact
/// partition of unity on the full frequency lattice.
class FilterBank {
  public:
    explicit FilterBank(const Grid& grid);

    const Grid& grid() const { return grid_; }
    /// Largest shell index; chosen so psi(2^{-p_max-1} xi) = 1 on the whole
    /// lattice (Euclidean corner included), which makes the partition exact.
    int p_max() const { return p_max_; }

    double psi(double r) const { return psi_profile(r); }
    double phi_p(int p, double r) const;

    /// Lattice samples of phi_p (real profiles, stored once).
    const std::vector<double>& shell(int p) const;
    const std::vector<double>& psi_lattice() const { return shell(-1); }

    /// phi_p(D)u. Throws InputError when p is outside [-1, p_max].
    Field lp_block(const Field& u, int p) const;

    /// max over the lattice of |psi + sum_p phi_p - 1|.
    double partition_deviation() const;

  private:
    Grid grid_;
    int p_max_;
    std::vector<std::vector<double>> shells_;  // index p+1
};

/// Zygmund norm sup_p 2^{pr} |phi_p(D)u|_inf over the bank's shells.
double zygmund_norm(const FilterBank& bank, const Field& u, double r);

/// Admissible cut-off chi(eta, xi) = sum_{p >= -1} psi(2^{-p+N} eta) phi_p(xi),
/// with plateau radii delta1 = 2^{-N-2} and delta2 = 2^{1-N}.
class CutoffChi {
  public:
    CutoffChi(const FilterBank& bank, int N);

    int N() const { return N_; }
    const FilterBank& bank() const { return *bank_; }
    double delta1() const { return std::pow(2.0, -N_ - 2); }
    double delta2() const { return std::pow(2.0, 1 - N_); }

    double operator()(const double* eta, const double* xi) const;
    double radial(double eta_norm, double xi_norm) const;

  private:
    const FilterBank* bank_;
    int N_;
};

CutoffChi build_admissible_cutoff(const FilterBank& bank, int N);

struct CutoffKernelRow {
    MultiIndex beta;
    double xi_norm;
    double weighted_l1;  // <xi>^{|beta|} * |d_xi^beta chi_check(., xi)|_{L1}
};

struct CutoffKernelReport {
    std::vector<CutoffKernelRow> rows;
    double max_over_min_beta0;  // spread of the beta=0 column over the xi sweep
    bool bounded;               // max/min spread <= 4 for every requested beta
};

/// Measures <xi>^{|beta|} |d_xi^beta chi_check(., xi)|_{L1} on the lattice;
/// xi samples with |xi| < 1/2 are excluded (outside the lemma's region).
/// d_xi^beta is taken by second-order central differences with step dxi.
CutoffKernelReport cutoff_kernel_l1_report(const CutoffChi& chi,
                                           const std::vector<MultiIndex>& betas,
                                           const std::vector<double>& xi_norms);

}  // namespace paracalc
