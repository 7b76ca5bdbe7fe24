#pragma once

#include <string>

#include "paracalc/filter_bank.hpp"
#include "paracalc/symbol.hpp"

namespace paracalc {

/// Ring profile for the elementary decomposition: supported in
/// 1/5 <= r <= 6/5 with lambda = 1 on 1/4 <= r <= 1 (exact plateaus).
double lambda_profile(double r);

/// Separable expansion of the high-frequency part of a symbol:
///   (1 - psi(xi)) sigma(x,xi) ~= sum_{|k|_inf <= K} w_k sum_q c_{k,q}(x)
///                                lambda_k(2^{-q} xi) <xi>^m,
/// with w_k = (1+|k|^2)^{-(1+[d/2])} and lambda_k(xi) = e^{i xi.k/2} lambda(xi/2).
/// Coefficients are xi-box Fourier coefficients of the rescaled dyadic
/// pieces, computed by an oversampled box DFT.
class ElementarySymbols {
  public:
    ElementarySymbols(const Grid& grid, double m, int K, int q_min, int q_max, int box_n);

    const Grid& grid() const { return grid_; }
    double m() const { return m_; }
    int K() const { return K_; }
    int q_min() const { return q_min_; }
    int q_max() const { return q_max_; }
    int box_n() const { return box_n_; }
    int k_count() const;  // (2K+1)^d

    /// k vector of the flat index (entries in [-K, K]).
    void k_of(int k_flat, int out[2]) const;
    double weight(const int k[2]) const;

    std::vector<cplx>& coeff(int k_flat, int q);
    const std::vector<cplx>& coeff(int k_flat, int q) const;

    cplx lambda_k(const int k[2], const double* xi) const;

    /// Truncated double sum times <xi>^m as an evaluator-backed symbol.
    Symbol reconstruct() const;

    /// sup over the lattice of |recon - (1-psi) sigma| / <xi>^m; the second
    /// entry is the same sup for the target alone (for relative errors).
    struct SymbolError {
        double absolute;  // <xi>^{-m}-weighted sup of the difference
        double target;    // <xi>^{-m}-weighted sup of (1-psi) sigma
        double relative() const { return target > 0.0 ? absolute / target : 0.0; }
    };
    SymbolError reconstruction_error(const Symbol& sym) const;

  private:
    Grid grid_;
    double m_;
    int K_, q_min_, q_max_, box_n_;
    std::vector<std::vector<cplx>> coeffs_;  // [(k_flat)*(Q) + (q - q_min)][x]
};

/// Decomposes sym with truncation radius |k|_inf <= K. The xi-box DFT uses
/// box_n = max(64, 8K) samples per axis (rounded up to a power of two);
/// K beyond box_n/4 is a configuration error.
ElementarySymbols elementary_decompose(const FilterBank& bank, const Symbol& sym, int K);

/// Binary archive (documented layout: header with d, n_pts, L, m, K, q
/// range and box size; then c_{k,q} arrays row-major; then lambda profile
/// samples). Little-endian doubles.
void write_elementary_archive(const std::string& path, const ElementarySymbols& es);
ElementarySymbols read_elementary_archive(const std::string& path);

}  // namespace paracalc
