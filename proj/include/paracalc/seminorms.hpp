#pragma once

#include <string>
#include <vector>

#include "paracalc/symbol.hpp"

namespace paracalc {

/// x-spectral derivative of a symbol: each fixed-xi column is differentiated
/// through the FFT. Column-oriented (single-point eval computes the column).
Symbol x_derivative(const Symbol& s, const MultiIndex& alpha);

// The four seminorm families. Sups over xi run over lattice points with
//   high family (N, M):   1/4 <= |xi| <= 7/8 * xi_max
//   low family  (n, m):   |xi| <= 1
// and xi-derivatives use analytic evaluators when available, otherwise
// 4th-order central differences with step dxi.

/// N^m_{k,s}: sup_{|beta|<=k} sup_xi <xi>^{|beta|-m} |d_xi^beta sigma(.,xi)|_{H^s}.
double seminorm_N(const Grid& grid, const Symbol& s, int k, double sob);

/// M^m_{k,l}: sup_{|beta|<=k} sup_xi <xi>^{|beta|-m} |d_xi^beta sigma(.,xi)|_{W^{l,inf}}.
double seminorm_M(const Grid& grid, const Symbol& s, int k, int l = 0);

/// n_{k,s}: sup_{|beta|<=k, |xi|<=1} |d_xi^beta sigma(.,xi)|_{H^s}.
/// Throws ClassViolationError when k exceeds the regularity at the origin.
double seminorm_low_n(const Grid& grid, const Symbol& s, int k, double sob);

/// m_k: sup_{|beta|<=k, |xi|<=1} |d_xi^beta sigma(.,xi)|_inf.
double seminorm_low_m(const Grid& grid, const Symbol& s, int k);

/// sup_{|alpha|=l} of the seminorm applied to d_x^alpha sigma.
double seminorm_N_gradx(const Grid& grid, const Symbol& s, int l, int k, double sob);
double seminorm_M_gradx(const Grid& grid, const Symbol& s, int l, int k, int w = 0);
double seminorm_low_n_gradx(const Grid& grid, const Symbol& s, int l, int k, double sob);

// Composite norms (half-sums of seminorm pairs). reg_k = 2[d/2]+2.
int reg_k(int dim);
int class_k(int dim, int n);  // n+2+[d/2]+d

double norm_Hs(const Grid& grid, const Symbol& s, double sob);
double norm_Hs_reg(const Grid& grid, const Symbol& s, double sob);
double norm_inf_m(const Grid& grid, const Symbol& s);
double norm_Hs_n(const Grid& grid, const Symbol& s, int n, double sob);
double norm_Wkinf_n(const Grid& grid, const Symbol& s, int n, int k);
/// Subscript-free W^{k,inf} norm: (m_0 + M^m_{d,k}) / 2.
double norm_Wkinf(const Grid& grid, const Symbol& s, int k);

struct SeminormEntry {
    std::string family;  // "N", "M", "n", "m", "Hs", "Hs_reg", "inf", "Hs_n", "Wkinf_n"
    int k = 0;
    int l = 0;
    double s = 0.0;
    double value = 0.0;
};

struct SeminormReport {
    std::string symbol;
    double order;
    std::vector<SeminormEntry> entries;
};

/// Standard panel of seminorms for a symbol (used by the CLI subcommand).
SeminormReport seminorm_report(const Grid& grid, const Symbol& s, double sob);

}  // namespace paracalc
